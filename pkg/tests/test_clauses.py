from src.fol.clauses import (
    SK0,
    ClauseSet,
    Term,
    app,
    clause,
    concept_lit,
    factorize,
    ground,
    normalize_variables,
    resolve,
    role_lit,
    subsumes,
    unify_literals,
    var,
)

x, y = var(0), var(1)


def test_term_depth_and_rendering():
    t = ground("sk2", "sk1")
    assert t.depth == 2
    assert t.is_ground
    assert str(t) == "sk2(sk1(sk0))"
    assert str(app("f", x)) == "f(x)"
    assert str(concept_lit(False, "B", SK0, dup=True)) == "~B'(sk0)"


def test_unify_skolem_chains():
    a = concept_lit(True, "A", app("f", x))
    b = concept_lit(False, "A", ground("f", "g"))
    s = unify_literals(a, b)
    assert s == {0: ground("g")}
    assert unify_literals(a, concept_lit(False, "A", ground("g"))) is None
    assert unify_literals(a, concept_lit(True, "A", app("f", x), dup=True)) is None


def test_unify_rejects_occurs_check():
    a = role_lit(True, "r", x, app("f", x))
    b = role_lit(True, "r", app("f", y), y)
    assert unify_literals(a, b) is None


def test_resolve_rule_with_fact():
    rule = clause(concept_lit(False, "A", x), role_lit(True, "r", x, app("sk", x)))
    fact = clause(concept_lit(True, "A", SK0))
    resolvents = resolve(fact, rule)
    assert resolvents == [clause(role_lit(True, "r", SK0, ground("sk")))]


def test_resolve_renames_apart():
    left = clause(concept_lit(False, "A", x), concept_lit(True, "B", x))
    right = clause(concept_lit(False, "B", x), concept_lit(True, "C", app("f", x)))
    (res,) = resolve(left, right)
    assert res == clause(concept_lit(False, "A", x), concept_lit(True, "C", app("f", x)))


def test_factorize_merges_unifiable_literals():
    c = clause(concept_lit(False, "A", x), concept_lit(False, "A", SK0), concept_lit(False, "B", SK0))
    assert factorize(c) == clause(concept_lit(False, "A", SK0), concept_lit(False, "B", SK0))
    ground_clause = clause(concept_lit(False, "A", SK0))
    assert factorize(ground_clause) is ground_clause


def test_subsumption():
    general = clause(role_lit(False, "r", SK0, y), concept_lit(False, "B", y, dup=True))
    specific = clause(
        role_lit(False, "r", SK0, ground("f")),
        concept_lit(False, "B", ground("f"), dup=True),
        concept_lit(False, "C", SK0, dup=True),
    )
    assert subsumes(general, specific)
    assert not subsumes(specific, general)
    assert subsumes(clause(concept_lit(False, "C", SK0, dup=True)), specific)


def test_normalize_variables_renumbers():
    c = normalize_variables([concept_lit(False, "A", var(3)), role_lit(False, "r", var(3), var(7))])
    assert c.variables == {0, 1}


def test_clause_classification_helpers():
    fact = clause(concept_lit(True, "A", SK0))
    goal = clause(concept_lit(False, "A", SK0, dup=True), concept_lit(False, "B", ground("f"), dup=True))
    assert fact.is_unit and fact.is_ground and fact.is_horn
    assert goal.depth == 1
    assert not goal.positives
    assert str(clause()) == "[]"


def test_clause_set_predicates_and_registry():
    phi = ClauseSet((
        clause(concept_lit(True, "A", SK0)),
        clause(concept_lit(False, "A", x), concept_lit(True, "B", x, dup=True)),
    ))
    assert phi.predicates == {("A", False), ("B", True)}
    assert len(phi.seeds) == 1
    assert phi.original_skolem("sk1")
    assert "A(sk0)" in phi.dump()
    assert isinstance(SK0, Term)
