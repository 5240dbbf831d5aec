"""
Brute-force reference implementations used by tests and `--verify`.

Nothing here shares code with the saturation engine: prime implicates are
recomputed by grounding the clause set and saturating it naively, and
connection minimality is checked against its definition by searching for
the connecting concepts and the homomorphism between their trees.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from ..el.concepts import (
    Atomic,
    Concept,
    ConceptInclusion,
    Existential,
    TBox,
    Top,
    conjunction,
    existential_count,
    flat_names,
)
from ..el.normal_form import normalize
from ..el.reasoner import TOP_KEY, classify, entails_ci, entails_flat, entails_tbox
from ..el.trees import DescriptionTree, concept_to_tree, one_step_reductions, weak_homomorphisms
from ..fol.clauses import Clause, ClauseSet, Literal, Term, factorize
from ..utils.config import ORACLE_MAX_NODES, ORACLE_MAX_TERM_DEPTH, ORACLE_MAX_TREE_DEPTH
from ..utils.exceptions import BoundsExhausted
from .preprocess import is_reserved, wrap_observation
from .recombine import Hypothesis, flat_axiom

logger = logging.getLogger(__name__)

# expansion steps one tree search may take before it gives up
MAX_SEARCH_STEPS = 200_000

Requirement = Union[str, Tuple[str, str]]


@dataclass(frozen=True)
class OracleConfig:
    max_tree_depth: int = ORACLE_MAX_TREE_DEPTH
    max_nodes: int = ORACLE_MAX_NODES
    max_term_depth: int = ORACLE_MAX_TERM_DEPTH

    def __post_init__(self):
        for name in ('max_tree_depth', 'max_nodes', 'max_term_depth'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


# --- naive ground saturation -------------------------------------------------

def ground_terms(functions: Sequence[str], max_depth: int) -> List[Term]:
    """Every ground term over sk0 and `functions` up to nesting depth `max_depth`."""
    layer = [Term()]
    terms = list(layer)
    for _ in range(max_depth):
        layer = [Term((fn,) + t.fns) for t in layer for fn in functions]
        terms.extend(layer)
    return terms


def _instances(c: Clause, terms: List[Term], successors: Dict[Term, List[Term]], max_depth: int) -> Iterator[Clause]:
    variables = sorted(c.variables)
    if len(variables) == 1:
        choices = [{variables[0]: t} for t in terms]
    else:
        # two-variable clauses read a role atom r(x, y); only y = f(x) can ever hold
        role = next(l for l in c.literals if l.is_role and not l.is_ground)
        x, y = role.args[0].var, role.args[1].var
        choices = [{x: t, y: s} for t in terms for s in successors[t]]
    for binding in choices:
        literals = []
        for lit in c.literals:
            args = tuple(Term(a.fns + binding[a.var].fns) if a.var is not None else a for a in lit.args)
            literals.append(Literal(lit.positive, lit.pred, lit.dup, args))
        instance = Clause(frozenset(literals), c.shape)
        if instance.depth <= max_depth:
            yield instance


def naive_saturation(phi: ClauseSet, max_term_depth: int) -> Set[Clause]:
    """
    Close the ground seeds of `phi` under unrestricted ground resolution.

    Non-ground clauses are instantiated with every ground term within the
    depth cap; instances with a deeper literal are dropped.

    Args:
        phi: The clause set
        max_term_depth: Largest skolem nesting depth of any literal

    Returns:
        The input clauses together with every derived clause not subsumed by another
    """
    if max_term_depth < 0:
        raise ValueError(f"max_term_depth must be non-negative, got {max_term_depth}")
    functions = sorted({fn for c in phi for lit in c.literals for a in lit.args for fn in a.fns})
    terms = ground_terms(functions, max_term_depth)
    successors = {t: [Term((fn,) + t.fns) for fn in functions] for t in terms}

    by_literal: Dict[Literal, List[Clause]] = defaultdict(list)
    seeds: List[Clause] = []
    for c in phi:
        if c.is_ground:
            seeds.append(c)
            continue
        for instance in _instances(c, terms, successors, max_term_depth):
            for lit in instance.literals:
                by_literal[lit].append(instance)

    kept: Set[Clause] = set()
    queue: List[Clause] = []

    def add(c: Clause) -> None:
        if any(k.literals <= c.literals for k in kept):
            return
        for k in [k for k in kept if c.literals < k.literals]:
            kept.discard(k)
        kept.add(c)
        queue.append(c)

    for seed in seeds:
        add(factorize(seed))
    processed: List[Clause] = []
    done: Set[Clause] = set()
    while queue:
        given = queue.pop(0)
        if given not in kept:
            continue
        partners = list(processed)
        for lit in given.literals:
            partners.extend(by_literal.get(lit.negate(), ()))
        for partner in partners:
            if partner in done and partner not in kept:
                continue
            for lit in given.literals:
                if lit.negate() in partner.literals:
                    res = (given.literals - {lit}) | (partner.literals - {lit.negate()})
                    if any(l.negate() in res for l in res):
                        continue
                    add(Clause(frozenset(res)))
        processed.append(given)
        done.add(given)

    logger.debug(f"Naive saturation kept {len(kept)} clauses over {len(terms)} ground terms")
    return set(phi.clauses) | kept


# --- connection minimality -----------------------------------------------------

def _set_partitions(items: List) -> Iterator[List[List]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


def _groupings(exists: List[Tuple[str, str]]) -> Iterator[List[Tuple[str, FrozenSet[str]]]]:
    """Ways to distribute existential requirements over successors, per role."""
    by_role: Dict[str, List[str]] = defaultdict(list)
    for role, filler in exists:
        by_role[role].append(filler)
    per_role = [
        [[(role, frozenset(block)) for block in partition] for partition in _set_partitions(sorted(fillers))]
        for role, fillers in sorted(by_role.items())
    ]
    for combo in itertools.product(*per_role):
        yield [group for groups in combo for group in groups]


def _key(c: Concept) -> str:
    return TOP_KEY if isinstance(c, Top) else c.name


class _Search:
    """Shared state for the tree searches of one abduction problem."""

    def __init__(self, tbox: TBox, obs: ConceptInclusion, sigma: Iterable[str], cfg: OracleConfig):
        self.tbox = tbox
        self.obs = obs
        self.cfg = cfg
        self.sigma = sorted(n for n in sigma if not is_reserved(n))
        self.lhs, self.rhs, bridges = wrap_observation(obs)
        normalized, _ = normalize(tbox.union(bridges))
        self.table = classify(normalized)
        self.truncated = False
        self.steps = 0

        self.named_rhs: List[Tuple[Concept, str]] = []
        self.exists_rhs: List[Tuple[str, str, str]] = []
        for ci in normalized:
            if isinstance(ci.rhs, Existential):
                self.exists_rhs.append((_key(ci.lhs), ci.rhs.role, _key(ci.rhs.filler)))
            elif not isinstance(ci.rhs, Top):
                self.named_rhs.append((ci.lhs, ci.rhs.name))
        self._memo: Dict[Tuple[FrozenSet[Requirement], int], List[Concept]] = {}
        self._subsumee: Dict[Concept, bool] = {}

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > MAX_SEARCH_STEPS:
            self.truncated = True
            raise _StepLimit()

    def _below(self, sub: str, sup: str) -> bool:
        if sup == TOP_KEY:
            return True
        if sub == TOP_KEY:
            return False
        return self.table.subsumes(sub, sup)

    # subsumees of C2 ----------------------------------------------------

    def names_below(self, name: str) -> List[str]:
        return [n for n in self.sigma if self._below(n, name)]

    def unfoldings(self, name: str) -> List[Tuple[Requirement, ...]]:
        found: Dict[Tuple[Requirement, ...], None] = {}
        for lhs, sup in self.named_rhs:
            if not self._below(sup, name):
                continue
            if isinstance(lhs, Top):
                found.setdefault((), None)
            elif isinstance(lhs, Atomic):
                found.setdefault((lhs.name,), None)
            elif isinstance(lhs, Existential):
                found.setdefault(((lhs.role, _key(lhs.filler)),), None)
            else:
                found.setdefault(tuple(c.name for c in lhs.conjuncts), None)
        return list(found)

    def exists_sources(self, role: str, filler: str) -> List[str]:
        return [n for n, r, x in self.exists_rhs if r == role and self._below(x, filler)]

    def _expand(self, pending: Tuple, label: FrozenSet[str], exists: FrozenSet) -> Iterator[Tuple]:
        self._tick()
        if not pending:
            yield label, exists
            return
        (req, path), rest = pending[0], pending[1:]
        if isinstance(req, tuple):
            yield from self._expand(rest, label, exists | {req})
            for source in self.exists_sources(*req):
                if source == TOP_KEY:
                    yield from self._expand(rest, label, exists)
                elif source not in path:
                    yield from self._expand(((source, path | {req}),) + rest, label, exists)
            return
        if req == TOP_KEY:
            yield from self._expand(rest, label, exists)
            return
        for name in self.names_below(req):
            yield from self._expand(rest, label | {name}, exists)
        if req in path:
            return
        for reqs in self.unfoldings(req):
            step = tuple((r, path | {req}) for r in reqs)
            yield from self._expand(step + rest, label, exists)

    def trees(self, requirements: FrozenSet[Requirement], depth: int = 0) -> List[Concept]:
        """Concepts over Σ and roles built to satisfy every requirement."""
        key = (requirements, depth)
        if key in self._memo:
            return self._memo[key]
        results: Dict[Concept, None] = {}
        pending = tuple((r, frozenset()) for r in sorted(requirements, key=str))
        for label, exists in self._expand(pending, frozenset(), frozenset()):
            names = [Atomic(n) for n in sorted(label)]
            if not exists:
                results.setdefault(conjunction(names), None)
                continue
            if depth >= self.cfg.max_tree_depth:
                self.truncated = True
                continue
            for grouping in _groupings(sorted(exists)):
                children = [self.trees(frozenset(fillers), depth + 1) for _, fillers in grouping]
                for combo in itertools.product(*children):
                    c = conjunction(names + [Existential(role, child) for (role, _), child in zip(grouping, combo)])
                    if 1 + existential_count(c) > self.cfg.max_nodes:
                        self.truncated = True
                        continue
                    results.setdefault(c, None)
        self._memo[key] = sorted(results, key=str)
        return self._memo[key]

    def is_subsumee(self, d: Concept) -> bool:
        if d not in self._subsumee:
            self._subsumee[d] = entails_ci(self.tbox, ConceptInclusion(d, self.obs.rhs))
        return self._subsumee[d]

    def minimal_subsumees(self) -> List[Concept]:
        """⪯⊓-minimal concepts D with T |= D ⊑ C2 within the bounds."""
        try:
            candidates = self.trees(frozenset((self.rhs,)))
        except _StepLimit:
            logger.warning(f"Oracle search stopped after {MAX_SEARCH_STEPS} steps")
            return []
        minimal = [
            d for d in candidates
            if self.is_subsumee(d) and not any(self.is_subsumee(r) for r in one_step_reductions(d))
        ]
        logger.debug(f"Oracle found {len(minimal)} minimal subsumees among {len(candidates)} candidates")
        return minimal

    # subsumers of C1 ----------------------------------------------------

    def unraveling(self) -> DescriptionTree:
        """Canonical model of C1 unraveled to the tree depth bound, labels over Σ."""
        labels: List[FrozenSet[str]] = []
        edges: List[Tuple[int, str, int]] = []
        sigma = frozenset(self.sigma)

        def build(element: str, depth: int) -> int:
            node = len(labels)
            if element == TOP_KEY:
                labels.append(frozenset())
            else:
                labels.append(self.table.subsumers(element) & sigma)
            if depth < self.cfg.max_tree_depth:
                for source, role, filler in self.exists_rhs:
                    if source == TOP_KEY or self._below(element, source):
                        child = build(filler, depth + 1)
                        edges.append((node, role, child))
            return node

        build(self.lhs, 0)
        return DescriptionTree(tuple(labels), tuple(edges))


class _StepLimit(Exception):
    pass


def _canonical_flat(ci: ConceptInclusion) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    lhs, rhs = flat_names(ci.lhs), flat_names(ci.rhs)
    return lhs, rhs - lhs


def _covers(options: List[List[Optional[int]]], needed: int) -> bool:
    """Whether one option per node can be picked so every axiom index is used."""
    def search(i: int, used: FrozenSet[int]) -> bool:
        if i == len(options):
            return len(used) == needed
        return any(search(i + 1, used if o is None else used | {o}) for o in options[i])
    return search(0, frozenset())


def check_connection_minimal(
    tbox: TBox,
    obs: ConceptInclusion,
    h: Hypothesis,
    cfg: OracleConfig = OracleConfig(),
    abducibles: Optional[Iterable[str]] = None,
) -> bool:
    """
    Decide connection minimality of `h` by searching for its witnesses.

    Args:
        tbox: Background TBox
        obs: The observation C1 ⊑ C2
        h: A solution of the problem
        cfg: Search bounds
        abducibles: Names the connecting concepts may use (default: full signature)

    Returns:
        True iff connecting concepts and a weak homomorphism producing `h` exist

    Raises:
        BoundsExhausted: If nothing was found but the search was truncated
    """
    sigma = abducibles if abducibles is not None else tbox.concept_names | obs.concept_names
    search = _Search(tbox, obs, sigma, cfg)
    axioms = [_canonical_flat(a) for a in h.axioms]
    axioms = list(dict.fromkeys(axioms))
    target = search.unraveling()

    for d2 in search.minimal_subsumees():
        source = concept_to_tree(d2)
        for phi in weak_homomorphisms(source, target):
            options: List[List[Optional[int]]] = []
            for w in source.nodes:
                l2, available = source.label(w), target.label(phi[w])
                choice: List[Optional[int]] = []
                if entails_flat(tbox, available, l2):
                    choice.append(None)
                for i, (lhs, rhs) in enumerate(axioms):
                    if lhs <= available and l2 - lhs == rhs and not entails_flat(tbox, lhs, l2):
                        choice.append(i)
                if not choice:
                    break
                options.append(choice)
            else:
                if _covers(options, len(axioms)):
                    logger.debug(f"{h} is connection-minimal via D2 = {d2}")
                    return True
    if search.truncated:
        raise BoundsExhausted(f"no witness for {h} within the oracle bounds")
    return False


def enumerate_packed(
    tbox: TBox,
    obs: ConceptInclusion,
    abducibles: Iterable[str],
    cfg: OracleConfig = OracleConfig(),
) -> List[Hypothesis]:
    """
    Every packed connection-minimal hypothesis within the bounds.

    Left-hand sides are the full Σ-labels of the unraveled canonical model
    of C1; hypotheses that would need Top on a left-hand side are skipped.
    """
    search = _Search(tbox, obs, abducibles, cfg)
    target = search.unraveling()
    found: Dict[Hypothesis, None] = {}
    for d2 in search.minimal_subsumees():
        source = concept_to_tree(d2)
        for phi in weak_homomorphisms(source, target):
            axioms = []
            for w in source.nodes:
                l2, available = source.label(w), target.label(phi[w])
                if entails_flat(tbox, available, l2):
                    continue
                axioms.append(flat_axiom(available, l2 - available))
            if axioms and all(a.lhs != Top() for a in axioms):
                found.setdefault(Hypothesis.of(*axioms), None)
    if search.truncated:
        logger.warning("Oracle enumeration hit its bounds; the result may be partial")
    return sorted(found, key=Hypothesis.sort_key)


def hypotheses_equivalent(h1: Hypothesis, h2: Hypothesis) -> bool:
    """Mutual entailment of two hypotheses."""
    return entails_tbox(h1.as_tbox(), h2.axioms) and entails_tbox(h2.as_tbox(), h1.axioms)
