"""EL syntax, description trees and the subsumption reasoner."""

from .concepts import (
    TOP,
    Top,
    Atomic,
    Conjunction,
    Existential,
    Concept,
    ConceptInclusion,
    TBox,
    atoms,
    canonical,
    conjunction,
    equivalence,
    flat_names,
)
from .normal_form import is_normal, normalize
from .reasoner import SubsumptionTable, classify, entails_ci, entails_flat, entails_tbox
from .trees import (
    DescriptionTree,
    NodeMapping,
    concept_to_tree,
    tree_to_concept,
    preceq_and,
    one_step_reductions,
    weak_homomorphisms,
    is_weak_homomorphism,
    is_t_homomorphism,
)

__all__ = [
    # Concepts
    'TOP',
    'Top',
    'Atomic',
    'Conjunction',
    'Existential',
    'Concept',
    'ConceptInclusion',
    'TBox',
    'atoms',
    'canonical',
    'conjunction',
    'equivalence',
    'flat_names',

    # Normal form
    'is_normal',
    'normalize',

    # Reasoner
    'SubsumptionTable',
    'classify',
    'entails_ci',
    'entails_flat',
    'entails_tbox',

    # Description trees
    'DescriptionTree',
    'NodeMapping',
    'concept_to_tree',
    'tree_to_concept',
    'preceq_and',
    'one_step_reductions',
    'weak_homomorphisms',
    'is_weak_homomorphism',
    'is_t_homomorphism'
]
