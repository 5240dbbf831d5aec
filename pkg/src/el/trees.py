"""Description trees, the conjunct-dropping order and tree homomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from .concepts import (
    Atomic,
    Concept,
    Existential,
    canonical,
    conjunction,
    conjuncts,
)
from ..utils.exceptions import NotAHomomorphism

Edge = Tuple[int, str, int]


@dataclass(frozen=True)
class DescriptionTree:
    """
    Labeled tree mirroring an EL concept.

    Nodes are the integers 0..n-1, `labels[v]` is the label of node v and
    `edges` holds (parent, role, child) triples.
    """
    labels: Tuple[FrozenSet[str], ...]
    edges: Tuple[Edge, ...] = ()
    root: int = 0
    _children: Dict[int, Tuple[Tuple[str, int], ...]] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )
    _parents: Dict[int, Tuple[int, str]] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        children: Dict[int, List[Tuple[str, int]]] = {v: [] for v in self.nodes}
        parents: Dict[int, Tuple[int, str]] = {}
        for parent, role, child in self.edges:
            if parent not in children or child not in children:
                raise ValueError(f"edge ({parent}, {role}, {child}) uses an unknown node")
            if child in parents or child == self.root:
                raise ValueError(f"node {child} has more than one parent")
            parents[child] = (parent, role)
            children[parent].append((role, child))
        if len(parents) != len(self.labels) - 1:
            raise ValueError("edges do not connect every node to the root")
        # every node must reach the root
        for v in self.nodes:
            seen = set()
            while v != self.root:
                if v in seen:
                    raise ValueError("edge relation contains a cycle")
                seen.add(v)
                v = parents[v][0]
        object.__setattr__(self, '_children', {v: tuple(cs) for v, cs in children.items()})
        object.__setattr__(self, '_parents', parents)

    @property
    def nodes(self) -> range:
        return range(len(self.labels))

    def label(self, v: int) -> FrozenSet[str]:
        return self.labels[v]

    def children(self, v: int, role: Optional[str] = None) -> List[int]:
        return [c for r, c in self._children[v] if role is None or r == role]

    def successors(self, v: int) -> Tuple[Tuple[str, int], ...]:
        return self._children[v]

    def parent(self, v: int) -> Optional[Tuple[int, str]]:
        return self._parents.get(v)

    def preorder(self) -> List[int]:
        order, stack = [], [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(c for _, c in reversed(self._children[v]))
        return order

    def depth(self, v: Optional[int] = None) -> int:
        v = self.root if v is None else v
        return max((1 + self.depth(c) for _, c in self._children[v]), default=0)


@dataclass(frozen=True)
class NodeMapping:
    """Total map from source-tree nodes to target-tree nodes."""
    targets: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.targets[v]

    def __len__(self) -> int:
        return len(self.targets)


def concept_to_tree(c: Concept) -> DescriptionTree:
    """Description tree of `c`, node ids assigned in preorder."""
    labels: List[FrozenSet[str]] = []
    edges: List[Edge] = []

    def build(concept: Concept) -> int:
        node = len(labels)
        parts = conjuncts(canonical(concept))
        labels.append(frozenset(p.name for p in parts if isinstance(p, Atomic)))
        for part in parts:
            if isinstance(part, Existential):
                child = build(part.filler)
                edges.append((node, part.role, child))
        return node

    build(c)
    return DescriptionTree(tuple(labels), tuple(sorted(edges)))


def tree_to_concept(t: DescriptionTree, v: Optional[int] = None) -> Concept:
    """
    Concept described by the subtree of `t` rooted at `v`.

    Args:
        t: Description tree
        v: Node to start from, the root when omitted

    Returns:
        The canonical concept, so that `tree_to_concept(concept_to_tree(c)) == canonical(c)`
    """
    v = t.root if v is None else v
    parts: List[Concept] = [Atomic(name) for name in sorted(t.label(v))]
    parts.extend(Existential(role, tree_to_concept(t, child)) for role, child in t.successors(v))
    return conjunction(parts)


def preceq_and(c: Concept, d: Concept) -> bool:
    """
    Conjunct-dropping order.

    Args:
        c: Candidate reduct
        d: Concept to reduce

    Returns:
        True iff `c` is obtained from `d` by dropping conjuncts at any depth,
        dropping none included
    """
    return _embeds(conjuncts(canonical(c)), conjuncts(canonical(d)), frozenset())


def _embeds(small: Tuple[Concept, ...], big: Tuple[Concept, ...], used: FrozenSet[int]) -> bool:
    if not small:
        return True
    first, rest = small[0], small[1:]
    for i, candidate in enumerate(big):
        if i in used or not _conjunct_below(first, candidate):
            continue
        if _embeds(rest, big, used | {i}):
            return True
    return False


def _conjunct_below(x: Concept, y: Concept) -> bool:
    if isinstance(x, Atomic):
        return x == y
    return isinstance(y, Existential) and x.role == y.role and preceq_and(x.filler, y.filler)


def one_step_reductions(c: Concept) -> List[Concept]:
    """Every concept obtained from `c` by dropping exactly one conjunct somewhere."""
    parts = conjuncts(canonical(c))
    result = []
    for i, part in enumerate(parts):
        rest = parts[:i] + parts[i + 1:]
        result.append(conjunction(rest))
        if isinstance(part, Existential):
            for smaller in one_step_reductions(part.filler):
                result.append(conjunction(rest + (Existential(part.role, smaller),)))
    return result


def weak_homomorphisms(source: DescriptionTree, target: DescriptionTree) -> List[NodeMapping]:
    """
    All root- and edge-preserving maps from `source` into `target`.

    Labels are ignored.

    Args:
        source: Tree whose nodes are mapped
        target: Tree the nodes are mapped into

    Returns:
        Every weak homomorphism, in the order of a preorder search over `source`
    """
    order = source.preorder()
    assignment = {source.root: target.root}
    found: List[NodeMapping] = []

    def extend(i: int) -> None:
        if i == len(order):
            found.append(NodeMapping(tuple(assignment[v] for v in source.nodes)))
            return
        v = order[i]
        parent, role = source.parent(v)
        for w in target.children(assignment[parent], role):
            assignment[v] = w
            extend(i + 1)
        assignment.pop(v, None)

    extend(1)
    return found


def is_weak_homomorphism(phi: NodeMapping, source: DescriptionTree, target: DescriptionTree) -> bool:
    """Whether `phi` maps the root to the root and every r-edge onto an r-edge."""
    if len(phi) != len(source.labels) or phi[source.root] != target.root:
        return False
    for parent, role, child in source.edges:
        if not 0 <= phi[child] < len(target.labels):
            return False
        if target.parent(phi[child]) != (phi[parent], role):
            return False
    return True


def is_t_homomorphism(
    phi: NodeMapping,
    source: DescriptionTree,
    target: DescriptionTree,
    entails: Callable[[FrozenSet[str], FrozenSet[str]], bool],
) -> bool:
    """
    Check the label condition of a T-homomorphism.

    Args:
        phi: Weak homomorphism from `source` into `target`
        source: Tree whose labels must be entailed
        target: Tree whose labels entail
        entails: Decides T |= ⊓lhs ⊑ ⊓rhs for two name sets

    Returns:
        True iff T |= ⊓label(phi(v)) ⊑ ⊓label(v) for every source node v

    Raises:
        NotAHomomorphism: If phi is not a weak homomorphism
    """
    if not is_weak_homomorphism(phi, source, target):
        raise NotAHomomorphism(f"mapping {phi.targets} is not a weak homomorphism")
    return all(entails(target.label(phi[v]), source.label(v)) for v in source.nodes)
