"""Brute-force reference semantics for small instances.

Every assignment of true/false to the (node, name) pairs of a graph is
tried; an assignment is *closed* when it makes the seed true and respects
every requires implication.  The least closed assignment is what the
worklist labelling has to produce.  Nothing here calls into
:mod:`shaperec.engine` except :func:`requires_relation` for the implication
list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .engine import requires_relation
from .rdf import Graph, Term, nodes
from .shapes import Name, NeighbourGraph

MAX_VARIABLES = 24
_CHUNK_BITS = 20


class InstanceTooLarge(ValueError):
    code = "instance-too-large"


@dataclass(frozen=True)
class LabellingAssignment:
    """Truth values for ``variables``; bit ``len-1-i`` of ``bits`` is the
    value of ``variables[i]`` so the first variable is the most significant."""

    variables: tuple
    bits: int

    def __getitem__(self, var) -> bool:
        i = self.variables.index(var)
        return bool(self.bits >> (len(self.variables) - 1 - i) & 1)

    def true_set(self) -> frozenset:
        return frozenset(v for v in self.variables if self[v])

    def as_dict(self) -> dict:
        return {v: self[v] for v in self.variables}

    def row(self) -> tuple:
        return tuple(self[v] for v in self.variables)

    def labels(self) -> dict:
        out: dict = {}
        for x, a in self.true_set():
            out.setdefault(x, set()).add(a)
        return {x: frozenset(ls) for x, ls in out.items()}


def _variables(g: Graph, ng: NeighbourGraph) -> tuple:
    return tuple((x, a) for x in sorted(nodes(g)) for a in sorted(ng.names))


def _guard(n: int) -> None:
    if n > MAX_VARIABLES:
        raise InstanceTooLarge(f"{n} propositional variables exceeds the limit of {MAX_VARIABLES}")


def _solutions(n: int, implications: list, forced: Iterable[int] = ()) -> np.ndarray:
    """All n-bit masks with every ``forced`` bit set and, for each
    ``(premises, conclusion)``, conclusion set whenever all premises are.

    Bits are indexed from the most significant end (variable 0 is bit n-1).
    """
    _guard(n)
    forced = sorted(set(forced))
    free = [i for i in range(n) if i not in forced]
    forced_mask = 0
    for i in forced:
        forced_mask |= 1 << (n - 1 - i)

    found = []
    total = 1 << len(free)
    chunk = 1 << _CHUNK_BITS
    for start in range(0, total, chunk):
        k = np.arange(start, min(total, start + chunk), dtype=np.uint64)
        masks = np.full(k.shape, forced_mask, dtype=np.uint64)
        # scatter the counter's bits onto the free variables
        for j, i in enumerate(reversed(free)):
            masks |= ((k >> np.uint64(j)) & np.uint64(1)) << np.uint64(n - 1 - i)
        ok = np.ones(k.shape, dtype=bool)
        for premises, conclusion in implications:
            need = 0
            for i in premises:
                need |= 1 << (n - 1 - i)
            need = np.uint64(need)
            fires = (masks & need) == need
            holds = (masks >> np.uint64(n - 1 - conclusion)) & np.uint64(1) == 1
            ok &= ~fires | holds
            if not ok.any():
                break
        found.append(masks[ok])
    out = np.concatenate(found) if found else np.empty(0, dtype=np.uint64)
    return np.sort(out)


def _requires_implications(g: Graph, ng: NeighbourGraph, variables: tuple) -> list:
    index = {v: i for i, v in enumerate(variables)}
    return [((index[u],), index[v]) for u, v in requires_relation(g, ng)]


def closed_masks(g: Graph, ng: NeighbourGraph, seed: tuple) -> tuple[tuple, np.ndarray]:
    variables = _variables(g, ng)
    if seed not in variables:
        raise ValueError(f"seed {seed!r} is not a (node, name) pair of the instance")
    _guard(len(variables))
    masks = _solutions(len(variables), _requires_implications(g, ng, variables), [variables.index(seed)])
    return variables, masks


def enumerate_closed_labellings(g: Graph, ng: NeighbourGraph, seed: tuple) -> list[LabellingAssignment]:
    """Every assignment that makes ``seed`` true and is closed under the
    requires relation, in ascending bit order."""
    variables, masks = closed_masks(g, ng, seed)
    return [LabellingAssignment(variables, int(m)) for m in masks]


def iter_closed_labellings(g: Graph, ng: NeighbourGraph, seed: tuple) -> Iterator[LabellingAssignment]:
    variables, masks = closed_masks(g, ng, seed)
    for m in masks:
        yield LabellingAssignment(variables, int(m))


def is_closed(a: LabellingAssignment, g: Graph, ng: NeighbourGraph, seed: tuple) -> bool:
    if not a[seed]:
        return False
    return all(not a[u] or a[v] for u, v in requires_relation(g, ng))


def minimal_closed_labelling(g: Graph, ng: NeighbourGraph, seed: tuple) -> LabellingAssignment:
    """Pointwise minimum of all closed assignments.

    Closed assignments are closed under intersection, so the minimum is
    itself closed; this is checked rather than assumed.
    """
    variables, masks = closed_masks(g, ng, seed)
    least = int(np.bitwise_and.reduce(masks))
    if not np.any(masks == np.uint64(least)):
        raise AssertionError("pointwise minimum of closed labellings is not closed")
    return LabellingAssignment(variables, least)


def closure_by_composition(g: Graph, ng: NeighbourGraph, seed: tuple) -> frozenset:
    """Named nodes related to ``seed`` by the reflexive-transitive closure of
    requires, built by composing the relation with itself to a fixpoint."""
    r = set(requires_relation(g, ng))
    while True:
        step = {(u, w) for u, v in r for v2, w in r if v == v2}
        if step <= r:
            break
        r |= step
    return frozenset({seed} | {v for u, v in r if u == seed})


@dataclass(frozen=True)
class NaiveSolutions:
    variables: tuple
    solutions: tuple

    @property
    def count(self) -> int:
        return len(self.solutions)

    def rows(self) -> list[tuple]:
        return [s.row() for s in self.solutions]


def naive_consistency_solutions(g: Graph, ng: NeighbourGraph, about_node: Term, base_name: Name) -> NaiveSolutions:
    """Solutions of the naive reading of the circular definitions.

    The variables are the (node, name) pairs reachable from
    ``(about_node, base_name)``.  Each definition is read as a sufficient
    condition: a pair holds if every pair it requires holds.  No variable is
    forced true, so several solutions usually exist.  Solutions are listed
    with true before false, first variable most significant.
    """
    seed = (about_node, base_name)
    reach = closure_by_composition(g, ng, seed)
    rest = sorted(reach - {seed}, key=lambda v: (v[0].sort_key(), v[1]))
    variables = (seed, *rest)
    _guard(len(variables))
    index = {v: i for i, v in enumerate(variables)}
    needs: dict = {}
    for u, v in requires_relation(g, ng):
        if u in index:
            needs.setdefault(u, set()).add(index[v])
    implications = [(tuple(sorted(ps)), index[u]) for u, ps in needs.items()]
    masks = _solutions(len(variables), implications)
    return NaiveSolutions(variables, tuple(LabellingAssignment(variables, int(m)) for m in masks[::-1]))
