"""Labelling, constraining and validation of pointed graphs against
pointed shapes.

Recursion between names is resolved by labelling: starting from the
(base node, base name) pair, labels propagate along the *requires* relation
until nothing new is added.  The resulting label sets are the least
labelling closed under requires that contains the seed.  Node constraints
are then checked at each labelled node, with no further recursion.
"""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .constraints import NodeConstraint, Reason
from .neighbour import eval_neighbour, successors
from .rdf import Graph, PointedGraph, Term, nodes
from .shapes import Name, NeighbourGraph, NodeConstraints, PointedNeighbourGraph, PointedShape, ShapeError

NamedNode = tuple  # (Term, Name)


class UnknownLabelName(ShapeError):
    code = "unknown-label-name"


def requires_relation(g: Graph, ng: NeighbourGraph) -> frozenset:
    """All pairs ((x, a), (y, b)) with an arc (a, q, b) and (x, y) in q(g)."""
    return frozenset(
        ((x, arc.source), (y, arc.target)) for arc in ng.arcs for x, y in eval_neighbour(arc.path, g)
    )


@dataclass(frozen=True)
class LabelledGraph:
    graph: Graph
    names: frozenset
    label: Mapping[Term, frozenset]
    # number of named nodes ever put on the worklist
    enqueued: int = field(default=0, compare=False)

    def labelled(self) -> dict:
        """Only the nodes carrying at least one label."""
        return {x: ls for x, ls in self.label.items() if ls}

    def named_nodes(self) -> frozenset:
        return frozenset((x, a) for x, ls in self.label.items() for a in ls)


def label_graph(
    pg: PointedGraph,
    pointed: Union[PointedShape, PointedNeighbourGraph],
    rng: Optional[random.Random] = None,
) -> LabelledGraph:
    """Label every node of ``pg.graph`` with the names it must satisfy.

    Worklist closure seeded with (base node, base name); each named node is
    enqueued at most once.  Passing ``rng`` takes pending items in random
    order instead of FIFO, which must not change the result.
    """
    g = pg.graph
    ng = pointed.neighbour_graph
    out_arcs: dict[Name, list] = {}
    for arc in sorted(ng.arcs):
        out_arcs.setdefault(arc.source, []).append((successors(g, arc.path), arc.target))

    seed = (pg.base_node, pointed.base_name)
    seen = {seed}
    pending: Union[deque, list] = deque([seed]) if rng is None else [seed]
    while pending:
        if rng is None:
            x, a = pending.popleft()
        else:
            i = rng.randrange(len(pending))
            pending[i], pending[-1] = pending[-1], pending[i]
            x, a = pending.pop()
        for succ, b in out_arcs.get(a, ()):
            for y in succ.get(x, ()):
                if (y, b) not in seen:
                    seen.add((y, b))
                    pending.append((y, b))

    label: dict = {x: set() for x in nodes(g)}
    for x, a in seen:
        label[x].add(a)
    return LabelledGraph(g, ng.names, {x: frozenset(ls) for x, ls in label.items()}, enqueued=len(seen))


@dataclass(frozen=True)
class ConstrainedGraph:
    graph: Graph
    constraints: Mapping[Term, frozenset]
    # which names contributed each constraint, for reporting
    sources: Mapping[Term, tuple] = field(default_factory=dict, compare=False)


def constrain_graph(lg: LabelledGraph, ncs: NodeConstraints) -> ConstrainedGraph:
    unknown = set().union(*lg.label.values()) - set(ncs.names) if lg.label else set()
    if unknown:
        raise UnknownLabelName(f"labels without a node constraint: {sorted(unknown)}")
    constraints = {}
    sources = {}
    for x, names in lg.label.items():
        constraints[x] = frozenset(ncs.constraint[a] for a in names)
        sources[x] = tuple((a, ncs.constraint[a]) for a in sorted(names))
    return ConstrainedGraph(lg.graph, constraints, sources)


@dataclass(frozen=True)
class Violation:
    node: Term
    name: Optional[Name]
    constraint: NodeConstraint
    reasons: tuple

    @property
    def extension(self) -> bool:
        return self.constraint.extension


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple
    labelling: Optional[LabelledGraph] = None
    focus_node: Optional[Term] = None
    shape: Optional[Name] = None

    def __bool__(self) -> bool:
        return self.valid


def validate(cg: ConstrainedGraph, labelling: Optional[LabelledGraph] = None) -> ValidationReport:
    violations = []
    for x in nodes(cg.graph):
        named = cg.sources.get(x) or tuple((None, c) for c in cg.constraints.get(x, ()))
        for name, c in named:
            reasons = c.explain(cg.graph, x)
            if reasons:
                violations.append(Violation(x, name, c, tuple(reasons)))
    violations.sort(key=lambda v: (v.node.sort_key(), v.name or "", str(v.constraint)))
    return ValidationReport(not violations, tuple(violations), labelling)


def satisfies(ps: PointedShape, pg: PointedGraph) -> ValidationReport:
    lg = label_graph(pg, ps)
    report = validate(constrain_graph(lg, ps.shape.node_constraints), lg)
    return ValidationReport(report.valid, report.violations, lg, pg.base_node, ps.base_name)


def shape_constraint_check(ps: PointedShape, g: Graph, x: Term) -> bool:
    """The pointed shape used as a node constraint at ``x``."""
    if x not in nodes(g):
        return False
    return satisfies(ps, PointedGraph(g, x)).valid


def check_all(ps: PointedShape, g: Graph, candidates: Iterable[Term], workers: Optional[int] = None) -> frozenset:
    """Candidates at which ``ps`` fails when each is taken as the focus node."""
    candidates = sorted(set(candidates))
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda x: shape_constraint_check(ps, g, x), candidates))
    else:
        results = [shape_constraint_check(ps, g, x) for x in candidates]
    return frozenset(x for x, ok in zip(candidates, results) if not ok)


def default_candidates(ps: PointedShape, g: Graph) -> frozenset:
    """Nodes that take part in the shape's paths.

    Both ends of every arc path, plus the focus side of every path used by
    a node constraint (a node "lives somewhere, knows someone, or is known
    by someone").
    """
    out = set()
    for arc in ps.shape.arcs:
        for x, y in eval_neighbour(arc.path, g):
            out.update((x, y))
    for c in ps.shape.node_constraints.constraint.values():
        for leaf in c.leaves():
            out.update(successors(g, leaf.path))
    return frozenset(out)


def candidates_for_predicates(g: Graph, preds: Iterable) -> frozenset:
    """Subjects and objects of triples using any of ``preds``."""
    out = set()
    for p in preds:
        for s, o in g.pairs(p):
            out.update((s, o))
    return frozenset(out)


__all__ = [
    "NamedNode",
    "LabelledGraph",
    "ConstrainedGraph",
    "Violation",
    "ValidationReport",
    "Reason",
    "requires_relation",
    "label_graph",
    "constrain_graph",
    "validate",
    "satisfies",
    "shape_constraint_check",
    "check_all",
    "default_candidates",
    "candidates_for_predicates",
]
