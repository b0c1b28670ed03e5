"""Minimum-cost sensor placement on a radial feeder.

The decision variables are a set of node sensors (each watches every incident
edge plus the node's voltage) and a set of line sensors (each watches one edge
plus the voltage at its child end).  A placement is feasible when

  * every child edge of the root is monitored by some sensor,
  * every non-root node of degree >= 3 has all but at most one of its child
    edges monitored, and
  * every zero-injection node carries a node sensor or a line sensor on its
    parent edge.

An edge counts as monitored when a sensor at either endpoint or on the edge
itself measures its flow; several sensors watching the same edge still count
once.  ``dp_place`` builds a minimum-cost feasible placement in one bottom-up
sweep over the critical nodes, deciding at each whether a node sensor beats
the cheapest combination of sensors at its children.

Every type here is immutable and every function pure (placement_step returns
a new placement rather than mutating), so concurrent calls over shared trees
need no synchronization.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    EmptyList,
    NodeNotCritical,
    RootHasNoParentEdge,
    UnknownEdge,
    UnknownNode,
)
from .model import CostModel, Edge, RadialTree


@dataclass(frozen=True)
class Placement:
    """A sensor placement: node-sensor sites and line-sensor sites."""

    node_sensors: frozenset[int] = frozenset()
    line_sensors: frozenset[Edge] = frozenset()

    def adding(self, nodes: Iterable[int] = (), edges: Iterable[Edge] = ()) -> "Placement":
        return Placement(
            node_sensors=self.node_sensors | frozenset(nodes),
            line_sensors=self.line_sensors | frozenset(edges),
        )

    @property
    def n_sensors(self) -> int:
        return len(self.node_sensors) + len(self.line_sensors)

    def sort_key(self):
        return (tuple(sorted(self.node_sensors)), tuple(sorted(self.line_sensors)))


@dataclass(frozen=True)
class ConstraintReport:
    """Which feasibility requirements a placement violates; empty iff feasible."""

    root_ok: bool
    branch_violations: frozenset[int]
    zero_injection_violations: frozenset[int]

    @property
    def ok(self) -> bool:
        return self.root_ok and not self.branch_violations and not self.zero_injection_violations

    def describe(self) -> str:
        if self.ok:
            return "feasible"
        parts = []
        if not self.root_ok:
            parts.append("root child edges not all monitored")
        if self.branch_violations:
            parts.append(f"branch nodes under-monitored: {sorted(self.branch_violations)}")
        if self.zero_injection_violations:
            parts.append(f"zero-injection nodes unwatched: {sorted(self.zero_injection_violations)}")
        return "; ".join(parts)


@dataclass(frozen=True)
class DpIteration:
    k: int
    depth: int
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class DpStep:
    k: int
    depth: int
    node: int
    branch: str
    added_nodes: tuple[int, ...]
    added_edges: tuple[Edge, ...]


@dataclass(frozen=True)
class DpTrace:
    """Audit trail of one dp_place run: one record per depth, one per node processed."""

    iterations: tuple[DpIteration, ...]
    steps: tuple[DpStep, ...]
    wall_seconds: float

    def to_doc(self) -> dict:
        return {
            "iterations": [
                {"k": it.k, "depth": it.depth, "nodes": list(it.nodes)} for it in self.iterations
            ],
            "steps": [
                {
                    "k": s.k,
                    "depth": s.depth,
                    "node": s.node,
                    "branch": s.branch,
                    "added_nodes": list(s.added_nodes),
                    "added_edges": [list(e) for e in s.added_edges],
                }
                for s in self.steps
            ],
            "wall_seconds": self.wall_seconds,
        }


def critical_set(tree: RadialTree) -> frozenset[int]:
    """Nodes where placement decisions happen: root, degree >= 3, zero-injection."""
    return frozenset(
        i
        for i in tree.nodes
        if i == tree.root or tree.degree(i) >= 3 or i in tree.zero_injection
    )


def tie_cost(tree: RadialTree, i: int, costs: CostModel) -> Fraction:
    """Cheapest way to watch node i from above: node sensor at i or a line
    sensor on its parent edge."""
    if i == tree.root:
        raise RootHasNoParentEdge(f"node {i} is the root")
    return min(costs.node_cost[i], costs.line_cost[tree.parent_edge(i)])


def no_sensor_child(tree: RadialTree, q: int, placement: Placement) -> list[int]:
    """Children of q with no node sensor and no line sensor on their parent edge,
    ascending."""
    if q not in tree.children:
        raise UnknownNode(f"node {q} not in tree")
    return [
        i
        for i in tree.children[q]
        if i not in placement.node_sensors and (q, i) not in placement.line_sensors
    ]


def find_max(tree: RadialTree, nodes: list[int], costs: CostModel) -> tuple[int, list[int]]:
    """Drop the child that is most expensive to watch; ties fall to the node
    with the least degree, then the least id.  Returns (dropped, rest)."""
    if not nodes:
        raise EmptyList("find_max needs at least one candidate")
    best = max(nodes, key=lambda i: (tie_cost(tree, i, costs), -tree.degree(i), -i))
    return best, [i for i in nodes if i != best]


def _cheaper_site(tree: RadialTree, q: int, child: int, costs: CostModel) -> tuple[str, object]:
    """Pick the sensor realizing tie_cost(child): node sensor on cost ties."""
    if costs.node_cost[child] <= costs.line_cost[(q, child)]:
        return "node", child
    return "edge", (q, child)


def _branch(
    tree: RadialTree, costs: CostModel, q: int, placement: Placement
) -> tuple[str, tuple[int, ...], tuple[Edge, ...]]:
    """One placement decision at critical node q; returns (branch, nodes, edges) added."""
    unwatched = no_sensor_child(tree, q, placement)
    m = {i: tie_cost(tree, i, costs) for i in unwatched}

    if q == tree.root:
        if unwatched and costs.node_cost[q] <= sum(m.values()):
            return "root-node-sensor", (q,), ()
        added_nodes, added_edges = [], []
        for i in unwatched:
            kind, site = _cheaper_site(tree, q, i, costs)
            (added_nodes if kind == "node" else added_edges).append(site)
        return "root-child-sensors", tuple(added_nodes), tuple(added_edges)

    in_z = q in tree.zero_injection
    if in_z and len(unwatched) <= 1:
        if costs.node_cost[q] <= costs.line_cost[tree.parent_edge(q)]:
            return "zi-node-sensor", (q,), ()
        return "zi-parent-line", (), (tree.parent_edge(q),)

    if not unwatched:
        # Every child already watched by deeper decisions; nothing to compare.
        return "noop", (), ()

    _, keep = find_max(tree, unwatched, costs)
    keep_cost = sum(m[i] for i in keep)
    if in_z:
        if costs.node_cost[q] <= costs.line_cost[tree.parent_edge(q)] + keep_cost:
            return "node-sensor", (q,), ()
    elif costs.node_cost[q] <= keep_cost:
        return "node-sensor", (q,), ()

    added_nodes, added_edges = [], []
    for i in keep:
        kind, site = _cheaper_site(tree, q, i, costs)
        (added_nodes if kind == "node" else added_edges).append(site)
    if in_z:
        # The node-sensor option lost the comparison above, so the line sensor
        # on the parent edge is the cheaper way to keep q itself watched.
        added_edges.append(tree.parent_edge(q))
        return "child-sensors+zi-line", tuple(added_nodes), tuple(added_edges)
    return "child-sensors", tuple(added_nodes), tuple(added_edges)


def placement_step(
    tree: RadialTree, costs: CostModel, q: int, placement: Placement
) -> Placement:
    """Apply the placement decision for one critical node; only ever adds sensors."""
    if q != tree.root and tree.degree(q) < 3 and q not in tree.zero_injection:
        raise NodeNotCritical(f"node {q} is not in the critical set")
    _, nodes, edges = _branch(tree, costs, q, placement)
    return placement.adding(nodes, edges)


def dp_place(tree: RadialTree, costs: CostModel) -> tuple[Placement, DpTrace]:
    """Sweep critical nodes from the deepest level up to the root, deciding each
    node's sensors against the running placement.  Linear in the critical-set
    size; the returned trace records every decision.

    The sweep normally starts one level above the deepest, because a node at
    maximum depth is a leaf and a nonzero-injection leaf never binds a
    constraint.  A zero-injection leaf at maximum depth does bind one, so when
    such nodes exist a preliminary pass (k = 0) handles that level first.
    """
    start = time.perf_counter()
    critical = critical_set(tree)
    by_depth: dict[int, list[int]] = {}
    for i in sorted(critical):
        by_depth.setdefault(tree.depth[i], []).append(i)

    placement = Placement()
    iterations: list[DpIteration] = []
    steps: list[DpStep] = []

    def run_level(k: int, depth: int) -> None:
        nonlocal placement
        level = by_depth.get(depth, [])
        iterations.append(DpIteration(k=k, depth=depth, nodes=tuple(level)))
        for q in level:
            branch, nodes, edges = _branch(tree, costs, q, placement)
            placement = placement.adding(nodes, edges)
            steps.append(
                DpStep(
                    k=k,
                    depth=depth,
                    node=q,
                    branch=branch,
                    added_nodes=nodes,
                    added_edges=tuple(sorted(edges)),
                )
            )

    if tree.max_depth > 0 and by_depth.get(tree.max_depth):
        run_level(0, tree.max_depth)
    for k in range(1, tree.max_depth + 1):
        run_level(k, tree.max_depth - k)
    trace = DpTrace(
        iterations=tuple(iterations),
        steps=tuple(steps),
        wall_seconds=time.perf_counter() - start,
    )
    return placement, trace


def _monitored(tree: RadialTree, placement: Placement, q: int, child: int) -> bool:
    return (
        q in placement.node_sensors
        or child in placement.node_sensors
        or (q, child) in placement.line_sensors
    )


def check_constraints(tree: RadialTree, placement: Placement) -> ConstraintReport:
    """Evaluate the three feasibility requirements.

    Monitoring is counted per edge: an edge watched by several sensors still
    counts once, so redundant placements cannot mask an unwatched edge.
    Degree-2 non-root nodes impose no branch requirement (all-but-one of one
    child edge is zero edges).
    """
    root_ok = all(_monitored(tree, placement, tree.root, j) for j in tree.children[tree.root])
    branch = frozenset(
        k
        for k in tree.nodes
        if k != tree.root
        and tree.degree(k) >= 3
        and sum(_monitored(tree, placement, k, j) for j in tree.children[k]) < tree.degree(k) - 2
    )
    zero = frozenset(
        k
        for k in tree.zero_injection
        if k not in placement.node_sensors and tree.parent_edge(k) not in placement.line_sensors
    )
    return ConstraintReport(root_ok=root_ok, branch_violations=branch, zero_injection_violations=zero)


def placement_cost(placement: Placement, costs: CostModel) -> Fraction:
    """Total installation cost of a placement."""
    total = Fraction(0)
    for i in placement.node_sensors:
        if i not in costs.node_cost:
            raise UnknownNode(f"no node cost for {i}")
        total += costs.node_cost[i]
    for e in placement.line_sensors:
        if e not in costs.line_cost:
            raise UnknownEdge(f"no line cost for {e}")
        total += costs.line_cost[e]
    return total


def placement_to_doc(placement: Placement) -> dict:
    return {
        "node_sensors": sorted(placement.node_sensors),
        "line_sensors": [list(e) for e in sorted(placement.line_sensors)],
    }


def placement_from_doc(doc: dict, tree: RadialTree | None = None) -> Placement:
    """Read a placement document; validates sites against the tree when given."""
    nodes = frozenset(doc.get("node_sensors", ()))
    edges = frozenset(tuple(e) for e in doc.get("line_sensors", ()))
    if tree is not None:
        for i in sorted(nodes):
            if i not in tree.children:
                raise UnknownNode(f"placement references node {i} not in tree")
        for e in sorted(edges):
            if not tree.is_edge(e):
                raise UnknownEdge(f"placement references edge {e} not in tree")
    return Placement(node_sensors=nodes, line_sensors=edges)
