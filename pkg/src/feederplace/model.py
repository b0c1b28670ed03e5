"""Radial feeder topology: trees, sensor costs, file format, generation, DOT export.

A feeder is a tree rooted at the substation node.  Edges are stored directed
parent -> child (power flows away from the root).  The degree of a node counts
the grid connection at the root and the parent edge elsewhere, so
``degree(i) == len(children[i]) + 1`` for every node.

All values are immutable after construction and safe to share across threads.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DanglingEdge,
    DuplicateId,
    FeederFormatError,
    InvalidParameter,
    NegativeCost,
    NotATree,
    RootHasZeroInjection,
    UnknownEdge,
    UnknownNode,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class RadialTree:
    """A rooted radial feeder with zero-injection annotations.

    Build instances through :meth:`build` or :func:`parse_feeder`; direct
    construction skips validation (use :func:`validate` to audit such values).
    """

    root: int
    parent: Mapping[int, int]
    children: Mapping[int, tuple[int, ...]]
    zero_injection: frozenset[int]
    depth: Mapping[int, int]
    max_depth: int
    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(
        cls,
        root: int,
        edges: Iterable[Edge],
        zero_injection: Iterable[int] = (),
    ) -> "RadialTree":
        """Construct a validated tree from an undirected edge list.

        Edges given child -> parent are reoriented away from the root.
        Raises NotATree for cycles, repeats or disconnected parts,
        RootHasZeroInjection / UnknownNode for bad annotations.
        """
        edges = [tuple(e) for e in edges]
        nodes = {root}
        adjacency: dict[int, set[int]] = {root: set()}
        for a, b in edges:
            for v in (a, b):
                if not isinstance(v, int) or v <= 0:
                    raise FeederFormatError(f"node ids must be positive integers, got {v!r}")
                adjacency.setdefault(v, set())
            if a == b or b in adjacency[a]:
                raise NotATree(f"repeated or self edge ({a}, {b})")
            adjacency[a].add(b)
            adjacency[b].add(a)
            nodes.update((a, b))
        if len(edges) != len(nodes) - 1:
            raise NotATree(f"{len(nodes)} nodes need {len(nodes) - 1} edges, got {len(edges)}")

        parent: dict[int, int] = {}
        depth: dict[int, int] = {root: 0}
        order = [root]
        seen = {root}
        for v in order:
            for w in sorted(adjacency[v]):
                if w in seen:
                    continue
                seen.add(w)
                parent[w] = v
                depth[w] = depth[v] + 1
                order.append(w)
        if len(seen) != len(nodes):
            raise NotATree(f"{len(nodes) - len(seen)} node(s) unreachable from root {root}")

        children = {v: tuple(sorted(w for w in adjacency[v] if parent.get(w) == v)) for v in nodes}
        zset = frozenset(zero_injection)
        if root in zset:
            raise RootHasZeroInjection(f"root {root} marked zero-injection")
        unknown = zset - nodes
        if unknown:
            raise UnknownNode(f"zero-injection ids not in tree: {sorted(unknown)}")
        return cls(
            root=root,
            parent=parent,
            children=children,
            zero_injection=zset,
            depth=depth,
            max_depth=max(depth.values()),
            nodes=tuple(sorted(nodes)),
            edges=tuple(sorted((parent[w], w) for w in parent)),
        )

    def degree(self, i: int) -> int:
        """Node degree including the parent edge (grid connection at the root)."""
        if i not in self.children:
            raise UnknownNode(f"node {i} not in tree")
        return len(self.children[i]) + 1

    def parent_edge(self, i: int) -> Edge:
        if i == self.root:
            raise UnknownNode(f"root {i} has no parent edge")
        return (self.parent[i], i)

    def is_edge(self, e: Edge) -> bool:
        a, b = e
        return self.parent.get(b) == a

    def subtree(self, i: int) -> frozenset[int]:
        """All nodes in the subtree rooted at i, including i."""
        if i not in self.children:
            raise UnknownNode(f"node {i} not in tree")
        out = [i]
        for v in out:
            out.extend(self.children[v])
        return frozenset(out)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class CostModel:
    """Per-node and per-edge sensor installation costs, kept as exact rationals."""

    node_cost: Mapping[int, Fraction]
    line_cost: Mapping[Edge, Fraction]

    @classmethod
    def uniform(cls, tree: RadialTree, node: Fraction | int, line: Fraction | int) -> "CostModel":
        a = Fraction(node)
        b = Fraction(line)
        if a < 0 or b < 0:
            raise NegativeCost("uniform costs must be nonnegative")
        return cls(
            node_cost={i: a for i in tree.nodes},
            line_cost={e: b for e in tree.edges},
        )

    def scaled(self, factor: Fraction) -> "CostModel":
        f = Fraction(factor)
        return CostModel(
            node_cost={i: c * f for i, c in self.node_cost.items()},
            line_cost={e: c * f for e, c in self.line_cost.items()},
        )


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return f"{self.code}: {self.detail}"


def parse_cost(value) -> Fraction:
    """Parse an exact cost: int, 'p/q', or a decimal string like '0.3'."""
    if isinstance(value, bool) or value is None:
        raise FeederFormatError(f"bad cost value {value!r}")
    if isinstance(value, float):
        # Floats only appear when a caller bypasses parse_feeder; be strict.
        raise FeederFormatError(f"float cost {value!r}; use a string or integer")
    try:
        cost = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FeederFormatError(f"bad cost value {value!r}") from exc
    return cost


def format_cost(cost: Fraction) -> str:
    """Render a rational exactly: integer, finite decimal, or 'p/q'."""
    if cost.denominator == 1:
        return str(cost.numerator)
    den = cost.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        return _decimal_string(cost)
    return f"{cost.numerator}/{cost.denominator}"


def _decimal_string(cost: Fraction) -> str:
    sign = "-" if cost < 0 else ""
    den = cost.denominator
    digits = 0
    while den % 2 == 0:
        den //= 2
        digits += 1
    twos = digits
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    digits = max(twos, fives)
    scaled = abs(cost.numerator) * 10**digits // cost.denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def parse_feeder(text: str) -> tuple[RadialTree, CostModel]:
    """Parse a feeder document into a validated tree and cost model.

    The document is JSON with a ``root`` field (default 1), a ``nodes`` list
    (``id``, optional ``zero_injection``, ``node_cost``) and an ``edges`` list
    (``from``, ``to``, ``line_cost``).  Costs are exact: integers, decimal
    strings, or 'p/q' strings.  Decimal literals in the file are parsed
    exactly, never through binary floating point.
    """
    try:
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise FeederFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FeederFormatError("top level must be an object")
    for key in ("nodes", "edges"):
        if key not in doc or not isinstance(doc[key], list):
            raise FeederFormatError(f"missing or malformed '{key}' list")

    node_cost: dict[int, Fraction] = {}
    zero_injection: set[int] = set()
    for entry in doc["nodes"]:
        if not isinstance(entry, dict) or "id" not in entry:
            raise FeederFormatError(f"malformed node entry {entry!r}")
        i = entry["id"]
        if i in node_cost:
            raise DuplicateId(f"node id {i} declared twice")
        if "node_cost" not in entry:
            raise FeederFormatError(f"node {i} has no node_cost")
        cost = parse_cost(entry["node_cost"])
        if cost < 0:
            raise NegativeCost(f"node {i} cost {entry['node_cost']}")
        node_cost[i] = cost
        if entry.get("zero_injection", False):
            zero_injection.add(i)

    root = doc.get("root", 1)
    if root not in node_cost:
        raise FeederFormatError(f"root {root} is not a declared node")

    edges = []
    line_cost: dict[Edge, Fraction] = {}
    for entry in doc["edges"]:
        if not isinstance(entry, dict) or "from" not in entry or "to" not in entry:
            raise FeederFormatError(f"malformed edge entry {entry!r}")
        a, b = entry["from"], entry["to"]
        for v in (a, b):
            if v not in node_cost:
                raise DanglingEdge(f"edge ({a}, {b}) references undeclared node {v}")
        if "line_cost" not in entry:
            raise FeederFormatError(f"edge ({a}, {b}) has no line_cost")
        cost = parse_cost(entry["line_cost"])
        if cost < 0:
            raise NegativeCost(f"edge ({a}, {b}) cost {entry['line_cost']}")
        edges.append((a, b))
        line_cost[(a, b)] = cost

    tree = RadialTree.build(root, edges, zero_injection)
    # Reorient any child->parent cost keys to match the tree's direction.
    oriented = {}
    for (a, b), cost in line_cost.items():
        if tree.is_edge((a, b)):
            oriented[(a, b)] = cost
        else:
            oriented[(b, a)] = cost
    return tree, CostModel(node_cost=node_cost, line_cost=oriented)


def serialize_feeder(tree: RadialTree, costs: CostModel, name: str | None = None) -> str:
    """Render a feeder document; parse_feeder(serialize_feeder(t, c)) == (t, c)."""
    doc: dict = {}
    if name:
        doc["name"] = name
    doc["root"] = tree.root
    doc["nodes"] = [
        {
            "id": i,
            "zero_injection": i in tree.zero_injection,
            "node_cost": format_cost(costs.node_cost[i]),
        }
        for i in tree.nodes
    ]
    doc["edges"] = [
        {"from": a, "to": b, "line_cost": format_cost(costs.line_cost[(a, b)])}
        for a, b in tree.edges
    ]
    return json.dumps(doc, indent=2) + "\n"


def validate(tree: RadialTree, costs: CostModel) -> tuple[Violation, ...]:
    """Audit structural invariants; returns one Violation per breach, empty if valid.

    Unlike RadialTree.build this never raises: it is meant for values built
    directly (tests, deserialization of untrusted data).
    """
    out: list[Violation] = []
    nodes = set(tree.nodes)

    if tree.root not in nodes:
        out.append(Violation("NotATree", f"root {tree.root} not among nodes"))
        return tuple(out)

    # Parent map must form a tree on the declared nodes.
    for i in tree.nodes:
        if i == tree.root:
            continue
        if i not in tree.parent:
            out.append(Violation("NotATree", f"node {i} has no parent"))
            continue
        hops, cursor = 0, i
        while cursor != tree.root and hops <= len(tree.nodes):
            cursor = tree.parent.get(cursor, tree.root)
            hops += 1
        if hops > len(tree.nodes):
            out.append(Violation("NotATree", f"parent chain from {i} never reaches the root"))
    stray = set(tree.parent) - nodes
    if stray:
        out.append(Violation("NotATree", f"parent entries for undeclared nodes: {sorted(stray)}"))

    for i in tree.nodes:
        expected = tuple(sorted(j for j in tree.parent if tree.parent[j] == i))
        if tuple(tree.children.get(i, ())) != expected:
            out.append(Violation("NotATree", f"children of {i} inconsistent with parent map"))

    if tree.depth.get(tree.root) != 0:
        out.append(Violation("BadDepth", f"depth of root is {tree.depth.get(tree.root)}"))
    for i, p in tree.parent.items():
        if tree.depth.get(i) != tree.depth.get(p, -2) + 1:
            out.append(Violation("BadDepth", f"depth({i}) != depth({p}) + 1"))
    if tree.depth and tree.max_depth != max(tree.depth.values()):
        out.append(Violation("BadDepth", f"max_depth {tree.max_depth} is stale"))

    if tree.root in tree.zero_injection:
        out.append(Violation("RootHasZeroInjection", f"root {tree.root} marked zero-injection"))
    for i in sorted(tree.zero_injection - nodes):
        out.append(Violation("UnknownNode", f"zero-injection id {i} not in tree"))

    for i in tree.nodes:
        cost = costs.node_cost.get(i)
        if cost is None:
            out.append(Violation("MissingCost", f"node {i} has no cost"))
        elif cost < 0:
            out.append(Violation("NegativeCost", f"node {i} cost {cost}"))
    for e in tree.edges:
        cost = costs.line_cost.get(e)
        if cost is None:
            out.append(Violation("MissingCost", f"edge {e} has no cost"))
        elif cost < 0:
            out.append(Violation("NegativeCost", f"edge {e} cost {cost}"))
    for i in sorted(set(costs.node_cost) - nodes):
        out.append(Violation("DanglingEdge", f"cost entry for unknown node {i}"))
    for e in sorted(set(costs.line_cost) - set(tree.edges)):
        out.append(Violation("DanglingEdge", f"cost entry for unknown edge {e}"))

    return tuple(out)


def random_radial_tree(
    n: int,
    seed: int,
    max_children: int = 3,
    z_fraction: float = 0.0,
) -> RadialTree:
    """Deterministic random feeder: n nodes, bounded branching, optional zero-injection.

    floor(z_fraction * (n - 1)) non-root nodes are marked zero-injection.
    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    if max_children < 1:
        raise InvalidParameter(f"max_children must be >= 1, got {max_children}")
    if not 0 <= z_fraction < 1:
        raise InvalidParameter(f"z_fraction must be in [0, 1), got {z_fraction}")
    rng = random.Random(seed)
    edges: list[Edge] = []
    load = {1: 0}
    for i in range(2, n + 1):
        eligible = [v for v in sorted(load) if load[v] < max_children]
        p = rng.choice(eligible)
        load[p] += 1
        load[i] = 0
        edges.append((p, i))
    z_count = int(z_fraction * (n - 1))
    zero = rng.sample(range(2, n + 1), z_count) if z_count else []
    return RadialTree.build(1, edges, zero)


def export_dot(tree: RadialTree, placement=None) -> str:
    """Render the feeder as a DOT digraph.

    Nodes carrying a node sensor are drawn red; edges carrying a line sensor
    are drawn green.  Placement sites must exist in the tree.
    """
    node_sensors = frozenset(placement.node_sensors) if placement else frozenset()
    line_sensors = frozenset(placement.line_sensors) if placement else frozenset()
    for i in sorted(node_sensors):
        if i not in tree.children:
            raise UnknownNode(f"placement references node {i} not in tree")
    for e in sorted(line_sensors):
        if not tree.is_edge(e):
            raise UnknownEdge(f"placement references edge {e} not in tree")

    lines = ["digraph feeder {"]
    for i in tree.nodes:
        attrs = ' [color=red, penwidth=2]' if i in node_sensors else ""
        lines.append(f"  {i}{attrs};")
    for a, b in tree.edges:
        attrs = ' [color=green, penwidth=2]' if (a, b) in line_sensors else ""
        lines.append(f"  {a} -> {b}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"
