"""Independent verification of outage identifiability and placement optimality.

Everything here is deliberately separate from the placement algorithm: outage
hypotheses are enumerated combinatorially, noise-free measurement signatures
are computed from first principles (an edge flow is the symbolic sum of the
energized, nonzero-injection loads below it; a voltage reading is an
energized flag), and two placements' ability to tell hypotheses apart is
decided either symbolically (generic loads) or against an adversary who may
pick any strictly positive load vector (worst case, via exact rational linear
feasibility).  A cost-pruned exhaustive search provides the optimality oracle
for small instances.

Only hypotheses in which no outaged edge lies below another are mutually
distinguishable even in principle, so enumeration is restricted to those
antichains; every other hypothesis produces the same measurements as its
antichain reduction under any placement.  Distinct antichains also cut
distinct energized trees, so a placement that identifies the outage set pins
down the operating topology as well; no separate topology check exists.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    CombinatorialLimit,
    InstanceTooLarge,
    MismatchedMeasuredSets,
    UnknownEdge,
    UnknownNode,
)
from .model import CostModel, Edge, RadialTree
from .placement import Placement, check_constraints, placement_cost
from .simplex import max_uniform_slack

DEFAULT_HYPOTHESIS_CAP = 50_000
# Above this many hypothesis pairs a sweep refuses outright; below
# _PROFILE_CACHE_PAIRS the per-pair difference profiles are worth caching
# (many placements swept against the same tree), beyond it they are streamed.
DEFAULT_PAIR_CAP = 20_000_000
_PROFILE_CACHE_PAIRS = 200_000
Hypothesis = frozenset[Edge]


@dataclass(frozen=True)
class MeasuredSets:
    """Edges with measured flow and nodes with measured voltage under a placement."""

    flow_edges: frozenset[Edge]
    voltage_nodes: frozenset[int]

    def issubset(self, other: "MeasuredSets") -> bool:
        return self.flow_edges <= other.flow_edges and self.voltage_nodes <= other.voltage_nodes


@dataclass(frozen=True)
class OutageForest:
    """Partition of the feeder under an outage hypothesis: the energized
    component plus one island per outaged edge."""

    energized_nodes: frozenset[int]
    islands: tuple[frozenset[int], ...]
    island_assignments: Mapping[int, int]


@dataclass(frozen=True)
class MeasurementSignature:
    """Noise-free readings under one hypothesis, restricted to measured sets.

    flow_sig maps each measured edge to the set of load nodes feeding it
    (empty when the edge is outaged, de-energized, or feeds only
    zero-injection nodes); volt_sig maps each measured node to its energized
    flag.
    """

    flow_sig: Mapping[Edge, frozenset[int]]
    volt_sig: Mapping[int, bool]

    def canonical(self):
        return (
            tuple((e, tuple(sorted(s))) for e, s in sorted(self.flow_sig.items())),
            tuple(sorted(self.volt_sig.items())),
        )


def measured_sets(tree: RadialTree, placement: Placement) -> MeasuredSets:
    """Apply sensor semantics: a node sensor measures every incident edge and
    its own voltage; a line sensor measures its edge and the child-end voltage."""
    flow: set[Edge] = set()
    volt: set[int] = set()
    for i in placement.node_sensors:
        if i not in tree.children:
            raise UnknownNode(f"node sensor at unknown node {i}")
        volt.add(i)
        if i != tree.root:
            flow.add(tree.parent_edge(i))
        for c in tree.children[i]:
            flow.add((i, c))
    for e in placement.line_sensors:
        if not tree.is_edge(e):
            raise UnknownEdge(f"line sensor on unknown edge {e}")
        flow.add(e)
        volt.add(e[1])
    return MeasuredSets(flow_edges=frozenset(flow), voltage_nodes=frozenset(volt))


def is_subset_placement(p1: Placement, p2: Placement, tree: RadialTree) -> bool:
    """Placement order by what is measured, not by which sensors are used."""
    return measured_sets(tree, p1).issubset(measured_sets(tree, p2))


def outage_forest(tree: RadialTree, h: Iterable[Edge]) -> OutageForest:
    """Split the feeder along the outaged edges.  The component containing the
    root stays energized; every outaged edge roots exactly one island."""
    h = frozenset(tuple(e) for e in h)
    for e in sorted(h):
        if not tree.is_edge(e):
            raise UnknownEdge(f"hypothesis names unknown edge {e}")
    energized = {tree.root}
    island_of: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    order = [tree.root]
    for v in order:
        order.extend(tree.children[v])
    for v in order:
        if v == tree.root:
            continue
        p = tree.parent[v]
        if (p, v) in h:
            island_of[v] = v
            members[v] = [v]
        elif p in energized:
            energized.add(v)
        else:
            root = island_of[p]
            island_of[v] = root
            members[root].append(v)
    ordered_roots = sorted(members)
    index = {r: i + 1 for i, r in enumerate(ordered_roots)}
    return OutageForest(
        energized_nodes=frozenset(energized),
        islands=tuple(frozenset(members[r]) for r in ordered_roots),
        island_assignments={v: index[island_of[v]] for v in island_of},
    )


class OutageOracle:
    """Bitmask engine for bulk distinguishability queries on one tree.

    Hypotheses are edge bitmasks (edges indexed by child endpoint), node sets
    are node bitmasks.  Per-hypothesis signatures, per-pair difference
    profiles, and load-feasibility verdicts are cached, so sweeping many
    placements over the same tree stays cheap.  Queries populate those caches,
    so share an instance across threads only behind a lock; the module-level
    functions build a fresh instance per call and are pure.
    """

    def __init__(self, tree: RadialTree, cap: int = DEFAULT_HYPOTHESIS_CAP):
        self.tree = tree
        self.cap = cap
        self.nodes = tree.nodes
        self.node_pos = {v: i for i, v in enumerate(self.nodes)}
        self.edge_children = tuple(v for v in self.nodes if v != tree.root)
        self.edge_pos = {v: e for e, v in enumerate(self.edge_children)}
        self.n_edges = len(self.edge_children)
        self.all_mask = (1 << len(self.nodes)) - 1
        self.z_mask = self._node_mask(tree.zero_injection)
        self.subtree_mask = {}
        for v in reversed(self._preorder()):
            mask = 1 << self.node_pos[v]
            for c in tree.children[v]:
                mask |= self.subtree_mask[c]
            self.subtree_mask[v] = mask
        self.load_nodes = tuple(
            v for v in self.nodes if v != tree.root and v not in tree.zero_injection
        )
        self.load_pos = {v: i for i, v in enumerate(self.load_nodes)}
        self._energized_cache: dict[int, int] = {}
        self._flow_cache: dict[int, tuple[int, ...]] = {}
        self._profile_cache: dict[tuple[int, int], tuple] = {}
        self._lp_cache: dict[frozenset, tuple[Fraction, ...] | None] = {}
        self._hypo_cache: dict[int | None, tuple[int, ...]] = {}

    # ----- plumbing ------------------------------------------------------

    def _preorder(self) -> list[int]:
        """Depth-first preorder; every subtree is a contiguous slice."""
        out: list[int] = []
        stack = [self.tree.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.tree.children[v]))
        return out

    def _node_mask(self, nodes: Iterable[int]) -> int:
        mask = 0
        for v in nodes:
            mask |= 1 << self.node_pos[v]
        return mask

    def edge_mask(self, edges: Iterable[Edge]) -> int:
        mask = 0
        for a, b in edges:
            if self.tree.parent.get(b) != a:
                raise UnknownEdge(f"unknown edge {(a, b)}")
            mask |= 1 << self.edge_pos[b]
        return mask

    def edges_of_mask(self, mask: int) -> Hypothesis:
        return frozenset(
            (self.tree.parent[v], v)
            for e, v in enumerate(self.edge_children)
            if mask >> e & 1
        )

    def placement_masks(self, placement: Placement) -> tuple[int, int]:
        """(measured-edge mask, measured-voltage-node mask) for a placement."""
        s = 0
        m = 0
        for i in placement.node_sensors:
            if i not in self.node_pos:
                raise UnknownNode(f"node sensor at unknown node {i}")
            m |= 1 << self.node_pos[i]
            if i != self.tree.root:
                s |= 1 << self.edge_pos[i]
            for c in self.tree.children[i]:
                s |= 1 << self.edge_pos[c]
        for a, b in placement.line_sensors:
            if self.tree.parent.get(b) != a:
                raise UnknownEdge(f"line sensor on unknown edge {(a, b)}")
            s |= 1 << self.edge_pos[b]
            m |= 1 << self.node_pos[b]
        return s, m

    # ----- hypotheses ----------------------------------------------------

    def hypothesis_masks(self, max_outages: int | None) -> tuple[int, ...]:
        """All outage hypotheses forming an antichain (no outaged edge below
        another), sizes 1..max_outages, plus the no-outage baseline, ordered
        by (size, child ids)."""
        key = max_outages
        if key in self._hypo_cache:
            return self._hypo_cache[key]
        preorder = [v for v in self._preorder() if v != self.tree.root]
        # Taking an edge forbids everything below it; subtrees are contiguous
        # in preorder, so "skip the subtree" is a single index jump.
        skip_to = {
            i: i + bin(self.subtree_mask[v]).count("1") for i, v in enumerate(preorder)
        }
        budget = self.n_edges if max_outages is None else max_outages
        results: list[int] = []
        stack = [(0, 0, 0)]  # (preorder position, chosen mask, chosen count)
        while stack:
            pos, chosen, count = stack.pop()
            if pos >= len(preorder):
                results.append(chosen)
                if len(results) > self.cap:
                    raise CombinatorialLimit(
                        f"more than {self.cap} hypotheses; raise the cap or limit outages"
                    )
                continue
            v = preorder[pos]
            stack.append((pos + 1, chosen, count))
            if count < budget:
                stack.append((skip_to[pos], chosen | 1 << self.edge_pos[v], count + 1))

        def sort_key(mask: int):
            ids = tuple(
                self.edge_children[e] for e in range(self.n_edges) if mask >> e & 1
            )
            return (len(ids), ids)

        results.sort(key=sort_key)
        out = tuple(results)
        self._hypo_cache[key] = out
        return out

    # ----- signatures ----------------------------------------------------

    def energized_mask(self, h_mask: int) -> int:
        cached = self._energized_cache.get(h_mask)
        if cached is None:
            dead = 0
            for e in range(self.n_edges):
                if h_mask >> e & 1:
                    dead |= self.subtree_mask[self.edge_children[e]]
            cached = self.all_mask & ~dead
            self._energized_cache[h_mask] = cached
        return cached

    def flow_masks(self, h_mask: int) -> tuple[int, ...]:
        """Per-edge load-sum masks (nodes feeding the edge) under a hypothesis."""
        cached = self._flow_cache.get(h_mask)
        if cached is None:
            energized = self.energized_mask(h_mask)
            live = energized & ~self.z_mask
            flows = []
            for e, v in enumerate(self.edge_children):
                if energized >> self.node_pos[v] & 1:
                    flows.append(self.subtree_mask[v] & live)
                else:
                    flows.append(0)
            cached = tuple(flows)
            self._flow_cache[h_mask] = cached
        return cached

    def pair_profile(self, h1: int, h2: int) -> tuple[int, int, tuple]:
        """Where two hypotheses differ: (voltage-difference node mask,
        forced-difference edge mask, per-edge incomparable load-sum rows)."""
        key = (h1, h2) if h1 <= h2 else (h2, h1)
        cached = self._profile_cache.get(key)
        if cached is None:
            dvolt = self.energized_mask(h1) ^ self.energized_mask(h2)
            f1 = self.flow_masks(h1)
            f2 = self.flow_masks(h2)
            strict = 0
            incomparable = []
            for e in range(self.n_edges):
                a, b = f1[e], f2[e]
                if a == b:
                    continue
                inter = a & b
                if inter == a or inter == b:
                    strict |= 1 << e
                else:
                    incomparable.append((e, a & ~b, b & ~a))
            cached = (dvolt, strict, tuple(incomparable))
            self._profile_cache[key] = cached
        return cached

    def load_witness_masks(self, rows: frozenset) -> tuple[Fraction, ...] | None:
        """Strictly positive loads equalizing each (mask_a, mask_b) sum pair,
        or None; exact LP verdicts are memoized per row set."""
        if rows in self._lp_cache:
            return self._lp_cache[rows]
        coeff_rows = []
        for a, b in rows:
            row = [Fraction(0)] * len(self.load_nodes)
            for i, v in enumerate(self.load_nodes):
                bit = 1 << self.node_pos[v]
                if a & bit:
                    row[i] = Fraction(1)
                elif b & bit:
                    row[i] = Fraction(-1)
            coeff_rows.append(row)
        witness = max_uniform_slack(coeff_rows, len(self.load_nodes))
        result = tuple(witness) if witness is not None else None
        self._lp_cache[rows] = result
        return result

    def distinguishable_masks(self, s_mask: int, m_mask: int, h1: int, h2: int, mode: str) -> bool:
        dvolt, strict, incomparable = self.pair_profile(h1, h2)
        if m_mask & dvolt:
            return True
        if s_mask & strict:
            return True
        if mode == "generic":
            return any(s_mask >> e & 1 for e, _, _ in incomparable)
        rows = frozenset(
            (d1, d2) if d1 <= d2 else (d2, d1)
            for e, d1, d2 in incomparable
            if s_mask >> e & 1
        )
        if not rows:
            return False
        return self.load_witness_masks(rows) is None

    def _distinguishable_streaming(
        self, s_mask: int, m_mask: int, h1: int, h2: int, mode: str
    ) -> bool:
        """Same verdict as distinguishable_masks but touching only measured
        edges and caching nothing per pair; for very large pair sweeps."""
        if m_mask & (self.energized_mask(h1) ^ self.energized_mask(h2)):
            return True
        f1 = self.flow_masks(h1)
        f2 = self.flow_masks(h2)
        rows = set()
        remaining = s_mask
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            e = low.bit_length() - 1
            a, b = f1[e], f2[e]
            if a == b:
                continue
            inter = a & b
            if inter == a or inter == b:
                return True
            if mode == "generic":
                return True
            d1, d2 = a & ~b, b & ~a
            rows.add((d1, d2) if d1 <= d2 else (d2, d1))
        if not rows:
            return False
        return self.load_witness_masks(frozenset(rows)) is None

    def identifiable_masks(
        self,
        s_mask: int,
        m_mask: int,
        mode: str,
        max_outages: int | None,
        pair_cap: int = DEFAULT_PAIR_CAP,
    ) -> tuple[bool, tuple[int, int] | None]:
        hyps = self.hypothesis_masks(max_outages)
        n_pairs = len(hyps) * (len(hyps) - 1) // 2
        if n_pairs > pair_cap:
            raise CombinatorialLimit(
                f"{n_pairs} hypothesis pairs exceed the budget of {pair_cap}; "
                f"limit outages or raise the budget"
            )
        check = (
            self.distinguishable_masks
            if n_pairs <= _PROFILE_CACHE_PAIRS
            else self._distinguishable_streaming
        )
        for i in range(len(hyps)):
            for j in range(i + 1, len(hyps)):
                if not check(s_mask, m_mask, hyps[i], hyps[j], mode):
                    return False, (hyps[i], hyps[j])
        return True, None


def enumerate_hypotheses(
    tree: RadialTree,
    max_outages: int | None = None,
    cap: int = DEFAULT_HYPOTHESIS_CAP,
) -> list[Hypothesis]:
    """All simultaneously-outaged edge sets worth telling apart (antichains of
    the edge ancestry order), plus the empty no-outage baseline, in a
    deterministic (size, child ids) order."""
    oracle = OutageOracle(tree, cap=cap)
    return [oracle.edges_of_mask(m) for m in oracle.hypothesis_masks(max_outages)]


def signature(tree: RadialTree, placement: Placement, h: Iterable[Edge]) -> MeasurementSignature:
    """Noise-free readings a placement would produce under an outage hypothesis."""
    h = frozenset(tuple(e) for e in h)
    sets = measured_sets(tree, placement)
    forest = outage_forest(tree, h)
    energized = forest.energized_nodes
    flow: dict[Edge, frozenset[int]] = {}
    for a, b in sets.flow_edges:
        if b in energized and (a, b) not in h:
            downstream = tree.subtree(b)
            flow[(a, b)] = frozenset(
                v for v in downstream if v in energized and v not in tree.zero_injection
            )
        else:
            flow[(a, b)] = frozenset()
    volt = {v: v in energized for v in sets.voltage_nodes}
    return MeasurementSignature(flow_sig=flow, volt_sig=volt)


def _require_same_measured_sets(sig1: MeasurementSignature, sig2: MeasurementSignature) -> None:
    if set(sig1.flow_sig) != set(sig2.flow_sig) or set(sig1.volt_sig) != set(sig2.volt_sig):
        raise MismatchedMeasuredSets("signatures cover different measured sets")


def distinguishable_generic(sig1: MeasurementSignature, sig2: MeasurementSignature) -> bool:
    """Generic loads: distinct symbolic load sums give distinct readings, so
    any difference in the signature maps distinguishes."""
    _require_same_measured_sets(sig1, sig2)
    return dict(sig1.flow_sig) != dict(sig2.flow_sig) or dict(sig1.volt_sig) != dict(sig2.volt_sig)


def indistinguishable_loads(
    tree: RadialTree, sig1: MeasurementSignature, sig2: MeasurementSignature
) -> dict[int, Fraction] | None:
    """A strictly positive load vector under which both signatures read the
    same numbers, or None when no such vector exists.

    Voltage flags are load-independent, so any voltage difference rules a
    witness out immediately; otherwise each measured edge contributes the
    requirement that its two load sums coincide.
    """
    _require_same_measured_sets(sig1, sig2)
    if dict(sig1.volt_sig) != dict(sig2.volt_sig):
        return None
    load_nodes = [v for v in tree.nodes if v != tree.root and v not in tree.zero_injection]
    pos = {v: i for i, v in enumerate(load_nodes)}
    rows = []
    for e in sig1.flow_sig:
        a, b = sig1.flow_sig[e], sig2.flow_sig[e]
        if a == b:
            continue
        if a < b or b < a:
            return None  # positivity forces a strict sum inequality
        row = [Fraction(0)] * len(load_nodes)
        for v in a - b:
            row[pos[v]] = Fraction(1)
        for v in b - a:
            row[pos[v]] = Fraction(-1)
        rows.append(row)
    witness = max_uniform_slack(rows, len(load_nodes))
    if witness is None:
        return None
    return {v: witness[pos[v]] for v in load_nodes}


def distinguishable_worst_case(
    sig1: MeasurementSignature, sig2: MeasurementSignature, tree: RadialTree
) -> bool:
    """Adversarial loads: distinguishable only if no strictly positive load
    vector makes every measured reading coincide."""
    return indistinguishable_loads(tree, sig1, sig2) is None


def is_outage_identifiable(
    tree: RadialTree,
    placement: Placement,
    mode: str = "worst_case",
    max_outages: int | None = 3,
    cap: int = DEFAULT_HYPOTHESIS_CAP,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> tuple[bool, tuple[Hypothesis, Hypothesis] | None]:
    """Can the placement tell every pair of outage hypotheses apart?

    Returns (verdict, witness); the witness is the first indistinguishable
    pair in (size, child ids) order, so it is minimal and deterministic.
    Raises CombinatorialLimit when the hypothesis count exceeds ``cap`` or
    the pair sweep would exceed ``pair_cap``.
    """
    if mode not in ("generic", "worst_case"):
        raise ValueError(f"mode must be 'generic' or 'worst_case', got {mode!r}")
    oracle = OutageOracle(tree, cap=cap)
    s_mask, m_mask = oracle.placement_masks(placement)
    verdict, pair = oracle.identifiable_masks(s_mask, m_mask, mode, max_outages, pair_cap)
    if verdict:
        return True, None
    h1, h2 = pair
    return False, (oracle.edges_of_mask(h1), oracle.edges_of_mask(h2))


def flow_closure(tree: RadialTree, s_p: Iterable[Edge]) -> frozenset[Edge]:
    """Edges whose flow is known outright or follows from flow conservation.

    At any node carrying at least one known incident flow, knowing all but one
    incident flow determines the last (loads are known).  The bare leaf
    identity (flow equals the leaf's own load under no outage) is deliberately
    not used: with no measurements nothing is inferable.
    """
    known = set()
    for e in s_p:
        e = tuple(e)
        if not tree.is_edge(e):
            raise UnknownEdge(f"unknown edge {e}")
        known.add(e)
    changed = True
    while changed:
        changed = False
        for v in tree.nodes:
            if v == tree.root:
                continue  # the root's grid-side flow is outside the model
            incident = [tree.parent_edge(v)] + [(v, c) for c in tree.children[v]]
            if len(incident) < 2:
                continue
            unknown = [e for e in incident if e not in known]
            if len(unknown) == 1:
                known.add(unknown[0])
                changed = True
    return frozenset(known)


def exhaustive_min_cost(
    tree: RadialTree,
    costs: CostModel,
    feasibility: str = "constraints",
    node_cap: int = 12,
    max_outages: int | None = None,
) -> tuple[Placement, Fraction]:
    """Search every placement for the cheapest feasible one (small instances).

    The search walks the site list as an include/exclude tree with cost
    pruning against the incumbent, which keeps the nominal 2^(2N-2) space
    tractable at the default cap.  Feasibility is either the constraint
    report or full worst-case identifiability.  Ties fall to fewer sensors,
    then lexicographic site order.  Independent of dp_place by construction.
    """
    if feasibility not in ("constraints", "oracle_worst_case"):
        raise ValueError(f"unknown feasibility predicate {feasibility!r}")
    if tree.n_nodes > node_cap:
        raise InstanceTooLarge(f"{tree.n_nodes} nodes exceeds brute-force cap {node_cap}")

    sites: list[tuple[str, object, Fraction]] = []
    for i in tree.nodes:
        sites.append(("node", i, costs.node_cost[i]))
    for e in tree.edges:
        sites.append(("edge", e, costs.line_cost[e]))

    oracle = OutageOracle(tree) if feasibility == "oracle_worst_case" else None
    verdict_cache: dict[tuple[int, int], bool] = {}

    def feasible(node_set: frozenset[int], edge_set: frozenset[Edge]) -> bool:
        candidate = Placement(node_sensors=node_set, line_sensors=edge_set)
        if feasibility == "constraints":
            return check_constraints(tree, candidate).ok
        key = oracle.placement_masks(candidate)
        if key not in verdict_cache:
            verdict_cache[key] = oracle.identifiable_masks(
                key[0], key[1], "worst_case", max_outages
            )[0]
        return verdict_cache[key]

    start = Placement(node_sensors=frozenset(tree.nodes))
    best_key = (
        placement_cost(start, costs),
        start.n_sensors,
        start.sort_key(),
    )
    best = start

    chosen_nodes: list[int] = []
    chosen_edges: list[Edge] = []

    def walk(pos: int, cost: Fraction) -> None:
        nonlocal best, best_key
        if cost > best_key[0]:
            return
        if pos == len(sites):
            nodes = frozenset(chosen_nodes)
            edges = frozenset(chosen_edges)
            candidate = Placement(node_sensors=nodes, line_sensors=edges)
            key = (cost, candidate.n_sensors, candidate.sort_key())
            if key < best_key and feasible(nodes, edges):
                best, best_key = candidate, key
            return
        kind, site, site_cost = sites[pos]
        store = chosen_nodes if kind == "node" else chosen_edges
        store.append(site)
        walk(pos + 1, cost + site_cost)
        store.pop()
        walk(pos + 1, cost)

    walk(0, Fraction(0))
    return best, best_key[0]


def witness_report(
    tree: RadialTree,
    placement: Placement,
    pair: tuple[Hypothesis, Hypothesis],
    mode: str = "worst_case",
) -> dict:
    """Structured account of why two hypotheses collide under a placement."""
    h1, h2 = pair
    sig1 = signature(tree, placement, h1)
    sig2 = signature(tree, placement, h2)
    sets = measured_sets(tree, placement)
    report = {
        "mode": mode,
        "hypotheses": [sorted(map(list, h1)), sorted(map(list, h2))],
        "measured_flow_edges": sorted(map(list, sets.flow_edges)),
        "measured_voltage_nodes": sorted(sets.voltage_nodes),
        "flow_comparison": [
            {
                "edge": list(e),
                "sum_a": sorted(sig1.flow_sig[e]),
                "sum_b": sorted(sig2.flow_sig[e]),
                "equal": sig1.flow_sig[e] == sig2.flow_sig[e],
            }
            for e in sorted(sets.flow_edges)
        ],
        "voltage_comparison": [
            {
                "node": v,
                "energized_a": sig1.volt_sig[v],
                "energized_b": sig2.volt_sig[v],
                "equal": sig1.volt_sig[v] == sig2.volt_sig[v],
            }
            for v in sorted(sets.voltage_nodes)
        ],
    }
    if mode == "worst_case":
        loads = indistinguishable_loads(tree, sig1, sig2)
        report["indistinguishable_loads"] = (
            None if loads is None else {str(v): str(loads[v]) for v in sorted(loads)}
        )
    return report
