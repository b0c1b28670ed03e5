"""Shared test machinery: exhaustive tree-shape enumeration and a fast
feasible-placement sweep used by the acceptance suite."""

from functools import lru_cache

from feederplace import Placement, RadialTree, check_constraints
from feederplace.oracle import OutageOracle


@lru_cache(maxsize=None)
def rooted_shapes(n: int) -> tuple:
    """All rooted trees with n nodes up to isomorphism, as canonical nested
    tuples of child shapes.  Counts follow the known sequence
    1, 1, 2, 4, 9, 20, 48, 115 for n = 1..8."""
    if n == 1:
        return ((),)
    out = set()

    def extend(remaining, min_code, acc):
        if remaining == 0:
            out.add(tuple(sorted(acc)))
            return
        for size in range(1, remaining + 1):
            for sub in rooted_shapes(size):
                code = (size, sub)
                if code >= min_code:
                    extend(remaining - size, code, acc + [sub])

    extend(n - 1, (0, ()), [])
    return tuple(sorted(out))


def shape_edges(shape) -> list[tuple[int, int]]:
    """Label a shape with preorder ids, root 1."""
    edges = []
    counter = [1]

    def build(parent_id, sub):
        for child in sub:
            counter[0] += 1
            cid = counter[0]
            edges.append((parent_id, cid))
            build(cid, child)

    build(1, shape)
    return edges


def shape_tree(shape, zero_injection=()) -> RadialTree:
    return RadialTree.build(1, shape_edges(shape), zero_injection)


def sweep_feasible_placements(tree: RadialTree, spot_check_every: int = 997):
    """Enumerate every placement, keep the feasible ones, and collect their
    distinct measured-set classes as (edge-mask, node-mask) pairs.

    Requires the root to carry the smallest node id so edge bit e maps to
    node bit e + 1.  Every ``spot_check_every``-th feasible placement is
    cross-checked against check_constraints to keep the mask arithmetic
    honest.  Returns (oracle, feasible_count, classes).
    """
    oracle = OutageOracle(tree)
    n = len(tree.nodes)
    n_edges = oracle.n_edges
    assert oracle.node_pos[tree.root] == 0
    assert all(oracle.node_pos[v] == e + 1 for e, v in enumerate(oracle.edge_children))

    pe_bit = {v: 1 << e for e, v in enumerate(oracle.edge_children)}
    incident = []
    for v in oracle.nodes:
        mask = pe_bit.get(v, 0)
        for c in tree.children[v]:
            mask |= pe_bit[c]
        incident.append(mask)
    root_children_mask = 0
    for c in tree.children[tree.root]:
        root_children_mask |= pe_bit[c]
    branches = []
    for v in tree.nodes:
        if v != tree.root and tree.degree(v) >= 3:
            cm = 0
            for c in tree.children[v]:
                cm |= pe_bit[c]
            branches.append((cm, tree.degree(v) - 2))
    znodes = [(1 << oracle.node_pos[v], pe_bit[v]) for v in sorted(tree.zero_injection)]

    feasible = 0
    classes = set()
    for x in range(1 << n):
        cov_x = 0
        xm = x
        while xm:
            low = xm & -xm
            cov_x |= incident[low.bit_length() - 1]
            xm ^= low
        required_y = 0
        for nb, pb in znodes:
            if not x & nb:
                required_y |= pb
        for y in range(1 << n_edges):
            if required_y & ~y:
                continue
            coverage = cov_x | y
            if root_children_mask & ~coverage:
                continue
            good = True
            for cm, need in branches:
                if (coverage & cm).bit_count() < need:
                    good = False
                    break
            if not good:
                continue
            feasible += 1
            # measured edges are exactly the covered edges; measured voltages
            # are the sensored nodes plus every line sensor's child end
            classes.add((coverage, x | (y << 1)))
            if feasible % spot_check_every == 0:
                placement = _placement_of(oracle, x, y)
                assert check_constraints(tree, placement).ok
                assert oracle.placement_masks(placement) == (coverage, x | (y << 1))
    return oracle, feasible, classes


def _placement_of(oracle: OutageOracle, x: int, y: int) -> Placement:
    nodes = frozenset(v for i, v in enumerate(oracle.nodes) if x >> i & 1)
    edges = frozenset(
        (oracle.tree.parent[v], v)
        for e, v in enumerate(oracle.edge_children)
        if y >> e & 1
    )
    return Placement(node_sensors=nodes, line_sensors=edges)


def unidentifiable_classes(tree: RadialTree, spot_check_every: int = 997):
    """(feasible placements, distinct measured-set classes, failing classes)
    for the worst-case identifiability sweep over every feasible placement."""
    oracle, feasible, classes = sweep_feasible_placements(tree, spot_check_every)
    fails = []
    for s, m in classes:
        verdict, pair = oracle.identifiable_masks(s, m, "worst_case", None)
        if not verdict:
            fails.append((s, m, oracle.edges_of_mask(pair[0]), oracle.edges_of_mask(pair[1])))
    return feasible, len(classes), fails
