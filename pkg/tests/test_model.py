import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feederplace import (
    CostModel,
    DanglingEdge,
    DuplicateId,
    FeederFormatError,
    InvalidParameter,
    NegativeCost,
    NotATree,
    Placement,
    RadialTree,
    RootHasZeroInjection,
    UnknownEdge,
    UnknownNode,
    export_dot,
    format_cost,
    parse_cost,
    parse_feeder,
    random_radial_tree,
    serialize_feeder,
    validate,
)
from feederplace import corpus


def doc_of(tree, costs, **extra):
    doc = json.loads(serialize_feeder(tree, costs))
    doc.update(extra)
    return doc


class TestParse:
    def test_demo9_structure(self, demo9_tree):
        assert demo9_tree.degree(3) == 4
        assert demo9_tree.children[3] == (5, 6, 7)
        assert demo9_tree.parent[3] == 1
        assert demo9_tree.degree(1) == 3  # one grid edge plus two children
        assert demo9_tree.max_depth == 3

    def test_single_node(self):
        tree, costs = parse_feeder(
            json.dumps({"root": 1, "nodes": [{"id": 1, "node_cost": 2}], "edges": []})
        )
        assert tree.nodes == (1,)
        assert tree.edges == ()
        assert tree.degree(1) == 1

    def test_extra_edge_makes_cycle(self, demo9):
        doc = doc_of(*demo9)
        doc["edges"].append({"from": 4, "to": 5, "line_cost": 1})
        with pytest.raises(NotATree):
            parse_feeder(json.dumps(doc))

    def test_duplicate_id(self, demo9):
        doc = doc_of(*demo9)
        doc["nodes"].append({"id": 2, "node_cost": 1})
        with pytest.raises(DuplicateId):
            parse_feeder(json.dumps(doc))

    def test_dangling_edge(self, demo9):
        doc = doc_of(*demo9)
        doc["edges"][0] = {"from": 1, "to": 77, "line_cost": 1}
        with pytest.raises(DanglingEdge):
            parse_feeder(json.dumps(doc))

    def test_root_zero_injection_rejected(self, demo9):
        doc = doc_of(*demo9)
        doc["nodes"][0]["zero_injection"] = True
        with pytest.raises(RootHasZeroInjection):
            parse_feeder(json.dumps(doc))

    def test_negative_cost(self, demo9):
        doc = doc_of(*demo9)
        doc["nodes"][3]["node_cost"] = "-1"
        with pytest.raises(NegativeCost):
            parse_feeder(json.dumps(doc))

    def test_disconnected(self):
        doc = {
            "root": 1,
            "nodes": [{"id": i, "node_cost": 1} for i in (1, 2, 3, 4)],
            "edges": [
                {"from": 1, "to": 2, "line_cost": 1},
                {"from": 3, "to": 4, "line_cost": 1},
            ],
        }
        with pytest.raises(NotATree):
            parse_feeder(json.dumps(doc))

    def test_child_to_parent_edges_reoriented(self):
        doc = {
            "root": 1,
            "nodes": [{"id": i, "node_cost": 1} for i in (1, 2, 3)],
            "edges": [
                {"from": 2, "to": 1, "line_cost": "0.5"},
                {"from": 3, "to": 2, "line_cost": 1},
            ],
        }
        tree, costs = parse_feeder(json.dumps(doc))
        assert tree.edges == ((1, 2), (2, 3))
        assert costs.line_cost[(1, 2)] == Fraction(1, 2)

    def test_decimal_costs_exact(self, demo9_costs):
        assert demo9_costs.line_cost[(3, 6)] == Fraction(3, 10)

    def test_missing_cost_field(self, demo9):
        doc = doc_of(*demo9)
        del doc["nodes"][0]["node_cost"]
        with pytest.raises(FeederFormatError):
            parse_feeder(json.dumps(doc))


class TestCostStrings:
    @pytest.mark.parametrize(
        "text,value",
        [("2", Fraction(2)), ("0.3", Fraction(3, 10)), ("1/3", Fraction(1, 3)), (7, Fraction(7))],
    )
    def test_parse(self, text, value):
        assert parse_cost(text) == value

    def test_float_rejected(self):
        with pytest.raises(FeederFormatError):
            parse_cost(0.3)

    @pytest.mark.parametrize("value", [Fraction(13, 5), Fraction(1, 3), Fraction(4), Fraction(1, 8)])
    def test_round_trip(self, value):
        assert parse_cost(format_cost(value)) == value


class TestValidate:
    def test_valid_instance_empty_report(self, demo9):
        assert validate(*demo9) == ()

    def test_root_zero_injection_reported(self, demo9):
        tree, costs = demo9
        bad = RadialTree(
            root=tree.root,
            parent=tree.parent,
            children=tree.children,
            zero_injection=frozenset({1}),
            depth=tree.depth,
            max_depth=tree.max_depth,
            nodes=tree.nodes,
            edges=tree.edges,
        )
        codes = {v.code for v in validate(bad, costs)}
        assert codes == {"RootHasZeroInjection"}

    def test_missing_cost_reported(self, demo9):
        tree, costs = demo9
        line = dict(costs.line_cost)
        del line[(3, 6)]
        report = validate(tree, CostModel(node_cost=costs.node_cost, line_cost=line))
        assert [v.code for v in report] == ["MissingCost"]
        assert "(3, 6)" in report[0].detail

    def test_stale_depth_reported(self, demo9):
        tree, costs = demo9
        depth = dict(tree.depth)
        depth[9] = 7
        bad = RadialTree(
            root=tree.root,
            parent=tree.parent,
            children=tree.children,
            zero_injection=tree.zero_injection,
            depth=depth,
            max_depth=tree.max_depth,
            nodes=tree.nodes,
            edges=tree.edges,
        )
        assert any(v.code == "BadDepth" for v in validate(bad, costs))


class TestRandomTree:
    def test_single_node(self):
        tree = random_radial_tree(1, seed=0)
        assert tree.nodes == (1,)

    def test_no_zero_injection_when_fraction_zero(self):
        tree = random_radial_tree(9, seed=5, z_fraction=0.0)
        assert tree.zero_injection == frozenset()

    def test_deterministic(self):
        a = random_radial_tree(12, seed=42, z_fraction=0.25)
        b = random_radial_tree(12, seed=42, z_fraction=0.25)
        assert a == b

    def test_zero_injection_count(self):
        tree = random_radial_tree(21, seed=3, z_fraction=0.3)
        assert len(tree.zero_injection) == int(0.3 * 20)

    @pytest.mark.parametrize("kwargs", [dict(n=0, seed=1), dict(n=5, seed=1, max_children=0),
                                        dict(n=5, seed=1, z_fraction=1.0)])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(InvalidParameter):
            random_radial_tree(**kwargs)

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=2**32),
           st.integers(min_value=1, max_value=5), st.floats(min_value=0.0, max_value=0.9))
    @settings(max_examples=60, deadline=None)
    def test_always_validates_clean(self, n, seed, max_children, z_fraction):
        tree = random_radial_tree(n, seed=seed, max_children=max_children, z_fraction=z_fraction)
        costs = CostModel.uniform(tree, 2, 1)
        assert validate(tree, costs) == ()
        assert all(len(tree.children[v]) <= max_children for v in tree.nodes)


class TestStructuralInvariants:
    @given(st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=60, deadline=None)
    def test_depth_and_child_count(self, n, seed):
        tree = random_radial_tree(n, seed=seed)
        for i in tree.nodes:
            if i != tree.root:
                assert tree.depth[i] == 1 + tree.depth[tree.parent[i]]
        assert sum(len(tree.children[i]) for i in tree.nodes) == n - 1
        assert tree.max_depth == max(tree.depth.values())

    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=2**32),
           st.floats(min_value=0.0, max_value=0.9))
    @settings(max_examples=40, deadline=None)
    def test_serialize_parse_round_trip(self, n, seed, z_fraction):
        tree = random_radial_tree(n, seed=seed, z_fraction=z_fraction)
        rng_costs = CostModel(
            node_cost={i: Fraction(i % 7 + 1, 3) for i in tree.nodes},
            line_cost={e: Fraction(e[1] % 5, 4) for e in tree.edges},
        )
        back_tree, back_costs = parse_feeder(serialize_feeder(tree, rng_costs))
        assert back_tree == tree
        assert dict(back_costs.node_cost) == dict(rng_costs.node_cost)
        assert dict(back_costs.line_cost) == dict(rng_costs.line_cost)

    def test_corpus_round_trip(self):
        for name in corpus.BUNDLED:
            tree, costs = corpus.load(name)
            back = parse_feeder(serialize_feeder(tree, costs))
            assert back == (tree, costs)


class TestExportDot:
    def test_sensor_styling(self, demo9_tree, demo9_placement):
        dot = export_dot(demo9_tree, demo9_placement)
        assert "1 [color=red" in dot
        assert dot.count("color=green") == 2
        assert "3 -> 6 [color=green" in dot

    def test_empty_placement_no_styling(self, demo9_tree):
        dot = export_dot(demo9_tree, Placement())
        assert "color" not in dot
        assert dot.count("->") == 8

    def test_wrong_orientation_rejected(self, demo9_tree):
        with pytest.raises(UnknownEdge):
            export_dot(demo9_tree, Placement(frozenset(), frozenset({(9, 6)})))

    def test_unknown_node_rejected(self, demo9_tree):
        with pytest.raises(UnknownNode):
            export_dot(demo9_tree, Placement(frozenset({99}), frozenset()))
