import pytest

from feederplace import Placement, RadialTree, corpus


@pytest.fixture(scope="session")
def demo9():
    return corpus.demo9()


@pytest.fixture(scope="session")
def demo9_tree(demo9):
    return demo9[0]


@pytest.fixture(scope="session")
def demo9_costs(demo9):
    return demo9[1]


@pytest.fixture(scope="session")
def demo9_placement():
    """The known optimal placement for the bundled nine-node feeder."""
    return Placement(frozenset({1}), frozenset({(3, 6), (3, 7)}))


@pytest.fixture(scope="session")
def demo9_tree_z3(demo9_tree):
    """Same topology with node 3 marked zero-injection."""
    return RadialTree.build(1, demo9_tree.edges, {3})
