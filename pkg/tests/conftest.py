import pytest

from sweedler.constructions import normalized_quotient
from sweedler.gallery import (
    Quiver,
    build_path_coalgebra,
    complete_quiver,
)
from sweedler.graphs import build_graph_bialgebra
from sweedler.trees import build_tree_bialgebra


@pytest.fixture(scope="session")
def single_edge_quiver():
    return Quiver(("v", "w"), (("e", "v", "w"),))


@pytest.fixture(scope="session")
def single_edge_paths(single_edge_quiver):
    return build_path_coalgebra(single_edge_quiver, 4)


@pytest.fixture(scope="session")
def two_vertex_complete_paths():
    return build_path_coalgebra(complete_quiver(("0", "1")), 5)


@pytest.fixture(scope="session")
def trees_sym4():
    return build_tree_bialgebra(4, 4, "s")


@pytest.fixture(scope="session")
def trees_planar4():
    return build_tree_bialgebra(4, 4, "p")


@pytest.fixture(scope="session")
def trees_sym4_normalized(trees_sym4):
    return normalized_quotient(trees_sym4)


@pytest.fixture(scope="session")
def graphs_c33():
    return build_graph_bialgebra(3, 3, 3, connected=True)


@pytest.fixture(scope="session")
def graphs_n33():
    return build_graph_bialgebra(3, 3, 3, connected=False)
