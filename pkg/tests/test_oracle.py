import numpy as np
import pytest
from hypothesis import given, settings

from sccheck.errors import GraphDomainError
from sccheck.graph import Graph
from sccheck.oracle import forward_closure, in_same_scc, is_scc, is_subscc, scc_oracle, transitive_closure
from sccheck.partition import SccPartition

from .strategies import graphs


def test_examples():
    g = Graph.from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)])
    assert scc_oracle(g) == SccPartition([[0, 1], [2, 3]])
    assert in_same_scc(g, 2, 3)
    assert not in_same_scc(g, 1, 2)
    assert is_scc(g, {2, 3})
    assert not is_scc(g, {0, 1, 2, 3})
    assert is_subscc(g, {0})
    assert not is_subscc(g, {1, 2})


def test_empty_graph():
    g = Graph.from_edges(0, [])
    assert scc_oracle(g) == SccPartition([])
    assert transitive_closure(g).shape == (0, 0)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_closures_agree(g):
    matrix = transitive_closure(g)
    for x, reached in enumerate(forward_closure(g)):
        assert set(np.flatnonzero(matrix[x]).tolist()) == reached


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_oracle_is_a_partition_of_sccs(g):
    partition = scc_oracle(g)
    partition.validate(g.vertex_count)
    for component in partition:
        assert is_scc(g, component)


class TestPartition:
    def test_canonical_form(self):
        p = SccPartition([{3, 1}, {0}, [2]])
        assert p.components == ((0,), (1, 3), (2,))
        assert p.lines() == ["0", "1 3", "2"]
        assert p.component_of() == {0: 0, 1: 1, 3: 1, 2: 2}
        assert p == SccPartition([[2], [0], [3, 1]])

    def test_relabel(self):
        assert SccPartition([[0, 1], [2]]).relabel([10, 20, 5]) == SccPartition([[5], [10, 20]])

    @pytest.mark.parametrize(
        "components,n",
        [([[0], [0]], 1), ([[0]], 2), ([[0, 5]], 2), ([[]], 0)],
    )
    def test_validate_rejects(self, components, n):
        with pytest.raises(GraphDomainError):
            SccPartition(components).validate(n)
