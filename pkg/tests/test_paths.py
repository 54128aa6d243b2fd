import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import oracle_table
from fibercount.errors import NotGraphicalError
from fibercount.graph import (
    CovariateAssignment,
    DegreeDistribution,
    Graph,
    degree_distribution,
    degree_mixing_matrix,
    dmm_from_entries,
    mixing_matrix,
    trim_dmm,
)
from fibercount.oracle import decode_key
from fibercount.paths import (
    EdgePath,
    InfeasibleError,
    degree_mixing_path,
    edge_count_path,
    havel_hakimi_path,
    is_graphical,
    mixing_path,
    verify_path,
)


def _final(path):
    return Graph(path.n, path.ordered_edges)


def test_edge_count_paths():
    assert edge_count_path(4, 0).ordered_edges == []
    assert edge_count_path(4, 3).ordered_edges == [(0, 1), (0, 2), (0, 3)]
    assert sorted(edge_count_path(3, 3).ordered_edges) == [(0, 1), (0, 2), (1, 2)]
    assert verify_path(edge_count_path(5, 4))


def test_havel_hakimi_small():
    assert len(havel_hakimi_path(DegreeDistribution((4,)))) == 0
    p = havel_hakimi_path(DegreeDistribution((1, 2)))
    assert len(p) == 1
    assert degree_distribution(_final(p)).as_dict() == {0: 1, 1: 2}
    star = havel_hakimi_path(DegreeDistribution((0, 3, 0, 1)))
    hub = [v for v in range(4) if sum(v in e for e in star.ordered_edges) == 3]
    assert len(star) == 3 and len(hub) == 1


def test_havel_hakimi_rejects():
    with pytest.raises(NotGraphicalError):
        havel_hakimi_path(DegreeDistribution((0, 1)))  # odd stub total
    with pytest.raises(NotGraphicalError):
        havel_hakimi_path(DegreeDistribution.from_sequence([3, 3, 1, 1]))


def test_mixing_paths():
    a = CovariateAssignment((1, 1, 2, 2))
    assert len(mixing_path(a, np.zeros((2, 2), dtype=int))) == 0
    p = mixing_path(a, np.array([[0, 1], [1, 0]]))
    (u, v), = p.ordered_edges
    assert {a.labels[u], a.labels[v]} == {1, 2}
    a3 = CovariateAssignment((1, 1, 1, 2), 2)
    p = mixing_path(a3, np.array([[3, 0], [0, 0]]))
    assert sorted(p.ordered_edges) == [(0, 1), (0, 2), (1, 2)]
    with pytest.raises(InfeasibleError):
        mixing_path(a, np.array([[2, 0], [0, 0]]))


def test_degree_mixing_paths():
    assert len(degree_mixing_path(np.zeros((1, 1), dtype=int), 3)) == 0
    assert degree_mixing_path(dmm_from_entries([(1, 1, 1)]), 2).ordered_edges == [(0, 1)]
    tri = degree_mixing_path(dmm_from_entries([(2, 2, 3)]), 3)
    assert sorted(tri.ordered_edges) == [(0, 1), (0, 2), (1, 2)]


def test_verify_path_flags_repeats():
    bad = EdgePath(3, [(0, 1), (1, 0)], "edges", target=2)
    assert not verify_path(bad)
    assert verify_path(havel_hakimi_path(DegreeDistribution((1, 2, 1))))


@pytest.mark.parametrize("n", range(1, 8))
def test_havel_hakimi_agrees_with_erdos_gallai(n):
    for seq in itertools.combinations_with_replacement(range(n), n):
        D = DegreeDistribution.from_sequence(list(seq))
        graphical = is_graphical(list(seq))
        try:
            path = havel_hakimi_path(D)
        except NotGraphicalError:
            assert not graphical, seq
        else:
            assert graphical, seq
            assert verify_path(path)
            assert degree_distribution(_final(path)) == D


@pytest.mark.parametrize("n", range(1, 8))
def test_degree_mixing_path_realizes_every_graphical_dmm(n):
    for key in oracle_table(n, "degree_mixing").counts:
        dmm = decode_key("degree_mixing", key, n)
        path = degree_mixing_path(dmm, n)
        assert verify_path(path)
        assert np.array_equal(trim_dmm(degree_mixing_matrix(_final(path))), trim_dmm(dmm))


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n * (n - 1) // 2))))
def test_edge_paths_prefix_property(nx):
    n, x = nx
    p = edge_count_path(n, x)
    assert len(p) == x and verify_path(p)


@given(st.integers(2, 8), st.data())
def test_mixing_path_hits_random_targets(n, data):
    labels = tuple(data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n)))
    a = CovariateAssignment(labels, 3)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(n, [p for p, k in zip(pairs, mask) if k])
    target = mixing_matrix(g, a)
    path = mixing_path(a, target)
    assert np.array_equal(mixing_matrix(_final(path), a), target)
