import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from critideal.graphs import (complete, complete_multipartite, components, disjoint_union,
                              join, path, star)
from critideal.zlinalg import (critical_group, determinantal_divisor, f1, int_det,
                               laplacian, smith_normal_form)


def brute_divisor(m, i):
    rows, cols = len(m), len(m[0])
    g = 0
    for rs in itertools.combinations(range(rows), i):
        for cs in itertools.combinations(range(cols), i):
            g = gcd(g, int_det([[m[r][c] for c in cs] for r in rs]))
    return g


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_laplacian_examples():
    assert laplacian(complete(2)) == [[1, -1], [-1, 1]]
    assert laplacian(complete(3)) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert laplacian(star(3))[0] == [3, -1, -1, -1]


def test_snf_examples():
    res = smith_normal_form(laplacian(complete(4)))
    assert res.rank == 3 and res.factors == (1, 4, 4)
    res = smith_normal_form([[0] * 3] * 3)
    assert res.rank == 0 and res.factors == ()


def test_divisor_examples():
    assert determinantal_divisor(laplacian(complete(4)), 3) == 16
    assert determinantal_divisor(laplacian(complete(5)), 4) == 125
    assert determinantal_divisor([[4, 6], [8, 10]], 1) == 2
    assert determinantal_divisor([[4, 6], [8, 10]], 0) == 1
    with pytest.raises(ValueError):
        determinantal_divisor([[1, 2]], 2)


def test_critical_groups():
    k4 = critical_group(complete(4))
    assert k4.torsion() == (4, 4) and str(k4) == "Z_4 ⊕ Z_4"
    k5 = critical_group(complete(5))
    assert k5.factors == (1, 5, 5, 5) and k5.f1 == 1 and str(k5) == "Z_5 ⊕ Z_5 ⊕ Z_5"
    assert critical_group(star(3)).factors == (1, 1, 1) and f1(star(3)) == 3
    assert f1(join(complete(1), star(3))) == 2
    assert str(critical_group(path(4))) == "0"
    with pytest.raises(ValueError):
        critical_group(disjoint_union(complete(2), complete(2)))


def test_f1_of_dense_examples():
    # K_5 minus a perfect matching on 4 of its vertices; K_6 minus two disjoint edges
    k5m = join(complete(1), complete_multipartite([2, 2]))
    assert f1(k5m) == 2
    k6m = join(complete(2), complete_multipartite([2, 2]))
    assert f1(k6m) == 3


@given(matrices)
def test_divisors_match_brute_force(m):
    res = smith_normal_form(m)
    for i in range(1, min(len(m), len(m[0])) + 1):
        assert res.divisor(i) == brute_divisor(m, i)
    for a, b in zip(res.factors, res.factors[1:]):
        assert b % a == 0


@given(graphs(max_n=8))
def test_laplacian_rank(g):
    lap = laplacian(g)
    assert all(sum(row) == 0 for row in lap)
    if g.n:
        assert smith_normal_form(lap).rank == g.n - len(components(g))


@given(graphs(min_n=2, max_n=7, connected=True))
def test_matrix_tree_consistency(g):
    grp = critical_group(g)
    lap = laplacian(g)
    for v in range(g.n):
        minor = [[lap[r][c] for c in range(g.n) if c != v] for r in range(g.n) if r != v]
        assert int_det(minor) == grp.order


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_int_det_against_numpy(m):
    import numpy as np
    assert int_det(m) == round(np.linalg.det(np.array(m, dtype=float)))
