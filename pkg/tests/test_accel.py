import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from critideal import _accel
from critideal.graphs import Graph, induced_subgraph, relabel

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def upper_bits(adj, perm):
    n = len(perm)
    # column-major upper triangle, as in graph6
    return [int(adj[perm[a], perm[b]]) for b in range(n) for a in range(b)]


def rank_mod_p(m, p):
    m = [[x % p for x in row] for row in m]
    rank, rows = 0, len(m)
    for c in range(len(m[0]) if m else 0):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c] * inv % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=7), st.randoms(use_true_random=False))
def test_canon_bits_backends_agree(g, rnd):
    adj = g.matrix()
    b_np, p_np = _accel.canon_bits(adj, use_numba=False)
    # the returned permutation reproduces the bits
    assert list(b_np) == upper_bits(adj, list(p_np))
    perm = list(range(g.n))
    rnd.shuffle(perm)
    b_rel, _ = _accel.canon_bits(relabel(g, perm).matrix(), use_numba=False)
    assert list(b_rel) == list(b_np)
    if _accel.HAVE_NUMBA:
        b_nb, p_nb = _accel.canon_bits(adj, use_numba=True)
        assert list(b_nb) == list(b_np)
        assert list(b_nb) == upper_bits(adj, list(p_nb))


def _embed_args(pat, host):
    pdeg, hdeg = pat.degrees(), host.degrees()
    order = sorted(range(pat.n), key=lambda v: (-pdeg[v], v))
    degmask = [sum(1 << w for w in range(host.n) if hdeg[w] >= pdeg[v]) for v in range(pat.n)]
    return pat.adj, order, host.adj, degmask


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=9), st.data())
def test_embed_backends_agree(host, data):
    k = data.draw(st.integers(1, min(host.n, 5)))
    if data.draw(st.booleans()):
        sub = data.draw(st.lists(st.integers(0, host.n - 1), min_size=k, max_size=k, unique=True))
        pat = induced_subgraph(host, sorted(sub))
    else:
        pat = data.draw(graphs(min_n=k, max_n=k))
    args = _embed_args(pat, host)
    got = _accel.embed(*args, use_numba=False)
    if got is not None:
        assert len(set(got)) == pat.n
        for a in range(pat.n):
            for b in range(a + 1, pat.n):
                assert pat.has_edge(a, b) == host.has_edge(got[a], got[b])
    if _accel.HAVE_NUMBA:
        nb = _accel.embed(*args, use_numba=True)
        assert (nb is None) == (got is None)


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=6), st.sampled_from([2, 3, 5]), st.data())
def test_rank_scan_backends_agree(g, p, data):
    i = data.draw(st.integers(1, g.n))
    pts = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=g.n,
                                               max_size=g.n), min_size=1, max_size=30)),
                   dtype=np.int64)
    adj = g.matrix()
    expect = -1
    for k, pt in enumerate(pts):
        m = [[int(pt[r]) if r == c else -int(adj[r, c]) for c in range(g.n)]
             for r in range(g.n)]
        if rank_mod_p(m, p) < i:
            expect = k
            break
    assert _accel.first_rank_deficient(adj, pts, p, i, use_numba=False) == expect
    if _accel.HAVE_NUMBA:
        assert _accel.first_rank_deficient(adj, pts, p, i, use_numba=True) == expect


def test_empty_scan():
    adj = Graph.from_edges(2, [(0, 1)]).matrix()
    assert _accel.first_rank_deficient(adj, np.zeros((0, 2), dtype=np.int64), 3, 1) == -1


@needs_numba
def test_disable_flag():
    code = "from critideal import _accel; print(_accel.backend(), _accel.USE_NUMBA)"
    env = dict(os.environ, CRITIDEAL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out[1] == "False"
    env["CRITIDEAL_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out[1] == "True"
