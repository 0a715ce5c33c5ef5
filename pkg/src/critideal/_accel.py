"""Hot combinatorial kernels with a numba path and a pure numpy/Python path.

The numba path is used when numba imports cleanly and the environment
variable ``CRITIDEAL_DISABLE_NUMBA`` is unset (or ``0``).  Both paths take
identical inputs and return identical outputs; ``tests/test_accel.py``
runs them side by side and ``benchmarks/bench_kernels.py`` times them.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None
    njit = None

_DISABLED = os.environ.get("CRITIDEAL_DISABLE_NUMBA", "0") not in ("", "0")
HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# canonical labelling: lexicographically minimal upper-triangle bitstring
# (graph6 column order) over all vertex permutations
# ---------------------------------------------------------------------------

def _canon_bits_py(adj: np.ndarray):
    n = adj.shape[0]
    if n <= 1:
        return np.zeros(0, np.uint8), np.arange(n, dtype=np.int64)
    perms = _all_perms(n)
    ii, jj = _pair_index(n)
    bits = adj[perms[:, ii], perms[:, jj]]
    t = bits.shape[1]
    weights = (np.int64(1) << np.arange(t - 1, -1, -1, dtype=np.int64))
    codes = bits.astype(np.int64) @ weights
    k = int(np.argmin(codes))
    return bits[k].astype(np.uint8), perms[k].astype(np.int64)


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


@lru_cache(maxsize=None)
def _pair_index(n: int):
    ii = [i for j in range(n) for i in range(j)]
    jj = [j for j in range(n) for i in range(j)]
    return np.array(ii, dtype=np.int64), np.array(jj, dtype=np.int64)


def _canon_bits_nb_impl(adj):
    n = adj.shape[0]
    t = n * (n - 1) // 2
    best = np.zeros(t, np.uint8)
    best_perm = np.arange(n)
    k = 0
    for j in range(1, n):
        for i in range(j):
            best[k] = adj[i, j]
            k += 1
    if n <= 1:
        return best, best_perm
    cur = np.zeros(t, np.uint8)
    perm = np.zeros(n, np.int64)
    used = np.zeros(n, np.bool_)
    nxt = np.zeros(n + 1, np.int64)
    # status[j]: prefix of length j compared to best; 0 equal, -1 smaller
    status = np.zeros(n + 1, np.int64)
    j = 0
    while j >= 0:
        if j == n:
            if status[n] < 0:
                for q in range(t):
                    best[q] = cur[q]
                for q in range(n):
                    best_perm[q] = perm[q]
                for q in range(n + 1):
                    status[q] = 0
            j -= 1
            used[perm[j]] = False
            continue
        v = nxt[j]
        while v < n and used[v]:
            v += 1
        if v >= n:
            j -= 1
            if j >= 0:
                used[perm[j]] = False
            continue
        nxt[j] = v + 1
        base = j * (j - 1) // 2
        st = status[j]
        worse = False
        for i in range(j):
            b = adj[perm[i], v]
            cur[base + i] = b
            if st == 0:
                if b < best[base + i]:
                    st = -1
                elif b > best[base + i]:
                    worse = True
                    break
        if worse:
            continue
        perm[j] = v
        used[v] = True
        status[j + 1] = st
        j += 1
        nxt[j] = 0
    return best, best_perm


# ---------------------------------------------------------------------------
# induced subgraph embedding by backtracking over bitset candidates
# ---------------------------------------------------------------------------

def _embed_py(pat, order, host, degmask):
    """Return pattern->host map as a list, or None."""
    k = len(pat)
    n = len(host)
    if k == 0:
        return []
    full = (1 << n) - 1
    mapping = [-1] * k
    cand = [0] * k
    used = 0

    def candidates(d):
        p = order[d]
        c = full & ~used & degmask[p]
        pa = pat[p]
        for e in range(d):
            q = order[e]
            w = mapping[q]
            if (pa >> q) & 1:
                c &= host[w]
            else:
                c &= ~host[w]
        return c

    d = 0
    cand[0] = candidates(0)
    while True:
        p = order[d]
        if mapping[p] >= 0:
            used &= ~(1 << mapping[p])
            mapping[p] = -1
        c = cand[d]
        if c == 0:
            if d == 0:
                return None
            d -= 1
            continue
        low = c & -c
        cand[d] = c ^ low
        mapping[p] = low.bit_length() - 1
        used |= low
        if d == k - 1:
            return mapping
        d += 1
        cand[d] = candidates(d)


def _embed_cands_impl(pat, order, host, degmask, mapping, used, full, d):
    one = np.uint64(1)
    p = order[d]
    c = full & ~used & degmask[p]
    pa = pat[p]
    for e in range(d):
        q = order[e]
        w = mapping[q]
        if (pa >> np.uint64(q)) & one:
            c &= host[w]
        else:
            c &= ~host[w]
    return c


def _embed_nb_impl(pat, order, host, degmask):
    k = pat.shape[0]
    n = host.shape[0]
    mapping = np.full(k, -1, np.int64)
    if k == 0:
        return mapping, True
    one = np.uint64(1)
    zero = np.uint64(0)
    if n == 64:
        full = ~zero
    else:
        full = (one << np.uint64(n)) - one
    cand = np.zeros(k, np.uint64)
    used = zero
    d = 0
    cand[0] = _embed_cands_nb(pat, order, host, degmask, mapping, used, full, 0)
    while True:
        p = order[d]
        if mapping[p] >= 0:
            used &= ~(one << np.uint64(mapping[p]))
            mapping[p] = -1
        c = cand[d]
        if c == zero:
            if d == 0:
                return mapping, False
            d -= 1
            continue
        low = c & (~c + one)
        cand[d] = c ^ low
        v = 0
        t = low
        while t > one:
            t >>= one
            v += 1
        mapping[p] = v
        used |= low
        if d == k - 1:
            return mapping, True
        d += 1
        cand[d] = _embed_cands_nb(pat, order, host, degmask, mapping, used, full, d)


# ---------------------------------------------------------------------------
# rank of L(G, a) over F_p for a batch of evaluation points
# ---------------------------------------------------------------------------

def _first_deficient_py(adj, points, p, i):
    """Index of the first point whose evaluated Laplacian has F_p-rank < i, or -1."""
    n = adj.shape[0]
    inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    base = (-adj.astype(np.int64)) % p
    chunk = 4096
    for start in range(0, len(points), chunk):
        pts = points[start:start + chunk]
        m = np.repeat(base[None, :, :], len(pts), axis=0)
        idx = np.arange(n)
        m[:, idx, idx] = pts % p
        rank = _rank_mod_p_batch(m, p, inv)
        hit = np.nonzero(rank < i)[0]
        if hit.size:
            return start + int(hit[0])
    return -1


def _rank_mod_p_batch(m, p, inv):
    bsz, n, _ = m.shape
    rank = np.zeros(bsz, np.int64)
    rows = np.arange(n)
    for c in range(n):
        eligible = (m[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = eligible[b].argmax(axis=1)
        r = rank[b]
        prow = m[b, piv].copy()
        m[b, piv] = m[b, r]
        prow = (prow * inv[prow[:, c]][:, None]) % p
        m[b, r] = prow
        f = m[b, :, c].copy()
        f[np.arange(len(b)), r] = 0
        m[b] = (m[b] - f[:, :, None] * prow[:, None, :]) % p
        rank[b] += 1
    return rank


def _first_deficient_nb_impl(adj, points, p, i):
    n = adj.shape[0]
    inv = np.zeros(p, np.int64)
    for v in range(1, p):
        for w in range(1, p):
            if (v * w) % p == 1:
                inv[v] = w
    m = np.zeros((n, n), np.int64)
    for t in range(points.shape[0]):
        for r in range(n):
            for c in range(n):
                if r == c:
                    m[r, c] = points[t, r] % p
                else:
                    m[r, c] = (p - adj[r, c]) % p
        rank = 0
        for c in range(n):
            piv = -1
            for r in range(rank, n):
                if m[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for q in range(n):
                    tmp = m[piv, q]
                    m[piv, q] = m[rank, q]
                    m[rank, q] = tmp
            s = inv[m[rank, c]]
            for q in range(n):
                m[rank, q] = (m[rank, q] * s) % p
            for r in range(rank + 1, n):
                f = m[r, c]
                if f != 0:
                    for q in range(n):
                        m[r, q] = (m[r, q] - f * m[rank, q]) % p
            rank += 1
            if rank >= i:
                break
        if rank < i:
            return t
    return -1


if HAVE_NUMBA:
    _canon_bits_nb = njit(cache=True)(_canon_bits_nb_impl)
    _embed_cands_nb = njit(cache=True)(_embed_cands_impl)
    _embed_nb = njit(cache=True)(_embed_nb_impl)
    _first_deficient_nb = njit(cache=True)(_first_deficient_nb_impl)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def canon_bits(adj: np.ndarray, use_numba: bool | None = None):
    """Minimal upper-triangle bit vector and the permutation achieving it.

    ``perm[pos]`` is the original vertex placed at position ``pos``.
    """
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    if _pick(use_numba):
        bits, perm = _canon_bits_nb(adj)
    else:
        bits, perm = _canon_bits_py(adj)
    return bits, perm


def embed(pat, order, host, degmask, use_numba: bool | None = None):
    """Induced embedding of a bitset pattern into a bitset host, or None."""
    if _pick(use_numba):
        mapping, ok = _embed_nb(
            np.array(pat, dtype=np.uint64),
            np.array(order, dtype=np.int64),
            np.array(host, dtype=np.uint64),
            np.array(degmask, dtype=np.uint64),
        )
        return [int(v) for v in mapping] if ok else None
    return _embed_py(list(pat), list(order), list(host), list(degmask))


def first_rank_deficient(adj: np.ndarray, points: np.ndarray, p: int, i: int,
                         use_numba: bool | None = None) -> int:
    """First row of ``points`` at which L(G, point) has rank < i over F_p."""
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    points = np.ascontiguousarray(points, dtype=np.int64)
    if len(points) == 0:
        return -1
    if _pick(use_numba):
        return int(_first_deficient_nb(adj, points, p, i))
    return _first_deficient_py(adj, points, p, i)


def _pick(use_numba):
    if use_numba is None:
        return USE_NUMBA
    return bool(use_numba) and HAVE_NUMBA
