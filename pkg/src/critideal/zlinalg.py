"""Exact integer matrix algebra: Smith normal form and critical groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .graphs import Graph, is_connected

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class SnfResult:
    rank: int
    factors: tuple[int, ...]

    def divisor(self, i: int) -> int:
        """Product of the first ``i`` invariant factors (0 past the rank)."""
        if i > self.rank:
            return 0
        out = 1
        for s in self.factors[:i]:
            out *= s
        return out


@dataclass(frozen=True)
class CriticalGroup:
    factors: tuple[int, ...]
    f1: int

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d != 1)

    def __str__(self):
        parts = [f"Z_{d}" for d in self.torsion()]
        return " ⊕ ".join(parts) if parts else "0"


def as_matrix(m) -> IntMatrix:
    return [[int(x) for x in row] for row in m]


def laplacian(g: Graph) -> IntMatrix:
    out = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        out[u][u] = g.degree(u)
        for v in g.neighbors(u):
            out[u][v] = -1
    return out


def evaluated_laplacian(g: Graph, point: Sequence[int]) -> IntMatrix:
    """The generalized Laplacian with ``x_u`` replaced by ``point[u]``."""
    if len(point) != g.n:
        raise ValueError("point length must equal the vertex count")
    out = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        out[u][u] = int(point[u])
        for v in g.neighbors(u):
            out[u][v] = -1
    return out


def smith_normal_form(m) -> SnfResult:
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the trailing block becomes the pivot
        piv = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                v = ai[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        if piv is None:
            break
        _, i, j = piv
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                v = a[i][t]
                if v:
                    q = v // p
                    ai, at = a[i], a[t]
                    for j in range(t, cols):
                        ai[j] -= q * at[j]
                    if ai[t]:
                        done = False
            for j in range(t + 1, cols):
                v = a[t][j]
                if v:
                    q = v // p
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                break
            # a remainder smaller than the pivot survived; move it into place
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # repair the divisibility chain: diag(a, b) ~ diag(gcd, lcm)
    k = len(diag)
    for i in range(k):
        for j in range(i + 1, k):
            x, y = diag[i], diag[j]
            g = gcd(x, y)
            diag[i], diag[j] = g, x // g * y
    return SnfResult(k, tuple(diag))


def determinantal_divisor(m, i: int) -> int:
    """gcd of all i-by-i minors of ``m`` (0 when they all vanish)."""
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if not 0 <= i <= min(rows, cols):
        raise ValueError(f"minor size {i} out of range for a {rows}x{cols} matrix")
    if i == 0:
        return 1
    return smith_normal_form(a).divisor(i)


def critical_group(g: Graph) -> CriticalGroup:
    if not is_connected(g):
        raise ValueError("the critical group is defined for connected graphs")
    snf = smith_normal_form(laplacian(g))
    factors = snf.factors[:g.n - 1]
    return CriticalGroup(factors, sum(1 for d in factors if d == 1))


def f1(g: Graph) -> int:
    return critical_group(g).f1


def int_det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
