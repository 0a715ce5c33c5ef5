"""Critical ideals, their triviality, and the algebraic co-rank.

The generalized Laplacian ``L(G, X)`` has ``x_u`` on the diagonal and ``-1``
at every edge.  ``I_i(G)`` is generated by its ``i``-by-``i`` minors, and
``gamma(G)`` is the number of trivial ``I_i`` (those equal to the whole ring).
Triviality is downward closed in ``i``, so ``gamma`` is the largest trivial
index.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from . import _accel
from .graphs import Graph, CapacityError, MAX_VERTICES, bits_of, delete_vertex, is_connected
from .groebner import (CONSTANT_GCD, EVALUATION, GROEBNER, UNIT, Budget, GroebnerBasis,
                       Verdict, contains_one, evaluation_points, is_trivial,
                       strong_groebner)
from .polyring import Poly, Ring
from .zlinalg import determinantal_divisor, evaluated_laplacian


@dataclass(frozen=True)
class SymbolicLaplacian:
    graph: Graph
    ring: Ring
    entries: tuple[tuple[Poly, ...], ...]


def laplacian_ring(g: Graph, order: str = "degrevlex") -> Ring:
    return _ring(g.n, order)


_RINGS: dict[tuple[int, str], Ring] = {}


def _ring(n: int, order: str) -> Ring:
    key = (n, order)
    if key not in _RINGS:
        _RINGS[key] = Ring(n, order)
    return _RINGS[key]


def symbolic_laplacian(g: Graph, order: str = "degrevlex") -> SymbolicLaplacian:
    ring = _ring(g.n, order)
    minus_one = ring.const(-1)
    rows = []
    for u in range(g.n):
        rows.append(tuple(ring.var(u) if u == v else (minus_one if g.has_edge(u, v) else ring.zero)
                          for v in range(g.n)))
    return SymbolicLaplacian(g, ring, tuple(rows))


class MinorTable:
    """Memoized minors of ``L(G, X)`` by Laplace expansion along the first row.

    Minors are term dicts ``{monomial: coefficient}`` keyed by the row and
    column bitsets of the submatrix.
    """

    def __init__(self, g: Graph, ring: Ring):
        self.g = g
        self.ring = ring
        self.one = ring.order.one
        self.mul = ring.order.mul
        self.var = [ring.var(u).lm for u in range(g.n)]
        self.memo: dict[tuple[int, int], dict] = {}

    def minor(self, rows: int, cols: int) -> dict:
        if rows == 0:
            return {self.one: 1}
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        low = rows & -rows
        r = low.bit_length() - 1
        rest = rows ^ low
        adj = self.g.adj[r]
        acc: dict[int, int] = {}
        j = 0
        c_bits = cols
        while c_bits:
            cbit = c_bits & -c_bits
            c_bits ^= cbit
            c = cbit.bit_length() - 1
            if c == r:
                sub = self.minor(rest, cols ^ cbit)
                sign = -1 if j & 1 else 1
                xm = self.var[r]
                mul = self.mul
                for m, k in sub.items():
                    mm = mul(m, xm)
                    v = acc.get(mm, 0) + sign * k
                    if v:
                        acc[mm] = v
                    else:
                        acc.pop(mm, None)
            elif (adj >> c) & 1:
                sub = self.minor(rest, cols ^ cbit)
                sign = 1 if j & 1 else -1
                for m, k in sub.items():
                    v = acc.get(m, 0) + sign * k
                    if v:
                        acc[m] = v
                    else:
                        acc.pop(m, None)
            j += 1
        self.memo[key] = acc
        return acc

    def poly(self, rows: int, cols: int) -> Poly:
        return self.ring.from_dict(self.minor(rows, cols))


def _check_index(g: Graph, i: int):
    if not 1 <= i <= g.n:
        raise ValueError(f"critical ideal index {i} out of range 1..{g.n}")


def iter_minors(g: Graph, i: int, order: str = "degrevlex",
                table: MinorTable | None = None) -> Iterator[tuple[int, int, Poly]]:
    """All ``i``-minors as ``(rows, cols, poly)``, rows then columns in lexicographic order."""
    _check_index(g, i)
    table = table or MinorTable(g, _ring(g.n, order))
    subsets = [sum(1 << v for v in s) for s in itertools.combinations(range(g.n), i)]
    for rows in subsets:
        for cols in subsets:
            yield rows, cols, table.poly(rows, cols)


def critical_ideal_generators(g: Graph, i: int, order: str = "degrevlex") -> list[Poly]:
    """Nonzero ``i``-minors of ``L(G, X)``, sign-normalized and deduplicated."""
    seen = set()
    out = []
    for _, _, p in iter_minors(g, i, order):
        if p.terms:
            p = p.sign_normalized()
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out


def strong_basis_of_ideal(g: Graph, i: int, budget: Budget | None = None,
                          order: str = "degrevlex") -> GroebnerBasis:
    """Reduced strong Gröbner basis of ``I_i(G)``."""
    gens = critical_ideal_generators(g, i, order)
    if not gens:
        return GroebnerBasis(_ring(g.n, order), [], True, 0)
    return strong_groebner(_preprocess(gens), budget)


def _preprocess(gens: list[Poly]) -> list[Poly]:
    return sorted(gens, key=lambda p: (p.degree(), len(p.terms), p.terms))


# -- evaluation witnesses --------------------------------------------------------

SCAN_PRIMES = (2, 3, 5, 7)
SCAN_LIMIT = 20_000


def _scan_points(n: int, p: int, limit: int, seed: int) -> np.ndarray:
    if p ** n <= limit:
        grids = np.indices((p,) * n).reshape(n, -1).T
        return np.ascontiguousarray(grids, dtype=np.int64)
    rng = np.random.default_rng(seed + p)
    return rng.integers(0, p, size=(limit, n), dtype=np.int64)


def evaluation_witness(g: Graph, i: int, scan: bool = True) -> tuple | None:
    """A point where every ``i``-minor vanishes or shares a factor, if one is found.

    Integer points are checked through the determinantal divisor of the
    evaluated Laplacian; points over small prime fields through its rank.
    Either kind certifies that ``I_i(G)`` is proper.
    """
    for pt in evaluation_points(g.n, g.degrees()):
        d = determinantal_divisor(evaluated_laplacian(g, pt), i)
        if d != 1:
            return ("Z", pt, d)
    if scan and g.n:
        adj = g.matrix()
        for p in SCAN_PRIMES:
            pts = _scan_points(g.n, p, SCAN_LIMIT, seed=g.n * 1000 + i)
            k = _accel.first_rank_deficient(adj, pts, p, i)
            if k >= 0:
                return (f"F{p}", tuple(int(v) for v in pts[k]), p)
    return None


# -- triviality ----------------------------------------------------------------

def decide_critical_ideal(g: Graph, i: int, budget: Budget | None = None,
                          order: str = "degrevlex", scan: bool = True,
                          evaluate: bool = True) -> Verdict:
    """Decide triviality of ``I_i(G)`` and report the stage that settled it.

    With ``evaluate=False`` the evaluation witnesses are skipped, so a proper
    ideal is always certified by the Gröbner basis (useful for cross-checks
    against the Smith normal form, which the witnesses rely on).
    """
    _check_index(g, i)
    w = evaluation_witness(g, i, scan=scan) if evaluate else None
    if w is not None:
        return Verdict(False, EVALUATION, w)
    ring = _ring(g.n, order)
    table = MinorTable(g, ring)
    seen = set()
    gens = []
    const_gcd = 0
    for rows, cols, p in iter_minors(g, i, order, table):
        if not p.terms:
            continue
        if p.is_unit():
            return Verdict(True, UNIT, (bits_of(rows), bits_of(cols)))
        p = p.sign_normalized()
        if p in seen:
            continue
        seen.add(p)
        gens.append(p)
        if p.is_constant():
            const_gcd = gcd(const_gcd, p.constant_value())
    if const_gcd == 1:
        return Verdict(True, CONSTANT_GCD)
    if not gens:
        return Verdict(False, CONSTANT_GCD)
    return Verdict(contains_one(_preprocess(gens), budget), GROEBNER)


def critical_ideal_trivial(g: Graph, i: int, budget: Budget | None = None,
                           evaluate: bool = True) -> bool:
    return decide_critical_ideal(g, i, budget, evaluate=evaluate).trivial


class GammaBudgetExhausted(RuntimeError):
    def __init__(self, graph: Graph, index: int, cause: Exception):
        super().__init__(f"budget exhausted deciding I_{index} of {graph!r}: {cause}")
        self.graph = graph
        self.index = index


@dataclass
class GammaReport:
    gamma: int
    per_index: list[tuple[int, Verdict]] = field(default_factory=list)
    connected: bool = True

    def lines(self) -> list[str]:
        out = []
        for i, v in self.per_index:
            status = "trivial" if v.trivial else "nontrivial"
            out.append(f"I_{i}: {status} via {v.path}")
        return out


def gamma(g: Graph, exhaustive: bool = False, budget: Budget | None = None) -> GammaReport:
    """Algebraic co-rank; stops at the first proper ideal unless ``exhaustive``."""
    from .groebner import BudgetExhausted

    report = GammaReport(0, [], is_connected(g))
    for i in range(1, g.n + 1):
        try:
            v = decide_critical_ideal(g, i, budget)
        except BudgetExhausted as exc:
            raise GammaBudgetExhausted(g, i, exc) from exc
        report.per_index.append((i, v))
        if v.trivial:
            if report.gamma == i - 1:
                report.gamma = i
        elif not exhaustive:
            break
    return report


def gamma_value(g: Graph, budget: Budget | None = None) -> int:
    return gamma(g, budget=budget).gamma


def is_gamma_critical(g: Graph, budget: Budget | None = None) -> bool:
    """Whether deleting any vertex lowers gamma.

    With ``k = gamma(G)``, ``gamma(G - v) < k`` holds exactly when ``I_k(G - v)``
    is proper, so only that one index is decided per deletion.
    """
    if g.n < 2:
        raise ValueError("gamma-criticality needs at least 2 vertices")
    k = gamma_value(g, budget)
    if k == 0:
        return False
    for v in range(g.n):
        h = delete_vertex(g, v)
        if k <= h.n and decide_critical_ideal(h, k, budget).trivial:
            return False
    return True


# -- blow-ups ------------------------------------------------------------------

def _check_weights(g: Graph, d: Sequence[int]):
    if len(d) != g.n:
        raise ValueError(f"weight vector has {len(d)} entries for {g.n} vertices")
    if any(int(x) == 0 for x in d):
        raise ValueError("blow-up weights must be nonzero")


def phi(d: Sequence[int]) -> tuple[int, ...]:
    """0 for positive weights (stable parts), -1 for negative ones (clique parts)."""
    if any(int(x) == 0 for x in d):
        raise ValueError("blow-up weights must be nonzero")
    return tuple(0 if x > 0 else -1 for x in d)


def blowup(g: Graph, d: Sequence[int]) -> Graph:
    """Replace ``u`` by a clique of ``-d[u]`` or a stable set of ``d[u]`` vertices."""
    _check_weights(g, d)
    sizes = [abs(int(x)) for x in d]
    total = sum(sizes)
    if total > MAX_VERTICES:
        raise CapacityError(f"blow-up has {total} vertices, limit is {MAX_VERTICES}")
    start = list(itertools.accumulate([0] + sizes[:-1]))
    part_mask = [((1 << s) - 1) << st for s, st in zip(sizes, start)]
    rows = []
    for u in range(g.n):
        nbr = 0
        for w in g.neighbors(u):
            nbr |= part_mask[w]
        for k in range(sizes[u]):
            v = start[u] + k
            row = nbr
            if d[u] < 0:
                row |= part_mask[u] & ~(1 << v)
            rows.append(row)
    return Graph(total, tuple(rows))


def evaluation_assignment(d: Sequence[int]) -> dict[int, int]:
    """The part of ``phi(d)`` that the blow-up theorem evaluates.

    Only vertices that are really blown up (``|d_v| >= 2``) are fixed; a
    vertex with ``|d_v| = 1`` is left unchanged by the blow-up and keeps its
    variable.  Evaluating it too is wrong: ``K_2`` with ``d = (1, 1)`` is
    ``K_2`` itself, whose ``I_2 = <x1*x2 - 1>`` is proper, while
    ``L(K_2, (0, 0))`` has unit determinant.
    """
    full = phi(d)
    return {v: full[v] for v, x in enumerate(d) if abs(int(x)) >= 2}


def blowup_ideal_trivial(g: Graph, d: Sequence[int], j: int,
                         budget: Budget | None = None) -> bool:
    """Triviality of ``I_j(G^d)``, read off ``I_j(G)`` evaluated at ``phi(d)``.

    When every vertex is blown up the evaluated ideal is the integer ideal of
    ``j``-minors of ``L(G, phi(d))``, decided by the Smith normal form.
    Otherwise the unevaluated variables remain and the ideal is decided
    symbolically.
    """
    _check_weights(g, d)
    if not 1 <= j <= g.n:
        raise ValueError(f"index {j} out of range 1..{g.n}")
    assign = evaluation_assignment(d)
    if len(assign) == g.n:
        return determinantal_divisor(evaluated_laplacian(g, phi(d)), j) == 1
    gens = [p.substitute(assign) for p in critical_ideal_generators(g, j)]
    gens = [p for p in gens if p.terms]
    if not gens:
        return False
    return is_trivial(gens, budget=budget)


def blowup_divisor(g: Graph, d: Sequence[int], j: int) -> int:
    """``Delta_j`` of ``L(G, phi(d))``; meaningful when every ``|d_v| >= 2``."""
    _check_weights(g, d)
    return determinantal_divisor(evaluated_laplacian(g, phi(d)), j)


def random_weights(n: int, max_abs: int, rng: random.Random) -> list[int]:
    return [rng.choice([-1, 1]) * rng.randint(1, max_abs) for _ in range(n)]
