"""Strong Gröbner bases over ℤ and the ideal-triviality decision.

Buchberger's algorithm for a Euclidean coefficient ring: every pair of basis
elements contributes an S-polynomial (lcm of leading terms) and a
G-polynomial (Bézout combination of the leading coefficients).  Reduction
is strong: a term ``c*m`` is rewritten by ``g`` when ``lm(g) | m``; when
``lc(g)`` does not divide ``c`` the coefficient is reduced to its remainder
in ``[0, lc(g))``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .polyring import Poly, Ring, RingMismatch

DEFAULT_MAX_PAIRS = 200_000
DEFAULT_MAX_DEGREE = 40


class BudgetExhausted(RuntimeError):
    """The Gröbner computation hit its pair or degree budget."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self):
        if self.max_pairs < 0:
            raise ValueError("max_pairs must be nonnegative")
        # pair lcms reach twice the element degree; keep exponents inside the packed fields
        if not 1 <= self.max_degree <= 63:
            raise ValueError("max_degree must lie in 1..63")


@dataclass
class GroebnerBasis:
    ring: Ring
    basis: list[Poly]
    complete: bool = True
    pairs_reduced: int = 0

    def contains_unit(self) -> bool:
        return any(p.is_unit() for p in self.basis)

    def reduce(self, p: Poly) -> Poly:
        return reduce(p, self.basis)

    def contains(self, p: Poly) -> bool:
        return reduce(p, self.basis).is_zero()

    def __str__(self):
        return "<" + ", ".join(str(p) for p in self.basis) + ">"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class _Elem:
    __slots__ = ("terms", "lm", "lc", "alive", "idx")

    def __init__(self, terms: tuple, idx: int):
        self.terms = terms
        self.lm = terms[0][0]
        self.lc = terms[0][1]
        self.alive = True
        self.idx = idx


def _reduce_terms(items, basis: Sequence[_Elem], order) -> list:
    """Fully reduce the term mapping ``items`` by ``basis``; returns descending terms."""
    divides = order.divides
    mul = order.mul
    div = order.div
    p = dict(items)
    heap = [-m for m in p]
    heapq.heapify(heap)
    out = []
    while heap:
        m = -heapq.heappop(heap)
        c = p.get(m)
        if not c:
            continue
        best = None
        exact = False
        for g in basis:
            if divides(g.lm, m):
                if c % g.lc == 0:
                    best = g
                    exact = True
                    break
                if best is None or g.lc < best.lc:
                    best = g
        if best is None:
            out.append((m, c))
            del p[m]
            continue
        q = c // best.lc
        if q == 0:
            out.append((m, c))
            del p[m]
            continue
        shift = div(m, best.lm)
        for gm, gc in best.terms:
            mm = mul(gm, shift)
            old = p.get(mm)
            if old is None:
                p[mm] = -q * gc
                heapq.heappush(heap, -mm)
            else:
                nc = old - q * gc
                if nc:
                    p[mm] = nc
                else:
                    del p[mm]
        if not exact and p.get(m):
            heapq.heappush(heap, -m)
    return out


def reduce(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Strong normal form of ``p`` with respect to ``basis``."""
    ring = p.ring
    elems = []
    for k, g in enumerate(basis):
        if g.ring != ring:
            raise RingMismatch("basis and polynomial live in different rings")
        if g.terms:
            g = g.sign_normalized()
            elems.append(_Elem(g.terms, k))
    return Poly(ring, tuple(_reduce_terms(p.terms, elems, ring.order)))


def _lcm_mono(order, a: int, b: int) -> int:
    ea = order.decode(a)
    eb = order.decode(b)
    return order.encode([x if x > y else y for x, y in zip(ea, eb)])


def _coprime_monos(order, a: int, b: int) -> bool:
    return all(not (x and y) for x, y in zip(order.decode(a), order.decode(b)))


def _combine(order, c1: int, m1: int, t1: tuple, c2: int, m2: int, t2: tuple) -> dict:
    """``c1*m1*t1 + c2*m2*t2`` as a term dict."""
    mul = order.mul
    d: dict[int, int] = {}
    if c1:
        for m, c in t1:
            mm = mul(m, m1)
            d[mm] = d.get(mm, 0) + c1 * c
    if c2:
        for m, c in t2:
            mm = mul(m, m2)
            d[mm] = d.get(mm, 0) + c2 * c
    return {m: c for m, c in d.items() if c}


class _Engine:
    def __init__(self, ring: Ring, budget: Budget, stop_on_unit: bool):
        self.ring = ring
        self.order = ring.order
        self.budget = budget
        self.stop_on_unit = stop_on_unit
        self.elems: list[_Elem] = []
        self.pairs: list = []
        self.seq = 0
        self.pairs_reduced = 0
        self.unit_found = False

    def active(self) -> list[_Elem]:
        return [e for e in self.elems if e.alive]

    def insert(self, terms: list, todo: list):
        if terms[0][1] < 0:
            terms = [(m, -c) for m, c in terms]
        terms = tuple(terms)
        order = self.order
        if order.name == "degrevlex":
            top = order.degree(terms[0][0])
        else:  # under lex a tail term may have larger degree than the lead
            top = max(order.degree(m) for m, _ in terms)
        if top > self.budget.max_degree:
            raise BudgetExhausted(
                f"basis element of degree {top} exceeds the "
                f"degree budget {self.budget.max_degree}")
        h = _Elem(terms, len(self.elems))
        if h.lm == order.one and h.lc == 1:
            self.unit_found = True
        divides = order.divides
        for g in self.elems:
            if not g.alive:
                continue
            self._add_pairs(g, h)
            if divides(h.lm, g.lm) and g.lc % h.lc == 0:
                g.alive = False
                todo.append(g.terms)
        self.elems.append(h)

    def _add_pairs(self, g: _Elem, h: _Elem):
        order = self.order
        lcm = _lcm_mono(order, g.lm, h.lm)
        deg = order.degree(lcm)
        a, b = g.lc, h.lc
        coprime_lc = gcd(a, b) == 1
        if not (coprime_lc and _coprime_monos(order, g.lm, h.lm)):
            heapq.heappush(self.pairs, (deg, self.seq, "S", g.idx, h.idx, lcm))
            self.seq += 1
        if a % b and b % a:
            heapq.heappush(self.pairs, (deg, self.seq, "G", g.idx, h.idx, lcm))
            self.seq += 1

    def pair_poly(self, kind: str, i: int, j: int, lcm: int) -> dict:
        f, g = self.elems[i], self.elems[j]
        order = self.order
        mf = order.div(lcm, f.lm)
        mg = order.div(lcm, g.lm)
        a, b = f.lc, g.lc
        if kind == "S":
            c = a * b // gcd(a, b)
            return _combine(order, c // a, mf, f.terms, -(c // b), mg, g.terms)
        _, u, v = _xgcd(a, b)
        return _combine(order, u, mf, f.terms, v, mg, g.terms)

    def run(self, gens: Sequence[Poly]):
        todo = [p.terms for p in sorted(gens, key=lambda p: (p.degree(), len(p.terms)), reverse=True)]
        order = self.order
        while True:
            if self.unit_found and self.stop_on_unit:
                return
            if todo:
                items = todo.pop()
            elif self.pairs:
                deg, _, kind, i, j, lcm = heapq.heappop(self.pairs)
                if not (self.elems[i].alive and self.elems[j].alive):
                    continue
                self.pairs_reduced += 1
                if self.pairs_reduced > self.budget.max_pairs:
                    raise BudgetExhausted(
                        f"more than {self.budget.max_pairs} pair reductions")
                items = self.pair_poly(kind, i, j, lcm)
            else:
                return
            if not items:
                continue
            r = _reduce_terms(items if isinstance(items, dict) else dict(items),
                              self.active(), order)
            if r:
                self.insert(r, todo)

    def interreduced(self) -> list[Poly]:
        order = self.order
        divides = order.divides
        elems = self.active()
        if self.unit_found:
            return [self.ring.one]
        # minimal strong basis: drop leads strongly divisible by another lead
        keep: list[_Elem] = []
        for g in sorted(elems, key=lambda e: (e.lm, e.lc)):
            if any(divides(h.lm, g.lm) and g.lc % h.lc == 0 for h in keep):
                continue
            keep.append(g)
        out = []
        for g in keep:
            others = [h for h in keep if h is not g]
            tail = _reduce_terms(dict(g.terms[1:]), others, order)
            out.append(Poly(self.ring, ((g.lm, g.lc),) + tuple(tail)))
        out.sort(key=lambda p: (p.lm, p.lc))
        return out


def _common_ring(gens: Sequence[Poly]) -> Ring:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for p in gens:
        if p.ring != ring:
            raise RingMismatch("generators live in different rings")
    return ring


def strong_groebner(gens: Sequence[Poly], budget: Budget | None = None) -> GroebnerBasis:
    """Reduced strong Gröbner basis of the ideal generated by ``gens``."""
    ring = _common_ring(gens)
    gens = [p for p in gens if p.terms]
    if not gens:
        return GroebnerBasis(ring, [], True, 0)
    eng = _Engine(ring, budget or Budget(), stop_on_unit=False)
    eng.run(gens)
    return GroebnerBasis(ring, eng.interreduced(), True, eng.pairs_reduced)


def contains_one(gens: Sequence[Poly], budget: Budget | None = None) -> bool:
    """Whether 1 lies in the ideal, stopping as soon as a unit appears."""
    ring = _common_ring(gens)
    gens = [p for p in gens if p.terms]
    if not gens:
        return False
    eng = _Engine(ring, budget or Budget(), stop_on_unit=True)
    eng.run(gens)
    return eng.unit_found


# -- triviality ----------------------------------------------------------------

UNIT = "unit-minor"
CONSTANT_GCD = "constant-gcd"
EVALUATION = "evaluation"
GROEBNER = "groebner"


@dataclass(frozen=True)
class Verdict:
    trivial: bool
    path: str
    witness: tuple | None = None


def evaluation_points(nvars: int, degree_vector: Sequence[int] | None = None,
                      count: int = 16, seed: int = 20130907) -> list[tuple[int, ...]]:
    """All zeros, all -1, the degree vector (when given) and ``count`` points in [-3,3]^n."""
    pts = [tuple([0] * nvars), tuple([-1] * nvars)]
    if degree_vector is not None:
        pts.append(tuple(degree_vector))
    rng = random.Random(seed)
    for _ in range(count):
        pts.append(tuple(rng.randint(-3, 3) for _ in range(nvars)))
    return pts


def decide_trivial(gens: Sequence[Poly], degree_vector: Sequence[int] | None = None,
                   budget: Budget | None = None) -> Verdict:
    """Decide whether 1 lies in the ideal, reporting which stage settled it."""
    ring = _common_ring(gens)
    gens = [p for p in gens if p.terms]
    if not gens:
        return Verdict(False, CONSTANT_GCD)
    for p in gens:
        if p.is_unit():
            return Verdict(True, UNIT)
    g = 0
    for p in gens:
        if p.is_constant():
            g = gcd(g, p.constant_value())
    if g == 1:
        return Verdict(True, CONSTANT_GCD)
    for pt in evaluation_points(ring.nvars, degree_vector):
        h = 0
        for p in gens:
            h = gcd(h, p.evaluate(pt))
            if h == 1:
                break
        if h != 1:
            return Verdict(False, EVALUATION, pt)
    return Verdict(contains_one(gens, budget), GROEBNER)


def is_trivial(gens: Sequence[Poly], degree_vector: Sequence[int] | None = None,
               budget: Budget | None = None) -> bool:
    return decide_trivial(gens, degree_vector, budget).trivial


def ideal_equals(a: Sequence[Poly], b: Sequence[Poly], budget: Budget | None = None) -> bool:
    ga = strong_groebner(a, budget)
    gb = strong_groebner(b, budget)
    return all(gb.contains(p) for p in a if p.terms) and all(ga.contains(p) for p in b if p.terms)
