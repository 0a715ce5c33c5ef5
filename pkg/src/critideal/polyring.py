"""Multivariate polynomials over the integers.

A monomial is stored as a single Python int whose natural integer order *is*
the ring's monomial order; every exponent occupies an 8-bit field with a
guard bit, so exponents are limited to 127 per variable.  Multiplication,
division and divisibility of monomials are then one or two integer
operations.  Polynomials keep their terms as a tuple of ``(monomial,
coefficient)`` pairs in strictly descending monomial order.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Mapping, Sequence

MAX_EXP = 127


class RingMismatch(ValueError):
    pass


class _DegRevLex:
    name = "degrevlex"

    def __init__(self, n: int):
        self.n = n
        self.shift = 8 * n
        self.fmask = (1 << self.shift) - 1
        self.all = sum(MAX_EXP << (8 * v) for v in range(n))
        self.guard = sum(0x80 << (8 * v) for v in range(n))
        self.one = self.all

    def encode(self, exps: Sequence[int]) -> int:
        if any(e < 0 or e > MAX_EXP for e in exps):
            raise OverflowError("exponents must lie in 0..127")
        return (sum(exps) << self.shift) | sum((MAX_EXP - e) << (8 * v) for v, e in enumerate(exps))

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple(MAX_EXP - ((m >> (8 * v)) & 0xFF) for v in range(self.n))

    def mul(self, a: int, b: int) -> int:
        return a + b - self.all

    def div(self, a: int, b: int) -> int:
        return a - b + self.all

    def divides(self, b: int, a: int) -> bool:
        g = self.guard
        return (((b & self.fmask) | g) - (a & self.fmask)) & g == g

    def degree(self, m: int) -> int:
        return m >> self.shift


class _Lex:
    name = "lex"

    def __init__(self, n: int):
        self.n = n
        self.guard = sum(0x80 << (8 * v) for v in range(n))
        self.one = 0

    def encode(self, exps: Sequence[int]) -> int:
        if any(e < 0 or e > MAX_EXP for e in exps):
            raise OverflowError("exponents must lie in 0..127")
        return sum(e << (8 * (self.n - 1 - v)) for v, e in enumerate(exps))

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (8 * (self.n - 1 - v))) & 0xFF for v in range(self.n))

    def mul(self, a: int, b: int) -> int:
        return a + b

    def div(self, a: int, b: int) -> int:
        return a - b

    def divides(self, b: int, a: int) -> bool:
        g = self.guard
        return ((a | g) - b) & g == g

    def degree(self, m: int) -> int:
        return sum(self.decode(m))


_ORDERS = {"degrevlex": _DegRevLex, "grevlex": _DegRevLex, "lex": _Lex}


class Ring:
    """ℤ[x1, ..., xn] with a fixed monomial order (variables ordered x1 > x2 > ...)."""

    def __init__(self, nvars: int, order: str = "degrevlex", names: Sequence[str] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        if order not in _ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.nvars = nvars
        self.order = _ORDERS[order](nvars)
        self.order_name = self.order.name
        self.names = tuple(names) if names is not None else tuple(f"x{v + 1}" for v in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("one name per variable")

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.nvars == other.nvars
                and self.order_name == other.order_name and self.names == other.names)

    def __hash__(self):
        return hash((self.nvars, self.order_name, self.names))

    def __repr__(self):
        return f"Ring({self.nvars}, {self.order_name!r})"

    # -- constructors --
    def from_dict(self, coeffs: Mapping[int, int]) -> "Poly":
        terms = tuple(sorted(((m, c) for m, c in coeffs.items() if c), reverse=True))
        return Poly(self, terms)

    def from_exponents(self, coeffs: Mapping[tuple[int, ...], int]) -> "Poly":
        enc = self.order.encode
        d: dict[int, int] = {}
        for e, c in coeffs.items():
            m = enc(e)
            d[m] = d.get(m, 0) + c
        return self.from_dict(d)

    def const(self, c: int) -> "Poly":
        return Poly(self, ((self.order.one, c),) if c else ())

    @property
    def zero(self) -> "Poly":
        return Poly(self, ())

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def var(self, v: int) -> "Poly":
        """The variable with 0-based index ``v``."""
        e = [0] * self.nvars
        e[v] = 1
        return Poly(self, ((self.order.encode(e), 1),))

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in range(self.nvars)]

    def monomial(self, exps: Sequence[int]) -> int:
        return self.order.encode(exps)

    def with_order(self, order: str) -> "Ring":
        return Ring(self.nvars, order, self.names)

    def convert(self, p: "Poly") -> "Poly":
        """Re-express ``p`` (same variables) in this ring's order."""
        if p.ring.nvars != self.nvars:
            raise RingMismatch("variable counts differ")
        dec = p.ring.order.decode
        return self.from_exponents({dec(m): c for m, c in p.terms})

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()


class Poly:
    """Immutable polynomial; ``terms`` is a tuple of ``(monomial, coefficient)``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _check(self, other: "Poly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic --
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return self.ring.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        if self.degree() + other.degree() > MAX_EXP:
            self._check_product(other)
        mul = self.ring.order.mul
        d: dict[int, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return self.ring.from_dict(d)

    __rmul__ = __mul__

    def _check_product(self, other: "Poly"):
        decode = self.ring.order.decode
        top = [max(col) for col in zip(*(decode(m) for m, _ in self.terms))]
        top2 = [max(col) for col in zip(*(decode(m) for m, _ in other.terms))]
        if any(a + b > MAX_EXP for a, b in zip(top, top2)):
            raise OverflowError(f"product has an exponent above {MAX_EXP}")

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int, mono: int | None = None) -> "Poly":
        """``c * mono * self``."""
        if c == 0:
            return self.ring.zero
        if mono is None:
            return Poly(self.ring, tuple((m, c * a) for m, a in self.terms))
        mul = self.ring.order.mul
        return Poly(self.ring, tuple((mul(m, mono), c * a) for m, a in self.terms))

    # -- comparison --
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == self.ring.order.one)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[0][1] if self.terms else 0

    def is_unit(self) -> bool:
        return self.is_constant() and self.terms and abs(self.terms[0][1]) == 1

    @property
    def lm(self) -> int:
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def degree(self) -> int:
        deg = self.ring.order.degree
        return max((deg(m) for m, _ in self.terms), default=-1)

    def exponents(self) -> list[tuple[tuple[int, ...], int]]:
        dec = self.ring.order.decode
        return [(dec(m), c) for m, c in self.terms]

    def variables(self) -> set[int]:
        out = set()
        for e, _ in self.exponents():
            out.update(v for v, k in enumerate(e) if k)
        return out

    def content(self) -> int:
        g = 0
        for _, c in self.terms:
            g = gcd(g, c)
        return g

    def sign_normalized(self) -> "Poly":
        """``self`` or ``-self``, whichever has a positive leading coefficient."""
        if self.terms and self.terms[0][1] < 0:
            return -self
        return self

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        total = 0
        for e, c in self.exponents():
            t = c
            for v, k in enumerate(e):
                if k:
                    t *= point[v] ** k
            total += t
        return total

    def substitute(self, values: Mapping[int, int]) -> "Poly":
        """Replace ``x_v`` by the integer ``values[v]``; other variables stay."""
        ring = self.ring
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.exponents():
            e = list(e)
            for v, a in values.items():
                if e[v]:
                    c *= a ** e[v]
                    e[v] = 0
            if c:
                key = tuple(e)
                out[key] = out.get(key, 0) + c
        return ring.from_exponents(out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    parts = []
    for e, c in p.exponents():
        factors = []
        for v, k in enumerate(e):
            if k == 1:
                factors.append(names[v])
            elif k > 1:
                factors.append(f"{names[v]}^{k}")
        mono = "*".join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.index = {n: v for v, n in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            p = p ** val
        return p

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.index:
                raise ValueError(f"unknown variable {val!r}")
            return self.ring.var(self.index[val])
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        raise ValueError(f"unexpected token {val!r}")


def symbolic_determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant by dynamic programming over column subsets."""
    k = len(matrix)
    if any(len(row) != k for row in matrix):
        raise ValueError("matrix must be square")
    if k == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    # dets[S]: determinant of rows 0..|S|-1 restricted to column set S
    dets: dict[int, Poly] = {0: ring.one}
    for r in range(k):
        nxt: dict[int, Poly] = {}
        for s, d in dets.items():
            if not d.terms:
                continue
            for c in range(k):
                if (s >> c) & 1:
                    continue
                entry = matrix[r][c]
                if not entry.terms:
                    continue
                above = (s >> (c + 1)).bit_count()
                term = entry * d
                if above & 1:
                    term = -term
                t = s | (1 << c)
                nxt[t] = nxt[t] + term if t in nxt else term
        dets = nxt
    return dets.get((1 << k) - 1, ring.zero)


def int_gcd(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g
