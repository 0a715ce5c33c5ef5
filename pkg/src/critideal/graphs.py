"""Simple graphs on at most 64 vertices stored as adjacency bitsets.

Vertices are ``0..n-1``.  ``Graph.adj[v]`` is an int whose bit ``u`` is set
when ``uv`` is an edge.  Graph values are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _accel

MAX_VERTICES = 64
CANON_MAX = 9
ENUM_MAX = 7


class CapacityError(ValueError):
    """A graph or graph operation exceeds a fixed size cap."""


class Graph6Error(ValueError):
    """Malformed graph6 text; ``position`` is the offending character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {u} has neighbours outside 0..{self.n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n > MAX_VERTICES:
            raise CapacityError(f"graphs are limited to {MAX_VERTICES} vertices, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix)
        n = a.shape[0]
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits_of(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits_of(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, graph6={write_graph6(self)!r})"


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def vertex_set(vertices: Iterable[int]) -> int:
    s = 0
    for v in vertices:
        s |= 1 << v
    return s


# -- constructors ------------------------------------------------------------

def _check_size(n: int):
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n > MAX_VERTICES:
        raise CapacityError(f"graphs are limited to {MAX_VERTICES} vertices, got {n}")


def complete(n: int) -> Graph:
    _check_size(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def trivial_graph(n: int) -> Graph:
    _check_size(n)
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    _check_size(n)
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    _check_size(n)
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete_multipartite(parts: Sequence[int]) -> Graph:
    if not parts:
        raise ValueError("need at least one part")
    if any(p < 0 for p in parts):
        raise ValueError("part sizes must be nonnegative")
    n = sum(parts)
    _check_size(n)
    label = [k for k, p in enumerate(parts) for _ in range(p)]
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                if label[u] != label[v]])


def star(k: int) -> Graph:
    return join(complete(1), trivial_graph(k))


def wheel(k: int) -> Graph:
    """Hub (vertex 0) joined to a k-cycle."""
    return join(complete(1), cycle(k))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_size(g.n + h.n)
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    _check_size(g.n + h.n)
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    return Graph(g.n + h.n, tuple(row | hmask for row in g.adj)
                 + tuple((row << g.n) | gmask for row in h.adj))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is ``perm[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(perm)}
    return Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])


# -- induced subgraphs -------------------------------------------------------

def induced_subgraph(g: Graph, s) -> Graph:
    """Subgraph induced on ``s`` (a bitset or an iterable of vertices)."""
    if not isinstance(s, int):
        s = vertex_set(s)
    if s < 0 or s >> g.n:
        raise ValueError(f"vertex set {s:#x} not contained in 0..{g.n - 1}")
    keep = bits_of(s)
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in bits_of(g.adj[v] & s):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    return induced_subgraph(g, ((1 << g.n) - 1) & ~(1 << v))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def components(g: Graph) -> list[int]:
    left = (1 << g.n) - 1
    out = []
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        out.append(comp)
        left &= ~comp
    return out


def _max_clique(adj: Sequence[int], cand: int) -> int:
    # branch and bound with a popcount bound
    best = 0

    def expand(size, p):
        nonlocal best
        if p == 0:
            best = max(best, size)
            return
        while p:
            if size + p.bit_count() <= best:
                return
            low = p & -p
            v = low.bit_length() - 1
            expand(size + 1, p & adj[v])
            p ^= low

    expand(0, cand)
    return best


def clique_number(g: Graph) -> int:
    return _max_clique(g.adj, (1 << g.n) - 1)


def stability_number(g: Graph) -> int:
    return clique_number(complement(g))


# -- induced subgraph isomorphism -------------------------------------------

def contains_induced(pattern: Graph, host: Graph) -> list[int] | None:
    """An injection ``f`` with ``host[f(V(pattern))]`` equal to ``pattern``, or None.

    ``f[v]`` is the host vertex for pattern vertex ``v``.
    """
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return []
    if pattern.num_edges > host.num_edges:
        return None
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    if any(a > b for a, b in zip(sorted(pdeg, reverse=True), sorted(hdeg, reverse=True))):
        return None
    order = sorted(range(pattern.n), key=lambda v: (-pdeg[v], v))
    degmask = []
    for v in range(pattern.n):
        m = 0
        for w in range(host.n):
            if hdeg[w] >= pdeg[v]:
                m |= 1 << w
        degmask.append(m)
    return _accel.embed(pattern.adj, order, host.adj, degmask)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return contains_induced(g, h) is not None


# -- canonical form ----------------------------------------------------------

def _canon(g: Graph):
    if g.n > CANON_MAX:
        raise CapacityError(f"canonical form is limited to {CANON_MAX} vertices, got {g.n}")
    return _accel.canon_bits(g.matrix())


def canonical_form(g: Graph) -> bytes:
    """Vertex count byte followed by the minimal adjacency bitstring, big-endian.

    Two graphs have the same form exactly when they are isomorphic.
    """
    bits, _ = _canon(g)
    code = 0
    for b in bits:
        code = (code << 1) | int(b)
    nbytes = (len(bits) + 7) // 8
    return bytes([g.n]) + code.to_bytes(nbytes, "big")


def canonical_graph(g: Graph) -> Graph:
    _, perm = _canon(g)
    return relabel(g, [int(v) for v in perm])


# -- graph6 ------------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(63 + n)]
    else:
        out = ["~"] + [chr(63 + ((n >> s) & 63)) for s in (12, 6, 0)]
    bits = [(g.adj[j] >> i) & 1 for j in range(n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    offset = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        offset = 10
    if not s:
        raise Graph6Error("empty graph6 string", offset)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", offset + k)
    if s[0] != "~":
        n = ord(s[0]) - 63
        pos = 1
    else:
        if len(s) >= 2 and s[1] == "~":
            raise Graph6Error(f"graph too large for {MAX_VERTICES}-vertex capacity", offset + 1)
        if len(s) < 4:
            raise Graph6Error("truncated size header", offset + len(s))
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical size header", offset + 1)
    if n > MAX_VERTICES:
        raise Graph6Error(f"graph too large for {MAX_VERTICES}-vertex capacity ({n})", offset)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6Error(f"truncated adjacency data: expected {need} bytes, got {len(body)}",
                          offset + len(s))
    if len(body) > need:
        raise Graph6Error("trailing characters after adjacency data", offset + pos + need)
    rows = [0] * n
    k = 0
    for idx, ch in enumerate(body):
        v = ord(ch) - 63
        for shift in range(5, -1, -1):
            bit = (v >> shift) & 1
            if k < nbits:
                if bit:
                    j = _col_of(k)
                    i = k - j * (j - 1) // 2
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            elif bit:
                raise Graph6Error("nonzero padding bits", offset + pos + idx)
            k += 1
    return Graph(n, tuple(rows))


def _col_of(k: int) -> int:
    j = 1
    while j * (j + 1) // 2 <= k:
        j += 1
    return j


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield parse_graph6(line)


# -- enumeration -------------------------------------------------------------

def enumerate_connected(n: int) -> Iterator[Graph]:
    """Connected graphs on n vertices, one per isomorphism class, in canonical-form order.

    Each emitted graph is in its canonical labelling.
    """
    if n > ENUM_MAX:
        raise CapacityError(f"enumeration is limited to {ENUM_MAX} vertices, got {n}")
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    reps = _cached_all_graphs(n)
    for key in sorted(reps):
        g = reps[key]
        if n > 0 and is_connected(g):
            yield canonical_graph(g)


_ALL_CACHE: dict[int, dict[bytes, Graph]] = {}


def _cached_all_graphs(n: int) -> dict[bytes, Graph]:
    # every graph on n vertices is a graph on n-1 vertices plus one new vertex
    if n not in _ALL_CACHE:
        if n == 0:
            _ALL_CACHE[0] = {canonical_form(trivial_graph(0)): trivial_graph(0)}
        else:
            prev = _cached_all_graphs(n - 1)
            out: dict[bytes, Graph] = {}
            for base in prev.values():
                for nbrs in range(1 << (n - 1)):
                    rows = list(base.adj)
                    for v in bits_of(nbrs):
                        rows[v] |= 1 << (n - 1)
                    g = Graph(n, tuple(rows) + (nbrs,))
                    key = canonical_form(g)
                    if key not in out:
                        out[key] = g
            _ALL_CACHE[n] = out
    return _ALL_CACHE[n]


def enumerate_connected_upto(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_connected(n)
