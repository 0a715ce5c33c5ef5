"""The graph families F1, F2 and F3.

F3 is the list of 49 minimal forbidden graphs for ``gamma <= 3`` on at most
eight vertices, shipped as frozen graph6 fixtures.  F1 and F2 are
parametrized blow-up families; a :class:`FamilyTemplate` records the
underlying graph and which vertices become cliques or stable sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .critical import blowup
from .graphs import (Graph, clique_number, contains_induced, parse_graph6,
                     stability_number, wheel)

CLIQUE = "clique"
STABLE = "stable"
SINGLE = "single"


@dataclass(frozen=True)
class FamilyTemplate:
    """An underlying graph whose vertices are clique parts, stable parts or single vertices."""

    name: str
    underlying: Graph
    kinds: tuple[str, ...]

    def __post_init__(self):
        if len(self.kinds) != self.underlying.n:
            raise ValueError("one kind per underlying vertex is required")
        bad = set(self.kinds) - {CLIQUE, STABLE, SINGLE}
        if bad:
            raise ValueError(f"unknown part kinds {sorted(bad)}")

    @property
    def slots(self) -> tuple[int, ...]:
        """Underlying vertices that carry a size parameter."""
        return tuple(v for v, k in enumerate(self.kinds) if k != SINGLE)

    def weights(self, sizes: Sequence[int]) -> list[int]:
        slots = self.slots
        if len(sizes) != len(slots):
            raise ValueError(f"{self.name} takes {len(slots)} sizes, got {len(sizes)}")
        d = [1] * self.underlying.n
        for v, s in zip(slots, sizes):
            s = int(s)
            if s < 1:
                raise ValueError("part sizes must be positive")
            d[v] = -s if self.kinds[v] == CLIQUE else s
        return d


def instantiate(template: FamilyTemplate, sizes: Sequence[int]) -> Graph:
    return blowup(template.underlying, template.weights(sizes))


# -- F1 ----------------------------------------------------------------------

# G_2, the underlying graph of F1^1.  Vertex v carries the part n_{v+1}; the
# parts n_1..n_3 are stable sets and n_4..n_7 are cliques.
G2 = Graph.from_edges(7, [(4, 6), (6, 3), (3, 0), (0, 4), (4, 1), (1, 5),
                          (5, 6), (3, 2), (2, 0), (0, 1), (1, 2), (2, 5)])

# G_3 = W_5, the underlying graph of F1^2; the hub (vertex 0) is the stable part n_1.
G3 = wheel(5)

# G_1, the prism: two triangles joined by a perfect matching.
G1 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                          (0, 3), (1, 4), (2, 5)])

F1_1 = FamilyTemplate("F1^1", G2, (STABLE,) * 3 + (CLIQUE,) * 4)
F1_2 = FamilyTemplate("F1^2", G3, (STABLE,) + (SINGLE,) * 5)
F1_PRISM = FamilyTemplate("G_1", G1, (SINGLE,) * 6)
F1 = (F1_1, F1_2, F1_PRISM)

# -- F2 ----------------------------------------------------------------------

F2_BIPARTITE = FamilyTemplate("K_{n1,n2}", Graph.from_edges(2, [(0, 1)]), (STABLE, STABLE))
F2_1 = FamilyTemplate("F2^1", Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]),
                      (STABLE, STABLE, SINGLE, SINGLE))
F2_2 = FamilyTemplate("F2^2", Graph.from_edges(4, [(3, 0), (0, 1), (1, 2)]),
                      (STABLE, STABLE, SINGLE, SINGLE))
F2_3 = FamilyTemplate("F2^3", Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
                      (STABLE, STABLE, SINGLE, SINGLE, SINGLE))
F2 = (F2_BIPARTITE, F2_1, F2_2, F2_3)


# -- F3 ----------------------------------------------------------------------

def _data(name: str) -> str:
    return resources.files("critideal").joinpath("data", name).read_text()


@lru_cache(maxsize=None)
def _f3() -> tuple[tuple[str, Graph], ...]:
    names = [s.strip() for s in _data("f3.names").splitlines() if s.strip()]
    graphs = [parse_graph6(s) for s in _data("f3.g6").splitlines() if s.strip()]
    if len(names) != len(graphs):
        raise RuntimeError("F3 fixture and name sidecar disagree in length")
    return tuple(zip(names, graphs))


def f3_members() -> list[tuple[str, Graph]]:
    """The 49 members of F3 as ``(name, graph)``, in the order of the drawing."""
    return list(_f3())


def f3_templates() -> list[tuple[str, Graph, list[int]]]:
    """Compact form of F3: underlying graph and blow-up weights per member."""
    out = []
    for line in _data("f3_templates.tsv").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, g6, w = line.split("\t")
        out.append((name, parse_graph6(g6), [int(x) for x in w.split(",")]))
    return out


def f3_free(g: Graph) -> tuple[str, list[int]] | None:
    """None if no F3 member is an induced subgraph of ``g``, else the first witness."""
    for name, m in _f3():
        if m.n > g.n:
            break
        f = contains_induced(m, g)
        if f is not None:
            return name, f
    return None


def capped_instance(template: FamilyTemplate, g: Graph) -> Graph:
    """The instance of ``template`` that contains ``g`` whenever any instance does.

    Vertices of ``g`` landing in one clique part form a clique of ``g`` and
    those landing in one stable part form a stable set, so cliques are capped
    at ``omega(g)`` and stable sets at ``alpha(g)`` (both at most ``|V(g)|``).
    """
    omega = max(1, clique_number(g))
    alpha = max(1, stability_number(g))
    sizes = [omega if template.kinds[v] == CLIQUE else alpha for v in template.slots]
    return instantiate(template, sizes)


def family_member(g: Graph, templates: Sequence[FamilyTemplate]
                  ) -> tuple[FamilyTemplate, list[int]] | None:
    """The first template with an instance containing ``g``, with the embedding."""
    for t in templates:
        f = contains_induced(g, capped_instance(t, g))
        if f is not None:
            return t, f
    return None
