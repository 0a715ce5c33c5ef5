"""Batch pipelines over graph streams.

``find_minimal_forbidden`` looks for the minimal forbidden graphs of
``gamma <= k``; the ``verify_*`` functions check the classification
statements for F1, F2 and F3 on every connected graph up to a given order.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Sequence

from .critical import decide_critical_ideal, gamma, gamma_value
from .families import F1, F2, f3_free, family_member
from .graphs import (Graph, canonical_form, clique_number, contains_induced,
                     delete_vertex, enumerate_connected_upto, parse_graph6,
                     write_graph6)
from .groebner import Budget

log = logging.getLogger(__name__)


class SearchError(RuntimeError):
    """An engine failure on one graph of a stream; carries its graph6."""

    def __init__(self, graph6: str, cause: Exception):
        super().__init__(f"{graph6}: {cause}")
        self.graph6 = graph6


@dataclass
class SearchReport:
    processed: int = 0
    hits: list[tuple[str, int, bool]] = field(default_factory=list)
    skipped: int = 0

    def tsv(self) -> str:
        lines = [f"{g6}\t{gam}\t{'critical' if crit else '-'}" for g6, gam, crit in self.hits]
        return "\n".join(lines) + ("\n" if lines else "")


def is_minimal_forbidden(g: Graph, k: int, budget: Budget | None = None) -> bool:
    """gamma(g) >= k+1 while every vertex deletion has gamma <= k."""
    if g.n < k + 1:
        return False
    if not decide_critical_ideal(g, k + 1, budget).trivial:
        return False
    for v in range(g.n):
        h = delete_vertex(g, v)
        if h.n >= k + 1 and decide_critical_ideal(h, k + 1, budget).trivial:
            return False
    return True


def _check_one(args) -> tuple[str, int | None]:
    g6, k, budget = args
    g = parse_graph6(g6)
    try:
        if is_minimal_forbidden(g, k, budget):
            return g6, gamma_value(g, budget)
    except Exception as exc:  # re-raised in the parent with the graph attached
        return g6, exc
    return g6, None


class _Checkpoint:
    """Append-only record of processed canonical forms plus a hits sidecar."""

    def __init__(self, path: str | None):
        self.path = path
        self.done: set[str] = set()
        self.hits: dict[str, tuple[str, int]] = {}
        if path is None:
            return
        if os.path.exists(path):
            with open(path) as fh:
                self.done = {line.strip() for line in fh if line.strip()}
        if os.path.exists(self.hits_path):
            with open(self.hits_path) as fh:
                for line in fh:
                    if line.strip():
                        key, g6, gam = line.rstrip("\n").split("\t")
                        self.hits[key] = (g6, int(gam))

    @property
    def hits_path(self) -> str:
        return f"{self.path}.hits.tsv"

    def record(self, key: str, hit: tuple[str, int] | None):
        if self.path is None:
            return
        if hit is not None:
            with open(self.hits_path, "a") as fh:
                fh.write(f"{key}\t{hit[0]}\t{hit[1]}\n")
        with open(self.path, "a") as fh:
            fh.write(key + "\n")


def find_minimal_forbidden(stream: Iterable[Graph], k: int, prune: bool = True,
                           jobs: int = 1, checkpoint: str | None = None,
                           budget: Budget | None = None) -> SearchReport:
    """Graphs of the stream that are minimal forbidden for ``gamma <= k``.

    Work proceeds by vertex count.  With ``prune`` a graph containing a hit
    on fewer vertices is skipped; it cannot be minimal, because deleting a
    vertex outside that hit keeps ``gamma >= k+1``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    levels: dict[int, list[Graph]] = {}
    for g in stream:
        levels.setdefault(g.n, []).append(g)
    ck = _Checkpoint(checkpoint)
    report = SearchReport()
    found: list[Graph] = []
    pool = Pool(jobs) if jobs > 1 else None
    try:
        for n in sorted(levels):
            todo = []
            for g in levels[n]:
                key = canonical_form(g).hex()
                report.processed += 1
                if key in ck.done:
                    if key in ck.hits:
                        g6, gam = ck.hits[key]
                        report.hits.append((g6, gam, True))
                        found.append(g)
                    continue
                if prune and any(contains_induced(h, g) is not None for h in found):
                    report.skipped += 1
                    ck.record(key, None)
                    continue
                todo.append((key, g))
            work = [(write_graph6(g), k, budget) for _, g in todo]
            results = pool.map(_check_one, work) if pool else map(_check_one, work)
            for (key, g), (g6, res) in zip(todo, results):
                if isinstance(res, Exception):
                    raise SearchError(g6, res) from res
                hit = None if res is None else (g6, res)
                ck.record(key, hit)
                if hit is not None:
                    report.hits.append((g6, res, True))
                    found.append(g)
            log.info("n=%d: %d graphs, %d hits so far", n, len(levels[n]), len(report.hits))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    report.hits.sort(key=lambda h: (parse_graph6(h[0]).n, canonical_form(parse_graph6(h[0]))))
    return report


def graphs_from_file(path: str) -> Iterator[Graph]:
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield parse_graph6(line)


# -- classification checks ------------------------------------------------------

@dataclass
class VerifyReport:
    checked: int = 0
    agree: int = 0
    counterexamples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs > 1:
        with Pool(jobs) as pool:
            return pool.map(fn, items)
    return [fn(x) for x in items]


def _omega_check(args) -> bool:
    g6, omega = args
    g = parse_graph6(g6)
    fam = F2 if omega == 2 else F1
    return (f3_free(g) is None) == (family_member(g, fam) is not None)


def verify_omega_classification(n_max: int, omega: int, jobs: int = 1) -> VerifyReport:
    """For connected g with clique number ``omega``: F3-free iff g lies in F2 (or F1)."""
    if omega not in (2, 3):
        raise ValueError("omega must be 2 or 3")
    if n_max > 7:
        raise ValueError("n_max is limited to 7")
    graphs = [g for g in enumerate_connected_upto(n_max) if clique_number(g) == omega]
    g6s = [write_graph6(g) for g in graphs]
    verdicts = _map(_omega_check, [(s, omega) for s in g6s], jobs)
    rep = VerifyReport(checked=len(g6s))
    for s, ok in zip(g6s, verdicts):
        if ok:
            rep.agree += 1
        else:
            rep.counterexamples.append(s)
    return rep


def _gamma_f3_check(g6: str) -> bool:
    g = parse_graph6(g6)
    return (gamma(g).gamma <= 3) == (f3_free(g) is None)


def verify_gamma_equals_f3_free(n_max: int, jobs: int = 1) -> VerifyReport:
    """gamma(g) <= 3 iff g is F3-free, for every connected g with at most ``n_max`` vertices."""
    if n_max > 7:
        raise ValueError("n_max is limited to 7")
    g6s = [write_graph6(g) for g in enumerate_connected_upto(n_max)]
    verdicts = _map(_gamma_f3_check, g6s, jobs)
    rep = VerifyReport(checked=len(g6s))
    for s, ok in zip(g6s, verdicts):
        if ok:
            rep.agree += 1
        else:
            rep.counterexamples.append(s)
    return rep
