"""Acceptance criteria, one pass/fail line each.

Every check is exact (integer arithmetic throughout), so the tolerance on each
comparison is zero.  The lines are collected in ``RESULTS`` and printed in the
pytest terminal summary; ``python tests/test_acceptance.py`` prints them
directly.  Slower variants on 7-vertex graphs run when CRITIDEAL_EXTENDED=1.
"""

import os
import random
import sys
import time
from math import gcd

import pytest

from critideal.critical import (blowup, blowup_ideal_trivial, critical_ideal_generators,
                                critical_ideal_trivial, gamma_value, is_gamma_critical,
                                laplacian_ring, phi, random_weights)
from critideal.families import G1, G2, G3, f3_members
from critideal.graphs import (Graph, canonical_form, complete, complete_multipartite,
                              enumerate_connected_upto, join, parse_graph6, path, star)
from critideal.groebner import ideal_equals, strong_groebner
from critideal.search import (find_minimal_forbidden, verify_gamma_equals_f3_free,
                              verify_omega_classification)
from critideal.zlinalg import critical_group, determinantal_divisor, f1, laplacian

EXTENDED = os.environ.get("CRITIDEAL_EXTENDED", "0") not in ("", "0")
extended = pytest.mark.skipif(not EXTENDED, reason="extended tier; set CRITIDEAL_EXTENDED=1")

RESULTS: list[str] = []


def record(tag, ok, detail, t0):
    line = f"criterion {tag:<3s} {'PASS' if ok else 'FAIL'}  {detail}  [{time.perf_counter() - t0:.1f}s]"
    RESULTS.append(line)
    return ok


# -- 1 ---------------------------------------------------------------------------

def check_1():
    t0 = time.perf_counter()
    r2 = laplacian_ring(G2)
    want2 = [r2.parse(s) for s in ("2", "x1", "x2", "x3", "x4+1", "x5+1", "x6+1", "x7+1")]
    r3 = laplacian_ring(G3)
    want3 = [r3.parse("x1^2+5*x1+5")] + [r3.parse(f"x1+x{k}+3") for k in range(2, 7)]
    ok2 = ideal_equals(strong_groebner(critical_ideal_generators(G2, 4)).basis, want2)
    ok3 = ideal_equals(strong_groebner(critical_ideal_generators(G3, 4)).basis, want3)
    return record("1", ok2 and ok3, f"I_4(F1^1 base) printed form {ok2}; "
                  f"I_4(wheel W_5) printed form {ok3}", t0)


# -- 2 ---------------------------------------------------------------------------

def check_2():
    t0 = time.perf_counter()
    want = {"prism G_1": (G1, 3), "G_2": (G2, 3), "G_3": (G3, 3),
            "P_3": (path(3), 2), "P_4": (path(4), 3), "P_5": (path(5), 4)}
    want.update({f"K_{n}": (complete(n), 1) for n in range(2, 9)})
    bad = [name for name, (g, v) in want.items() if gamma_value(g) != v]
    return record("2", not bad, f"{len(want) - len(bad)}/{len(want)} named gamma values match"
                  + (f"; wrong: {', '.join(bad)}" if bad else ""), t0)


# -- 3 ---------------------------------------------------------------------------

def check_3(members):
    t0 = time.perf_counter()
    bad = [name for name, g in members if gamma_value(g) != 4 or not is_gamma_critical(g)]
    sizes = sorted({g.n for _, g in members})
    return record("3", not bad, f"{len(members) - len(bad)}/{len(members)} F3 members on "
                  f"{sizes} vertices have gamma 4 and are gamma-critical"
                  + (f"; failing: {', '.join(bad)}" if bad else ""), t0)


# -- 4 ---------------------------------------------------------------------------

def _literal_trivial(g, d, j):
    # the reading that evaluates every vertex at phi(d), weight +-1 included
    return determinantal_divisor(
        [[phi(d)[r] if r == c else -int(g.has_edge(r, c)) for c in range(g.n)]
         for r in range(g.n)], j) == 1


def check_4(count=240, seed=2024):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    small = list(enumerate_connected_upto(5))
    agree = literal_off = done = 0
    while done < count:
        g = rng.choice(small)
        d = random_weights(g.n, 2, rng)
        if sum(abs(x) for x in d) > 9:
            continue
        j = rng.randint(1, g.n)
        lhs = blowup_ideal_trivial(g, d, j)
        rhs = critical_ideal_trivial(blowup(g, d), j, evaluate=False)
        agree += lhs == rhs
        literal_off += _literal_trivial(g, d, j) != rhs
        done += 1
    return record("4", agree == done, f"blow-up evaluation agrees with the Gröbner basis of the "
                  f"expanded blow-up on {agree}/{done} random instances (info: evaluating "
                  f"weight-1 vertices at phi would disagree on {literal_off})", t0)


# -- 5 ---------------------------------------------------------------------------

def check_5():
    t0 = time.perf_counter()
    k4 = critical_group(complete(4)).torsion()
    k5 = critical_group(complete(5)).torsion()
    vals = {
        "K(K_4)": (k4, (4, 4)),
        "K(K_5)": (k5, (5, 5, 5)),
        "f1(K_1,3)": (f1(star(3)), 3),
        "f1(K_1 + K_1,3)": (f1(join(complete(1), star(3))), 2),
        "f1(K_5 - 2K_2)": (f1(join(complete(1), complete_multipartite([2, 2]))), 2),
        "f1(K_6 - 2K_2)": (f1(join(complete(2), complete_multipartite([2, 2]))), 3),
    }
    bad = [k for k, (got, want) in vals.items() if got != want]
    return record("5", not bad, f"{len(vals) - len(bad)}/{len(vals)} critical-group values match"
                  + (f"; wrong: {', '.join(bad)}" if bad else ""), t0)


# -- 6 ---------------------------------------------------------------------------

def _corpus_6():
    return list(enumerate_connected_upto(6, 2))


def check_6a():
    t0 = time.perf_counter()
    pairs = bad = 0
    for g in _corpus_6():
        lap = laplacian(g)
        point = g.degrees()
        for i in range(1, g.n):
            h = 0
            for p in critical_ideal_generators(g, i):
                h = gcd(h, p.evaluate(point))
            pairs += 1
            bad += h != determinantal_divisor(lap, i)
    return record("6a", bad == 0, f"gcd of I_i generators at the degree vector equals Delta_i "
                  f"on {pairs - bad}/{pairs} (graph, i) pairs, n <= 6", t0)


def check_6b():
    t0 = time.perf_counter()
    corpus = _corpus_6()
    stats = [(f1(g), gamma_value(g), g) for g in corpus]
    fwd = [g for a, b, g in stats if not a <= b]
    rev = [g for a, b, g in stats if not b <= a]
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    first = "claw" if fwd and canonical_form(fwd[0]) == canonical_form(claw) else "see list"
    return record("6b", not fwd, f"f1 <= gamma holds on {len(corpus) - len(fwd)}/{len(corpus)} "
                  f"graphs (first failure: {first if fwd else 'none'}, f1(claw)=3, "
                  f"gamma(claw)=2); gamma <= f1 holds on {len(corpus) - len(rev)}/{len(corpus)}",
                  t0)


# -- 7 ---------------------------------------------------------------------------

def check_7(n3=6):
    t0 = time.perf_counter()
    k1 = find_minimal_forbidden(enumerate_connected_upto(5), 1)
    k1_forms = {canonical_form(parse_graph6(h[0])) for h in k1.hits}
    ok1 = k1_forms == {canonical_form(path(3))}
    k3 = find_minimal_forbidden(enumerate_connected_upto(n3), 3)
    k3_forms = {canonical_form(parse_graph6(h[0])) for h in k3.hits}
    want = {canonical_form(g) for _, g in f3_members() if g.n <= n3}
    ok3 = k3_forms == want
    return record("7", ok1 and ok3, f"k=1, n<=5: {len(k1.hits)} hit(s), equals {{P_3}} {ok1}; "
                  f"k=3, n<={n3}: {len(k3.hits)} hits, equals the {len(want)} F3 members "
                  f"{ok3}", t0)


# -- 8 ---------------------------------------------------------------------------

def check_8(n_max=6, jobs=1):
    t0 = time.perf_counter()
    w2 = verify_omega_classification(n_max, 2, jobs=jobs)
    w3 = verify_omega_classification(n_max, 3, jobs=jobs)
    f3 = verify_gamma_equals_f3_free(n_max, jobs=jobs)
    ok = w2.ok and w3.ok and f3.ok
    listed = w2.counterexamples + w3.counterexamples + f3.counterexamples
    return record("8", ok, f"n<={n_max}: omega=2 {w2.checked} checked, "
                  f"{len(w2.counterexamples)} counterexamples; omega=3 {w3.checked} checked, "
                  f"{len(w3.counterexamples)} counterexamples; gamma<=3 iff F3-free "
                  f"{f3.checked} checked, {len(f3.counterexamples)} counterexamples"
                  + (f" ({' '.join(listed)})" if listed else ""), t0)


# -- pytest wrappers -------------------------------------------------------------

def test_criterion_1():
    assert check_1()


def test_criterion_2():
    assert check_2()


def test_criterion_3():
    # all 49 members run in the default tier; together they take seconds here
    assert check_3(f3_members())


def test_criterion_4():
    assert check_4()


def test_criterion_5():
    assert check_5()


def test_criterion_6_bridge_identity():
    assert check_6a()


def test_criterion_6_f1_at_most_gamma():
    # stated consequence; it is false (the claw has f1 = 3 and gamma = 2)
    assert check_6b()


def test_criterion_7():
    assert check_7()


def test_criterion_8():
    assert check_8()


@extended
def test_criterion_7_extended():
    assert check_7(n3=7)


@extended
def test_criterion_8_extended():
    # fails: three 7-vertex graphs with omega 3 and gamma 3 lie outside F1
    # (see test_families.test_omega_three_graphs_outside_f1)
    assert check_8(n_max=7, jobs=os.cpu_count() or 1)


if __name__ == "__main__":
    checks = [check_1, check_2, lambda: check_3(f3_members()), check_4, check_5, check_6a,
              check_6b, check_7, check_8]
    results = [c() for c in checks]
    print("\n".join(RESULTS))
    sys.exit(0 if all(results) else 1)
