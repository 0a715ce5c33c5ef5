"""Compare the numba kernels against their pure-numpy fallbacks.

Times the three accelerated kernels on realistic inputs and checks that both
backends return the same answers:

* canonical labeling of every connected 7-vertex graph,
* induced embedding of the F3 members into a capped F1^1 instance,
* the mod-p rank scan used to certify proper critical ideals.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import time

from critideal import _accel
from critideal.critical import _scan_points
from critideal.families import F1_1, f3_members, instantiate
from critideal.graphs import enumerate_connected, wheel


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_canon(use_numba, graphs):
    return [_accel.canon_bits(g.matrix(), use_numba=use_numba)[0].tobytes() for g in graphs]


def _embed_inputs(pat, host):
    pdeg = pat.degrees()
    hdeg = host.degrees()
    order = sorted(range(pat.n), key=lambda v: (-pdeg[v], v))
    degmask = [sum(1 << w for w in range(host.n) if hdeg[w] >= pdeg[v]) for v in range(pat.n)]
    return pat.adj, order, host.adj, degmask


def bench_scan(use_numba, cases):
    return [_accel.first_rank_deficient(adj, pts, p, i, use_numba=use_numba)
            for adj, pts, p, i in cases]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _accel.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run")
        return

    graphs = list(enumerate_connected(7))
    host = instantiate(F1_1, [2] * 7)
    embed_cases = [_embed_inputs(m, host) for _, m in f3_members()]
    w = wheel(5)
    scan_cases = []
    for p in (2, 3, 5, 7):
        scan_cases.append((w.matrix(), _scan_points(w.n, p, 20_000, seed=7), p, 4))

    kernels = [
        ("canon_bits (853 graphs, n=7)", lambda nb: bench_canon(nb, graphs)),
        ("embed (49 F3 members -> 14-vertex host)",
         lambda nb: [_accel.embed(*c, use_numba=nb) for c in embed_cases]),
        ("rank scan mod p (W_5, i=4)", lambda nb: bench_scan(nb, scan_cases)),
    ]
    print(f"{'kernel':45s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, fn in kernels:
        fn(True)  # compile outside the timed region
        t_nb, r_nb = _time(lambda: fn(True), args.repeat)
        t_np, r_np = _time(lambda: fn(False), args.repeat)
        agree = r_nb == r_np
        print(f"{name:45s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}  {agree}")


if __name__ == "__main__":
    main()
