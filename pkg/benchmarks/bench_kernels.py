"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads:
  grid       wall_scan on every H_W of the rank-one acceptance grid
  large-v2   wall_scan with v^2 ~ 10^5..10^6 (inside the int64 guard)
  star-box   the full bounded (*) search on a rank-3 NS lattice
"""

import argparse
from math import gcd
import time

from mukaiwalls import NSData, kernels
from mukaiwalls.walls import _scan_data, build_vertical


def grid_inputs():
    out = []
    for d2 in (2, 4, 6, 8):
        ns = NSData.rank_one(d2)
        for r in range(1, 9):
            for c in range(-8, 9):
                for s in range(-20, 21):
                    if gcd(gcd(r, c), s) != 1 or c * c * d2 - 2 * r * s < 2:
                        continue
                    spec = build_vertical(ns, ns.vec(r, c, s))
                    V, U, _, h = _scan_data(spec.gram.gram, spec.v_coords)
                    out.append((V, U) + tuple(h))
    return out


def large_inputs():
    # v = (r, 0, -s), r and s coprime primes, in the hyperbolic plane
    out = []
    for r, s in ((97, 503), (211, 1009), (401, 1999), (503, 997)):
        G = ((0, -1), (-1, 0))
        V, U, _, h = _scan_data(G, (r, -s))
        out.append((V, U) + tuple(h))
    return out


def run(name, fn, repeat):
    best = {}
    for backend in ("python", "compiled"):
        if backend == "compiled" and not kernels.HAVE_COMPILED:
            continue
        kernels.set_backend(backend)
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            res = fn()
            times.append(time.perf_counter() - t0)
        best[backend] = (min(times), res)
    py = best["python"]
    line = f"{name:10s} python {py[0] * 1e3:9.2f} ms"
    if "compiled" in best:
        cc = best["compiled"]
        if cc[1] != py[1]:
            raise SystemExit(f"{name}: backends disagree")
        line += f"   compiled {cc[0] * 1e3:9.2f} ms   speedup {py[0] / cc[0]:6.1f}x"
    print(line)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    grid = grid_inputs()
    large = large_inputs()
    gram3 = ((2, 1, 0), (1, -2, 1), (0, 1, -4))
    print(f"compiled kernels available: {kernels.HAVE_COMPILED}")
    run("grid", lambda: [kernels.wall_scan(*x) for x in grid], args.repeat)
    run("large-v2", lambda: [kernels.wall_scan(*x) for x in large], args.repeat)
    run("star-box", lambda: kernels.star_box_scan(gram3, (1, 0, 0), 14, 7, 20), args.repeat)


if __name__ == "__main__":
    main()
