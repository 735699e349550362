"""Time the segment-crossing kernel, JIT against numpy, on realistic lift batches.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeat 5]

The candidate segments are translates of closed-geodesic edges taken from the
group ball, so the mix of disjoint, crossing and far-away candidates matches
what intersection counting sees.
"""

import argparse
import time

import numpy as np

from teichform import _kernels
from teichform.fuchsian import genus2_octagon
from teichform.geograph import from_multicurve
from teichform.lifts import LiftIndex
from teichform.mink import distance, geodesic_between, tangent_toward


def batch(G, n, rng):
    g = from_multicurve(G, [("a1", 1.0), ("b1", 1.0), ("a2", 1.0), ("b2", 1.0)])
    idx = LiftIndex(G, g)
    words, mats, _ = G.ball_arrays(7.0)
    k = rng.integers(0, len(mats), n)
    e = rng.integers(0, len(idx.A), n)
    T = mats[k]
    A = np.einsum("kij,kj->ki", T, idx.A[e])
    B = np.einsum("kij,kj->ki", T, idx.B[e])
    return (np.ascontiguousarray(A), np.ascontiguousarray(B),
            np.einsum("kij,kj->ki", T, idx.X[e]),
            np.einsum("kij,kj->ki", T, idx.UA[e]),
            np.einsum("kij,kj->ki", T, idx.UB[e]))


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    G = genus2_octagon()
    rng = np.random.default_rng(0)
    a, b = G.domain.vertices[0], G.domain.vertices[3]
    query = (a, geodesic_between(a, b).normal, tangent_toward(a, b), tangent_toward(b, a), float(distance(a, b)))
    print(f"{'n':>8} {'numpy ms':>10} {'jit ms':>10} {'speedup':>8} {'crossings':>9}")
    for n in args.sizes:
        cand = batch(G, n, rng)
        full = (*query, *cand, 1e-8)
        t_np = timed(_kernels.segment_crossings_numpy, full, args.repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.segment_crossings_jit(*full)  # compile outside the timing
            t_jit = timed(_kernels.segment_crossings_jit, full, args.repeat)
            st_np = _kernels.segment_crossings_numpy(*full)[0]
            st_jit = _kernels.segment_crossings_jit(*full)[0]
            assert np.array_equal(st_np, st_jit), "JIT and numpy disagree"
            jit_ms, speed = f"{1e3 * t_jit:10.3f}", f"{t_np / t_jit:8.1f}"
        else:
            jit_ms, speed = f"{'n/a':>10}", f"{'n/a':>8}"
        crossings = int(np.sum(_kernels.segment_crossings_numpy(*full)[0] == _kernels.CROSS))
        print(f"{n:8d} {1e3 * t_np:10.3f} {jit_ms} {speed} {crossings:9d}")


if __name__ == "__main__":
    main()
