"""Compare the compiled SNF kernel against the pure Python twin.

Runs the same workload through both backends, checks the outputs agree
entry for entry, and prints a timing table.  Invoke from the repo root:

    python3 benchmarks/bench_snf.py [--sizes 6,10,16,24] [--reps 40]
"""

import argparse
import random
import time

from normone import intmat
from normone.intmat import IntMatrix, smith_normal_form
from normone.lattice import norm_one_lattice, restrict
from normone.perms import make_symmetric, point_stabilizer, witness_p_subgroup
from normone.resolution import flasque_resolution


def random_matrix(rng, n, bound=50):
    data = tuple(
        tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n)
    )
    return IntMatrix(data, n, n)


def force_backend(name):
    assert name in ("pure", "compiled")
    if name == "compiled" and intmat._snf_core is None:
        raise SystemExit("compiled kernel unavailable; build the extension")
    intmat._FORCE_PURE = name == "pure"


def bench_random(sizes, reps, seed=20240811):
    print("random dense matrices (entries in [-50, 50], %d reps)" % reps)
    print("%6s %12s %12s %8s" % ("n", "pure (s)", "compiled (s)", "speedup"))
    for n in sizes:
        rng = random.Random(seed + n)
        mats = [random_matrix(rng, n) for _ in range(reps)]
        results = {}
        times = {}
        for backend in ("pure", "compiled"):
            force_backend(backend)
            assert intmat.kernel_backend() == backend
            t0 = time.perf_counter()
            out = [smith_normal_form(m) for m in mats]
            times[backend] = time.perf_counter() - t0
            results[backend] = [s.diagonal() for s in out]
            for m, s in zip(mats, out):
                assert s.U @ m @ s.V == s.D
        assert results["pure"] == results["compiled"], "backends disagree"
        print("%6d %12.4f %12.4f %7.1fx" % (
            n, times["pure"], times["compiled"],
            times["pure"] / max(times["compiled"], 1e-9),
        ))


def bench_resolution():
    print("\nflasque resolution of J restricted to the (S, 10, 2) witness")
    S10 = make_symmetric(10)
    J = norm_one_lattice(S10, point_stabilizer(S10, 10))
    P = witness_p_subgroup("S", 10, 2)
    for backend in ("pure", "compiled"):
        force_backend(backend)
        t0 = time.perf_counter()
        res = flasque_resolution(restrict(J, P))
        dt = time.perf_counter() - t0
        print("  %-9s %6.2fs  (flasque rank %d)" % (backend, dt, res.F.rank))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="6,10,16,24")
    ap.add_argument("--reps", type=int, default=40)
    ap.add_argument("--skip-resolution", action="store_true")
    args = ap.parse_args()
    sizes = [int(t) for t in args.sizes.split(",")]
    bench_random(sizes, args.reps)
    if not args.skip_resolution:
        bench_resolution()


if __name__ == "__main__":
    main()
