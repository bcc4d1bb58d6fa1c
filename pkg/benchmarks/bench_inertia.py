"""Timing comparison of the two Hermitian inertia kernels.

Two workloads: random dense Hermitian matrices over Q(zeta_7), and the
hermitianized Seifert forms of the (5,6) torus knot on a regular grid of
evaluation points (the matrices that dominate signature sweeps).  Run as

    python3 benchmarks/bench_inertia.py
"""

import random
import time
from fractions import Fraction

from knotconcord.cyclo import CyclotomicField
from knotconcord.kernels import available_backends, hermitian_inertia
from knotconcord.seifert import torus_matrix


def random_hermitian(rng, F, n):
    C = [[F.pack([Fraction(rng.randint(-3, 3)) for _ in range(F.deg)])
          for _ in range(n)] for _ in range(n)]
    return [[F.add(C[i][j], F.conj(C[j][i])) for j in range(n)] for i in range(n)]


def hermitianized_seifert(F, V, a):
    one = F.one()
    c1 = F.sub(one, F.zeta_elt(a % F.n))
    c2 = F.sub(one, F.zeta_elt(-a % F.n))
    n = V.size
    return [[F.add(F.scale(c1, V.entries[r][c]), F.scale(c2, V.entries[c][r]))
             for c in range(n)] for r in range(n)]


def workload_random():
    rng = random.Random(20260815)
    F = CyclotomicField(7)
    return F, [random_hermitian(rng, F, n) for n in (2, 3, 4, 5) for _ in range(6)]


def workload_signature_grid():
    V = torus_matrix(5, 6)
    F = CyclotomicField(40)
    mats = []
    for k in range(1, 40):
        try:
            mats.append(hermitianized_seifert(F, V, k))
        except Exception:
            continue
    return F, mats


def run(label, F, mats, backends, repeats=3):
    print(f"{label}: {len(mats)} matrices, field degree {F.deg}")
    results = {}
    timings = {}
    for name, impl in sorted(backends.items()):
        best = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            out = [hermitian_inertia(F, A, impl=impl) for A in mats]
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results[name] = out
        timings[name] = best
        print(f"  {name:>7}: {best * 1000:8.1f} ms")
    names = sorted(backends)
    if len(names) == 2:
        assert results[names[0]] == results[names[1]], "backends disagree"
        slow, fast = sorted(timings.values(), reverse=True)
        print(f"  speedup: {slow / fast:.2f}x (results identical)")
    print()


def main():
    backends = available_backends()
    print("backends:", ", ".join(sorted(backends)))
    print()
    run("random Hermitian over Q(zeta_7)", *workload_random(), backends)
    run("T(5,6) signature grid k/40", *workload_signature_grid(), backends)


if __name__ == "__main__":
    main()
