"""Compare the compiled and pure-Python kernels on the hot loops.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs against both kernel modules and the results must agree
before timings are reported. Groups are built outside the timed region.
"""

import argparse
import random
import time
from fractions import Fraction

from hermcert import kernels
from hermcert.algebra import AlgebraElement, powers, witness_element
from hermcert.groups import FreeGroup, FreeProductCyclic, cyclic_group, parse_generators
from hermcert.growth import enumerate_balls


def balls(gens, n):
    def work(G):
        return enumerate_balls(G, parse_generators(G, gens), n).sphere_sizes
    return work


def witness_powers(gens, n):
    def work(G):
        f = witness_element(G, parse_generators(G, gens))
        return [p.coefficients for p in powers(f, n)]
    return work


def random_products(count):
    def work(G):
        rng = random.Random(7)
        out = []
        for _ in range(count):
            x, y = (AlgebraElement.from_coefficients(
                G, {G.random_element(rng, rng.randint(0, 8)).form: Fraction(rng.randint(1, 9))
                    for _ in range(12)}) for _ in range(2))
            out.append((x * y).coefficients)
        return out
    return work


WORKLOADS = [
    ("balls free:2 n=11", lambda k: FreeGroup(2, kernel=k), balls("standard", 11)),
    ("balls fpc:2,3 n=24", lambda k: FreeProductCyclic([2, 3], kernel=k), balls("a,ab,bba", 24)),
    ("balls Z/1024 n=200", lambda k: cyclic_group(1024, kernel=k), balls("1,2,3,1023,1022,1021", 200)),
    ("powers free:2 deg 9", lambda k: FreeGroup(2, kernel=k), witness_powers("standard", 9)),
    ("powers Z/1024 deg 60", lambda k: cyclic_group(1024, kernel=k), witness_powers("1,1023", 60)),
    ("products free:3 x2000", lambda k: FreeGroup(3, kernel=k), random_products(2000)),
]


def main() -> None:
    ap = argparse.ArgumentParser(description="kernel benchmark")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = kernels.available()
    if kernels.compiled is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    head = f"{'workload':<24}" + "".join(f"{m.IMPLEMENTATION:>12}" for m in mods)
    print(head + ("     speedup" if len(mods) > 1 else ""))
    for label, make, work in WORKLOADS:
        best, results = [], []
        for mod in mods:
            G = make(mod)
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = work(G)
                times.append(time.perf_counter() - t0)
            best.append(min(times))
            results.append(res)
        if any(r != results[0] for r in results[1:]):
            raise SystemExit(f"{label}: kernels disagree")
        row = f"{label:<24}" + "".join(f"{t * 1e3:>10.1f}ms" for t in best)
        if len(best) > 1:
            row += f"{best[0] / best[1]:>11.2f}x"
        print(row)


if __name__ == "__main__":
    main()
