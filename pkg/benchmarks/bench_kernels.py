"""Compare the compiled and numpy kernel backends on the largest groups we handle.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import sys
import timeit

import numpy as np

from rfring import kernels
from rfring.groups import direct_product, from_permutations, make_cyclic


def spanning_tree(G, gens):
    n = G.order
    parent = np.zeros(n, dtype=np.int32)
    via = np.zeros(n, dtype=np.int32)
    seen = {0}
    for i in range(n):
        for k, g in enumerate(gens):
            j = int(G.mul[i, g])
            if j not in seen:
                seen.add(j)
                parent[j], via[j] = i, k
    return np.array([G.mul[:, g] for g in gens], dtype=np.int32), parent, via


def workloads():
    S5 = from_permutations(5, ["(1 2)", "(1 2 3 4 5)"])
    S6 = from_permutations(6, ["(1 2)", "(1 2 3 4 5 6)"])
    return {
        "S5 (120)": S5,
        "S6 (720)": S6,
        "S6 x C2 (1440)": direct_product(S6, make_cyclic(2)),
        "S4 x C3 x C4 (288)": direct_product(
            from_permutations(4, ["(1 2)", "(1 2 3 4)"]),
            direct_product(make_cyclic(3), make_cyclic(4))),
    }


def cases(G):
    mul = np.ascontiguousarray(G.mul)
    inv = np.ascontiguousarray(G.inv, dtype=np.int32)
    cc = G.classes
    class_of = np.ascontiguousarray(cc.class_of, dtype=np.int32)
    reps = np.array(cc.reps, dtype=np.int32)
    gens = np.array(G._spanning_gens(), dtype=np.int32)
    tree = spanning_tree(G, [int(g) for g in gens])
    return {
        "fill_mul_table": lambda k: k.fill_mul_table(*tree),
        "is_associative_light": lambda k: k.is_associative_light(mul, gens),
        "conjugacy_labels": lambda k: k.conjugacy_labels(mul, inv),
        "class_constants": lambda k: k.class_constants(mul, inv, class_of, reps, cc.count),
        "element_orders": lambda k: k.element_orders(mul),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the numpy fallback is available", file=sys.stderr)
    names = sorted(backends)
    print(f"{'group':32} {'kernel':22} " + " ".join(f"{n:>12}" for n in names) + "   speedup")
    for gname, G in workloads().items():
        for kname, fn in cases(G).items():
            times = {}
            for b in names:
                impl = backends[b]
                times[b] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
            speed = (f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "")
            print(f"{gname:32} {kname:22} " +
                  " ".join(f"{times[b] * 1e3:10.2f}ms" for b in names) + "  " + speed)
    return 0


if __name__ == "__main__":
    sys.exit(main())
