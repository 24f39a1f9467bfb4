"""Compare the compiled and numpy kernels on pointwise evaluation and scans.

    python3 benchmarks/bench_kernels.py [--n 1000000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from selfsim import _kernels_py
from selfsim import model_nat as mn

try:
    from selfsim import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads(n):
    f = mn.compose(mn.interleave(mn.random_map(1, 12), mn.alpha_map()), mn.random_map(2, 12))
    g = mn.ResidueMap(f.pieces)
    # a late difference forces a long scan
    h = mn.compose(f, mn.ResidueMap([(20, r, 20, r) for r in range(1 << 20) if r not in (n - 2, n - 1)]
                                    + [(20, n - 2, 20, n - 1), (20, n - 1, 20, n - 2)]))
    ns = np.arange(n, dtype=np.int64)
    return {
        "apply_pieces": lambda mod: mod.apply_pieces(*f.arrays(), ns),
        "first_mismatch (equal)": lambda mod: mod.first_mismatch(f.arrays(), g.arrays(), 0, n),
        "first_mismatch (late)": lambda mod: mod.first_mismatch(f.arrays(), h.arrays(), 0, n),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1 << 20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _kernels_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled kernels not built; timing the numpy fallback only")
    for name, work in workloads(args.n).items():
        row = []
        for bname, mod in backends.items():
            t = min(timeit.repeat(lambda: work(mod), number=1, repeat=args.repeat))
            row.append(f"{bname} {t * 1e3:8.2f} ms")
        print(f"{name:24s} " + "  ".join(row))


if __name__ == "__main__":
    main()
