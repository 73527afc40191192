"""Time the numba and pure-numpy variants of each hot kernel.

    python3 benchmarks/bench_kernels.py --repeat 3

Both variants are called directly, so the HYPERMINOR_DISABLE_NUMBA flag
does not matter here. The first numba call (compilation or cache load) is
timed separately as warm-up.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from hyperminor import _accel, kernels


def random_edges(n: int, p: float, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    e = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return np.array(e, dtype=np.int64).reshape(-1, 2)


def adj_masks(n: int, edges: np.ndarray) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    for u, v in edges:
        out[u] |= 1 << int(v)
        out[v] |= 1 << int(u)
    return out


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cheeger-n", type=int, default=20)
    ap.add_argument("--mask-n", type=int, default=18)
    args = ap.parse_args(argv)

    n = args.cheeger_n
    edges = random_edges(n, 0.3, 1)
    adj = adj_masks(args.mask_n, random_edges(args.mask_n, 0.25, 2))
    size = 12
    gens = np.array([np.random.default_rng(i).permutation(size) for i in range(30)])
    frontier = np.array([np.random.default_rng(100 + i).permutation(size) for i in range(20000)])

    cases = {
        f"cheeger_scan n={n}": (lambda: kernels.cheeger_scan_numpy(n, edges, n // 2),
                                lambda: kernels.cheeger_scan_numba(n, edges, n // 2)),
        f"connected_mask_table n={args.mask_n}": (lambda: kernels.connected_mask_table_numpy(adj),
                                                  lambda: kernels.connected_mask_table_numba(adj)),
        "apply_generators 20000x30": (lambda: kernels.apply_generators_numpy(frontier, gens),
                                      lambda: kernels.apply_generators_numba(frontier, gens)),
    }
    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':36s} {'numpy s':>10s} {'numba s':>10s} {'warm-up s':>10s} {'speedup':>8s}")
    for name, (np_fn, nb_fn) in cases.items():
        t_np = best_of(np_fn, args.repeat)
        if not _accel.HAVE_NUMBA:
            print(f"{name:36s} {t_np:10.4f} {'-':>10s} {'-':>10s} {'-':>8s}")
            continue
        t0 = time.perf_counter()
        first = nb_fn()
        warm = time.perf_counter() - t0
        t_nb = best_of(nb_fn, args.repeat)
        same = np.array_equal(np.asarray(first), np.asarray(np_fn()))
        flag = "" if same else "  MISMATCH"
        print(f"{name:36s} {t_np:10.4f} {t_nb:10.4f} {warm:10.4f} {t_np / t_nb:8.1f}x{flag}")


if __name__ == "__main__":
    main()
