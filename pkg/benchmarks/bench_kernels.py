"""Time the numba kernels against the pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--batch 200000]

Reports the best wall time of each path and checks the results agree.
The first numba call is timed separately because it includes compilation.
"""
import argparse
import time

import numpy as np

from cosetnum import _kernels, system
from cosetnum.enumeration import _kernel_arrays
from cosetnum.registry import pattern_for
from cosetnum.ruleset import derive_constraints


def best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


_compiled = False


def bench_sweep(group, domain, repeat):
    global _compiled
    p = pattern_for(group)
    lhs, rhs = _kernel_arrays(derive_constraints(p))
    dom = np.asarray(domain, dtype=np.int64)
    n = p.param_count
    rows = []
    if _kernels.HAS_NUMBA and not _compiled:
        t0 = time.perf_counter()
        _kernels.sweep(dom, n, lhs, rhs, use_numba=True)
        rows.append((f"sweep {group} {len(dom)}^{n}", "numba first call", time.perf_counter() - t0))
        _compiled = True
    if _kernels.HAS_NUMBA:
        t_nb, r_nb = best(lambda: _kernels.sweep(dom, n, lhs, rhs, use_numba=True), repeat)
        rows.append((f"sweep {group} {len(dom)}^{n}", "numba", t_nb))
    t_np, r_np = best(lambda: _kernels.sweep(dom, n, lhs, rhs, use_numba=False), repeat)
    rows.append((f"sweep {group} {len(dom)}^{n}", "numpy", t_np))
    if _kernels.HAS_NUMBA:
        assert np.array_equal(r_nb, r_np)
    return rows


def bench_mul(name, size, repeat):
    target, coef = system(name).int_structure
    rng = np.random.default_rng(0)
    n = target.shape[0]
    x = rng.integers(-9, 10, size=(size, n), dtype=np.int64)
    y = rng.integers(-9, 10, size=(size, n), dtype=np.int64)
    label = f"batch_mul {name} x{size}"
    rows = []
    if _kernels.HAS_NUMBA:
        _kernels.batch_mul(x[:2], y[:2], target, coef, use_numba=True)
        t_nb, r_nb = best(lambda: _kernels.batch_mul(x, y, target, coef, use_numba=True), repeat)
        rows.append((label, "numba", t_nb))
    t_np, r_np = best(lambda: _kernels.batch_mul(x, y, target, coef, use_numba=False), repeat)
    rows.append((label, "numpy", t_np))
    if _kernels.HAS_NUMBA:
        assert np.array_equal(r_nb, r_np)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--batch", type=int, default=200_000)
    args = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        print("numba unavailable or disabled; timing the numpy path only")
    rows = []
    rows += bench_sweep("klein4", (-1, 0, 1), args.repeat)
    rows += bench_sweep("c4", (-2, -1, 0, 1, 2), 1)
    rows += bench_mul("quaternion", args.batch, args.repeat)
    rows += bench_mul("hyperbolic-3d", args.batch, args.repeat)
    width = max(len(r[0]) for r in rows)
    for case, path, t in rows:
        print(f"{case:<{width}}  {path:<16}  {t * 1000:10.2f} ms")


if __name__ == "__main__":
    main()
