"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--grid 4096] [--repeat 200]

Times one fixed-point step and a full solve per backend and checks that
both backends agree.
"""
import argparse
import time

import numpy as np

from khessian import _fallback, kernels
from khessian import solver as solver_mod
from khessian.radial import HessianOrder, RadialGrid

try:
    from khessian import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def _solve_with(backend, order, cfg):
    saved = kernels.fixed_point_step
    solver_mod.kernels.fixed_point_step = backend.fixed_point_step
    try:
        return solver_mod.solve(order, cfg)
    finally:
        solver_mod.kernels.fixed_point_step = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()

    backends = [("python", _fallback)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    else:
        print("compiled kernels not built; timing the fallback only")

    grid = RadialGrid.uniform(args.grid)
    cfg = solver_mod.SolverConfig(grid_size=args.grid)
    print(f"{'order':>8} {'backend':>8} {'step [us]':>10} {'solve [ms]':>11} {'lambda':>20}")
    for k, n in [(1, 2), (2, 2), (5, 10), (20, 20)]:
        order = HessianOrder(k, n)
        op = solver_mod._RadialMap(order, grid)
        values = np.ascontiguousarray(grid.nodes - 1.0)
        lams = []
        for name, mod in backends:
            step = _time(lambda: mod.fixed_point_step(values, op.wa, op.wb, op.rpow,
                                                      op.h, op.k, op.c), args.repeat)
            t0 = time.perf_counter()
            res = _solve_with(mod, order, cfg)
            full = time.perf_counter() - t0
            lams.append(res.lam)
            print(f"{str((k, n)):>8} {name:>8} {step * 1e6:10.1f} {full * 1e3:11.2f} "
                  f"{res.lam:20.15f}")
        if len(lams) == 2:
            print(f"{'':>8} relative difference {abs(lams[0] - lams[1]) / lams[0]:.2e}")


if __name__ == "__main__":
    main()
