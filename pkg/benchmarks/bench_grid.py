"""Time the compiled and pure-Python grid kernels on the full audit workload.

Usage: python benchmarks/bench_grid.py [--repeat N] [--grid CSV]
"""
import argparse
import time

from prelie_rota.algebra import catalog_instances
from prelie_rota.gridkernel import BACKEND, zero_points
from prelie_rota.poly import parse_rational
from prelie_rota.solver import DEFAULT_GRID
from prelie_rota.systems import AUDIT_KINDS, build_system


def workload():
    return [build_system(A, k) for A in catalog_instances() for k in AUDIT_KINDS]


def run(systems, grid, backend):
    return [zero_points(s.equations, len(s.variables), grid, backend=backend) for s in systems]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--grid", default=None, help="comma separated rationals (default: audit grid)")
    args = ap.parse_args()
    grid = tuple(parse_rational(t) for t in args.grid.split(",")) if args.grid else DEFAULT_GRID
    systems = workload()
    print(f"{len(systems)} systems, {len(grid) ** 4} grid points each, compiled kernel available: {BACKEND == 'cython'}")
    results = {}
    for backend in ("python", "cython"):
        if backend == "cython" and BACKEND != "cython":
            print("cython: not built, skipped")
            continue
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            out = run(systems, grid, backend)
            best = min(best, time.perf_counter() - t0)
        results[backend] = (best, out)
        print(f"{backend:7s} best of {args.repeat}: {best:.3f} s")
    if len(results) == 2:
        same = results["python"][1] == results["cython"][1]
        print(f"speedup: {results['python'][0] / results['cython'][0]:.1f}x, identical zero sets: {same}")


if __name__ == "__main__":
    main()
