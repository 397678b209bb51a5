import os
import subprocess
import sys
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prelie_rota import gridkernel
from prelie_rota.gridkernel import scale_system, zero_points
from prelie_rota.poly import Polynomial

V = ("a", "b", "c")
needs_ext = pytest.mark.skipif(gridkernel.BACKEND != "cython", reason="compiled kernel not built")


def brute(polys, grid):
    out = []
    for idx in product(range(len(grid)), repeat=len(V)):
        pt = dict(zip(V, (grid[i] for i in idx)))
        if all(p.evaluate(pt) == 0 for p in polys):
            out.append(idx)
    return out


coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3)
poly_st = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), coeffs, max_size=3).map(lambda t: Polynomial(V, t))
grid_st = st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=2), min_size=1, max_size=4, unique=True).map(sorted)


def test_scale_system_preserves_zeros():
    a, b, _ = Polynomial.gens(V)
    p = Fraction(1, 2) * a * b - Fraction(1, 3) * a + 1
    grid = [Fraction(-1, 2), Fraction(0), Fraction(2, 3)]
    ints, values = scale_system([p], grid)
    assert values == [-3, 0, 4]
    assert all(isinstance(c, int) for c, _ in ints[0])


@settings(max_examples=60, deadline=None)
@given(st.lists(poly_st, min_size=1, max_size=3), grid_st)
def test_python_kernel_matches_brute_force(polys, grid):
    assert zero_points(polys, 3, grid, backend="python") == brute(polys, grid)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(st.lists(poly_st, min_size=1, max_size=3), grid_st)
def test_backends_agree(polys, grid):
    assert zero_points(polys, 3, grid, backend="cython") == zero_points(polys, 3, grid, backend="python")


@needs_ext
def test_overflow_guard_falls_back():
    a, b, c = Polynomial.gens(V)
    big = Polynomial(V, {(2, 0, 0): Fraction(10**18)}) - Polynomial(V, {(0, 0, 0): Fraction(10**18)})
    grid = [Fraction(-1), Fraction(1, 2), Fraction(1)]
    assert zero_points([big], 3, grid, backend="cython") == brute([big], grid)


def test_unit_and_zero_systems():
    one = Polynomial.const(V, 1)
    grid = [Fraction(0), Fraction(1)]
    assert zero_points([one], 3, grid) == []
    assert len(zero_points([Polynomial.const(V, 0)], 3, grid)) == 8
    assert len(zero_points([], 3, grid)) == 8


def test_pure_env_forces_python():
    env = dict(os.environ, PRELIE_ROTA_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import prelie_rota.gridkernel as g; print(g.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
