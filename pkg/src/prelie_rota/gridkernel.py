"""Grid zero-set search over integer-scaled polynomial systems.

The compiled ``_gridkernel`` extension is used when it was built and the
values are small enough for 64-bit arithmetic; otherwise the pure-Python
kernel runs.  Set ``PRELIE_ROTA_PURE=1`` to force the Python path.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from . import _gridkernel_py
from .poly import Polynomial

try:
    if os.environ.get("PRELIE_ROTA_PURE"):
        raise ImportError("pure Python requested")
    from . import _gridkernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_INT64_SAFE = 2 ** 62


def scale_system(polys: Sequence[Polynomial], grid: Sequence[Fraction]):
    """Integer polynomials whose zeros at ``D*grid`` match the originals' zeros at ``grid``."""
    D = 1
    for g in grid:
        D = lcm(D, Fraction(g).denominator)
    values = [int(Fraction(g) * D) for g in grid]
    out = []
    for p in polys:
        if p.is_zero():
            continue
        d = p.total_degree()
        L = 1
        for c in p.terms.values():
            L = lcm(L, c.denominator)
        terms = []
        for m, c in p.terms.items():
            coeff = c * L * D ** (d - sum(m))
            terms.append((int(coeff), tuple(m)))
        out.append(terms)
    return out, values


def _bound(int_polys, values) -> int:
    vmax = max((abs(v) for v in values), default=0) or 1
    worst = 0
    for p in int_polys:
        s = sum(abs(c) * vmax ** sum(e) for c, e in p)
        worst = max(worst, s)
    return worst


def zero_points(polys: Sequence[Polynomial], nvars: int, grid: Sequence[Fraction], backend: str | None = None) -> List[Tuple[int, ...]]:
    """Grid indices (lexicographic, first variable slowest) where every poly vanishes."""
    int_polys, values = scale_system(polys, grid)
    use = backend or BACKEND
    if use == "cython" and (_compiled is None or _bound(int_polys, values) >= _INT64_SAFE):
        use = "python"
    if use == "cython":
        return _compiled.zero_points(int_polys, nvars, values)
    return _gridkernel_py.zero_points(int_polys, nvars, values)
