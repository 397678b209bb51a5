"""Finite-dimensional algebras by structure constants, and the 2-dimensional catalog."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .poly import Polynomial, RationalFunction, format_polynomial, format_rational, parse_polynomial, parse_rational

# Sentinel for keeping the catalog parameter symbolic.
ALPHA = "alpha"
ALPHA_SAMPLES = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))

Index3 = Tuple[int, int, int]
# constant term, coefficient of alpha
AlphaLinear = Tuple[Fraction, Fraction]
Vector = Tuple[object, ...]


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure constants ``e_i * e_j = sum_k c[i][j][k] e_k`` (0-based indices).

    Each constant is affine in the parameter alpha; ``alpha`` holds the
    specialization, or None when the algebra is kept symbolic (or has no
    parameter at all).
    """

    name: str
    dim: int
    constants: Mapping[Index3, AlphaLinear] = field(default_factory=dict)
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        clean = {}
        for (i, j, k), (a, b) in self.constants.items():
            if not all(0 <= t < self.dim for t in (i, j, k)):
                raise ValueError(f"index {(i, j, k)} out of range for dim {self.dim}")
            a, b = Fraction(a), Fraction(b)
            if a or b:
                clean[(i, j, k)] = (a, b)
        object.__setattr__(self, "constants", dict(sorted(clean.items())))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", Fraction(self.alpha))

    def __hash__(self):
        return hash((self.name, self.dim, tuple(self.constants.items()), self.alpha))

    @property
    def parametric(self) -> bool:
        return any(b for _, b in self.constants.values())

    @property
    def symbolic(self) -> bool:
        return self.parametric and self.alpha is None

    @property
    def label(self) -> str:
        if self.parametric and self.alpha is not None:
            return f"{self.name}[alpha={format_rational(self.alpha)}]"
        return self.name

    def specialize(self, alpha) -> "AlgebraSpec":
        return AlgebraSpec(self.name, self.dim, self.constants, Fraction(alpha))

    def constant(self, i: int, j: int, k: int) -> Fraction:
        a, b = self.constants.get((i, j, k), (Fraction(0), Fraction(0)))
        if b and self.alpha is None:
            raise ValueError(f"{self.name}: constant ({i},{j},{k}) depends on unspecialized alpha")
        return a + b * (self.alpha or 0)

    def constant_poly(self, i: int, j: int, k: int, variables: Sequence[str]) -> Polynomial:
        a, b = self.constants.get((i, j, k), (Fraction(0), Fraction(0)))
        if b and self.alpha is None:
            return Polynomial.const(variables, a) + Polynomial.var(variables, ALPHA) * b
        return Polynomial.const(variables, a + b * (self.alpha or 0))

    def table(self) -> List[List[List[Fraction]]]:
        n = self.dim
        return [[[self.constant(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]

    def scalars_for(self, sample) -> Dict[Index3, object]:
        """Nonzero constants coerced to the ring of ``sample``."""
        out = {}
        for (i, j, k) in self.constants:
            if self.symbolic:
                if not isinstance(sample, (Polynomial, RationalFunction)):
                    raise ValueError(f"{self.name} has symbolic alpha; use polynomial coordinates")
                c = self.constant_poly(i, j, k, sample.vars)
                out[(i, j, k)] = c if isinstance(sample, Polynomial) else RationalFunction(c)
            else:
                out[(i, j, k)] = self.constant(i, j, k)
        return out

    # -- JSON
    def to_json(self) -> dict:
        products: Dict[str, Dict[str, str]] = {}
        for (i, j, k), (a, b) in self.constants.items():
            products.setdefault(f"{i + 1},{j + 1}", {})[str(k + 1)] = _format_affine(a, b)
        out = {"name": self.name, "dim": self.dim, "products": products}
        if self.alpha is not None:
            out["alpha"] = format_rational(self.alpha)
        return out

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "AlgebraSpec":
        if isinstance(data, str):
            data = json.loads(data)
        dim = int(data["dim"])
        constants = {}
        for pair, row in data.get("products", {}).items():
            i, j = (int(t) - 1 for t in pair.split(","))
            for k, text in row.items():
                constants[(i, j, int(k) - 1)] = _parse_affine(text)
        alpha = data.get("alpha")
        return cls(data["name"], dim, constants, parse_rational(alpha) if alpha is not None else None)


def _format_affine(a: Fraction, b: Fraction) -> str:
    p = Polynomial((ALPHA,), {(0,): a, (1,): b})
    return format_polynomial(p).replace(" ", "")


def _parse_affine(text: str) -> AlphaLinear:
    p = parse_polynomial(str(text), (ALPHA,))
    if p.total_degree() > 1:
        raise ValueError(f"structure constant {text!r} is not affine in alpha")
    return (p.terms.get((0,), Fraction(0)), p.terms.get((1,), Fraction(0)))


# ------------------------------------------------------------------ catalog

_F = Fraction
_CATALOG: Dict[str, Dict[Index3, AlphaLinear]] = {
    # e1*e1 = e1 + e2, e2*e1 = e2
    "A1": {(0, 0, 0): (_F(1), _F(0)), (0, 0, 1): (_F(1), _F(0)), (1, 0, 1): (_F(1), _F(0))},
    # e1*e1 = e1 + e2, e1*e2 = e2
    "A2": {(0, 0, 0): (_F(1), _F(0)), (0, 0, 1): (_F(1), _F(0)), (0, 1, 1): (_F(1), _F(0))},
    # e1*e1 = e2
    "A3": {(0, 0, 1): (_F(1), _F(0))},
    # e2*e1 = e1
    "A4": {(1, 0, 0): (_F(1), _F(0))},
    # e1*e1 = e1, e1*e2 = alpha e2
    "A5": {(0, 0, 0): (_F(1), _F(0)), (0, 1, 1): (_F(0), _F(1))},
    # e1*e1 = e1, e1*e2 = alpha e2, e2*e1 = e2
    "A6": {(0, 0, 0): (_F(1), _F(0)), (0, 1, 1): (_F(0), _F(1)), (1, 0, 1): (_F(1), _F(0))},
    # e1*e1 = e1, e2*e2 = e2
    "A7": {(0, 0, 0): (_F(1), _F(0)), (1, 1, 1): (_F(1), _F(0))},
    # e1*e1 = e1, e1*e2 = 2e2, e2*e1 = e1/2 + e2, e2*e2 = e2
    "A8": {
        (0, 0, 0): (_F(1), _F(0)),
        (0, 1, 1): (_F(2), _F(0)),
        (1, 0, 0): (_F(1, 2), _F(0)),
        (1, 0, 1): (_F(1), _F(0)),
        (1, 1, 1): (_F(1), _F(0)),
    },
}
CATALOG_NAMES = tuple(_CATALOG)
PARAMETRIC_NAMES = ("A5", "A6")


def catalog(name: str, alpha=None) -> AlgebraSpec:
    """Return a catalog algebra; ``alpha`` is a rational or :data:`ALPHA` for A5/A6."""
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
    if name in PARAMETRIC_NAMES:
        if alpha is None:
            raise ValueError(f"{name} needs alpha (a rational or ALPHA for symbolic)")
        value = None if alpha == ALPHA else parse_rational(alpha)
        return AlgebraSpec(name, 2, _CATALOG[name], value)
    if alpha is not None:
        raise ValueError(f"{name} takes no alpha parameter")
    return AlgebraSpec(name, 2, _CATALOG[name])


def catalog_instances(alphas: Iterable = ALPHA_SAMPLES) -> List[AlgebraSpec]:
    """Every catalog algebra, with A5/A6 specialized at each alpha sample."""
    out = []
    for name in CATALOG_NAMES:
        if name in PARAMETRIC_NAMES:
            out.extend(catalog(name, a) for a in alphas)
        else:
            out.append(catalog(name))
    return out


# ------------------------------------------------------------------ products

def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(t == i)) for t in range(n))


def multiply(u: Sequence, v: Sequence, A: AlgebraSpec) -> Vector:
    """Coordinates of ``u * v``; entries may be rationals or polynomials."""
    n = A.dim
    if len(u) != n or len(v) != n:
        raise ValueError(f"dimension mismatch: expected length {n}")
    sample = next((x for x in (*u, *v) if isinstance(x, (Polynomial, RationalFunction))), Fraction(0))
    zero = sample * 0 if isinstance(sample, (Polynomial, RationalFunction)) else Fraction(0)
    out = [zero] * n
    for (i, j, k), c in A.scalars_for(sample).items():
        ui, vj = u[i], v[j]
        if _is_zero(ui) or _is_zero(vj):
            continue
        out[k] = out[k] + ui * vj * c
    return tuple(out)


def _is_zero(x) -> bool:
    if isinstance(x, (Polynomial, RationalFunction)):
        return x.is_zero()
    return x == 0


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(_is_zero(x) for x in u)


def associator(A: AlgebraSpec, x, y, z) -> Vector:
    return sub(multiply(x, multiply(y, z, A), A), multiply(multiply(x, y, A), z, A))


def left_prelie_defect(A: AlgebraSpec, i: int, j: int, k: int, right: bool = False) -> Vector:
    """Associator symmetry defect on basis elements.

    Left: ``(x,y,z) - (y,x,z)``; right: ``(x,y,z) - (x,z,y)`` with
    ``x, y, z = e_i, e_j, e_k``.
    """
    n = A.dim
    for t in (i, j, k):
        if not 0 <= t < n:
            raise IndexError(f"basis index {t} out of range")
    if A.symbolic:
        variables = (ALPHA,)
        e = [tuple(Polynomial.const(variables, int(s == t)) for s in range(n)) for t in range(n)]
    else:
        e = [basis_vector(n, t) for t in range(n)]
    x, y, z = e[i], e[j], e[k]
    if right:
        return sub(associator(A, x, y, z), associator(A, x, z, y))
    return sub(associator(A, x, y, z), associator(A, y, x, z))


def prelie_check(A: AlgebraSpec) -> Dict[str, object]:
    """Count basis triples on which the left and right identities hold."""
    n = A.dim
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    left_fail = [t for t in triples if not is_zero_vector(left_prelie_defect(A, *t))]
    right_fail = [t for t in triples if not is_zero_vector(left_prelie_defect(A, *t, right=True))]
    return {
        "algebra": A.label,
        "triples": len(triples),
        "left_pass": len(triples) - len(left_fail),
        "right_pass": len(triples) - len(right_fail),
        "left_failures": [[a + 1 for a in t] for t in left_fail],
        "right_failures": [[a + 1 for a in t] for t in right_fail],
    }


def commutator_algebra(A: AlgebraSpec) -> Tuple[AlgebraSpec, bool]:
    """Bracket ``[x, y] = x*y - y*x`` and whether Jacobi holds on all basis triples."""
    n = A.dim
    consts = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a1, b1 = A.constants.get((i, j, k), (Fraction(0), Fraction(0)))
                a2, b2 = A.constants.get((j, i, k), (Fraction(0), Fraction(0)))
                consts[(i, j, k)] = (a1 - a2, b1 - b2)
    B = AlgebraSpec(f"[{A.name}]", n, consts, A.alpha)
    return B, all(is_zero_vector(v) for v in jacobi_defects(B).values())


def jacobi_defects(B: AlgebraSpec) -> Dict[Index3, Vector]:
    """``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`` on every basis triple."""
    n = B.dim
    if B.symbolic:
        e = [tuple(Polynomial.const((ALPHA,), int(s == t)) for s in range(n)) for t in range(n)]
    else:
        e = [basis_vector(n, t) for t in range(n)]
    out = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = e[i], e[j], e[k]
                t1 = multiply(x, multiply(y, z, B), B)
                t2 = multiply(y, multiply(z, x, B), B)
                t3 = multiply(z, multiply(x, y, B), B)
                out[(i, j, k)] = add(add(t1, t2), t3)
    return out


def is_antisymmetric(B: AlgebraSpec) -> bool:
    n = B.dim
    return all(
        B.constants.get((i, j, k), (0, 0)) == tuple(-x for x in B.constants.get((j, i, k), (Fraction(0), Fraction(0))))
        for i in range(n) for j in range(n) for k in range(n)
    )
