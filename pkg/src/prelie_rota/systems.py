"""Polynomial systems for Rota-type operator equations, and residuals of candidates.

An operator is stored as a matrix ``M`` with ``P(e_i) = sum_j M[i][j] e_j``
(the row convention).  Passing ``convention="column"`` reads the same
matrix as ``P(e_i) = sum_j M[j][i] e_j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import ALPHA, AlgebraSpec, basis_vector, multiply, sub, add, scale
from .poly import (
    Polynomial,
    RationalFunction,
    format_rational,
    parse_polynomial,
    parse_rational,
    parse_rational_function,
    substitute,
    variable_table,
)


@dataclass(frozen=True)
class OperatorKind:
    tag: str
    weight: Optional[Fraction] = None

    def __post_init__(self):
        if self.tag not in ("rota-baxter", "reynolds", "nijenhuis", "averaging"):
            raise ValueError(f"unknown operator kind {self.tag!r}")
        if (self.tag == "rota-baxter") != (self.weight is not None):
            raise ValueError("weight is required for rota-baxter and only for it")
        if self.weight is not None:
            object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def label(self) -> str:
        if self.tag == "rota-baxter":
            return f"rota-baxter({format_rational(self.weight)})"
        return self.tag

    @classmethod
    def parse(cls, text: str, weight=None) -> "OperatorKind":
        t = text.strip().lower().replace("_", "-")
        aliases = {"rb": "rota-baxter", "rotabaxter": "rota-baxter", "avg": "averaging", "average": "averaging"}
        t = aliases.get(t, t)
        if t.startswith("rota-baxter(") and t.endswith(")"):
            return cls("rota-baxter", parse_rational(t[len("rota-baxter("):-1]))
        if t == "rota-baxter":
            return cls(t, parse_rational(weight if weight is not None else 0))
        if weight is not None:
            raise ValueError("--weight only applies to rota-baxter")
        return cls(t)


def rota_baxter(weight) -> OperatorKind:
    return OperatorKind("rota-baxter", Fraction(weight))


REYNOLDS = OperatorKind("reynolds")
NIJENHUIS = OperatorKind("nijenhuis")
AVERAGING = OperatorKind("averaging")
AUDIT_KINDS = (rota_baxter(0), rota_baxter(1), REYNOLDS, NIJENHUIS, AVERAGING)


@dataclass(frozen=True)
class EquationSystem:
    algebra: AlgebraSpec
    kind: OperatorKind
    variables: Tuple[str, ...]
    equations: Tuple[Polynomial, ...]
    origins: Tuple[Tuple[int, ...], ...]  # 1-based (i, j, k) or (i, j, k, branch)

    @property
    def unknowns(self) -> Tuple[str, ...]:
        return tuple(v for v in self.variables if v != ALPHA)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "operator": self.kind.tag,
            "weight": None if self.kind.weight is None else format_rational(self.kind.weight),
            "variables": list(self.variables),
            "equations": [
                {"origin": list(o), "poly": str(p)} for o, p in zip(self.origins, self.equations)
            ],
        }

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "EquationSystem":
        if isinstance(data, str):
            data = json.loads(data)
        algebra = AlgebraSpec.from_json(data["algebra"])
        kind = OperatorKind(data["operator"], None if data.get("weight") is None else parse_rational(data["weight"]))
        variables = tuple(data["variables"])
        eqs = tuple(parse_polynomial(e["poly"], variables) for e in data["equations"])
        origins = tuple(tuple(e["origin"]) for e in data["equations"])
        return cls(algebra, kind, variables, eqs, origins)


# ------------------------------------------------------------------ building

@lru_cache(maxsize=None)
def build_system(A: AlgebraSpec, kind: OperatorKind) -> EquationSystem:
    """Coordinate expansion of the operator equation on every basis pair."""
    n = A.dim
    variables = variable_table(n, with_alpha=A.symbolic)
    R = [[Polynomial.var(variables, f"R{i + 1}{j + 1}") for j in range(n)] for i in range(n)]
    c = [[[A.constant_poly(i, j, k, variables) for k in range(n)] for j in range(n)] for i in range(n)]
    zero = Polynomial.const(variables, 0)
    rng = range(n)

    eqs: List[Polynomial] = []
    origins: List[Tuple[int, ...]] = []
    for i in rng:
        for j in rng:
            # P(e_i).e_j and e_i.P(e_j), coordinate m
            left_act = [sum((R[i][a] * c[a][j][m] for a in rng), zero) for m in rng]
            right_act = [sum((R[j][b] * c[i][b][m] for b in rng), zero) for m in rng]
            both = [
                sum((R[i][a] * R[j][b] * c[a][b][m] for a in rng for b in rng), zero) for m in rng
            ]
            for k in rng:
                lhs = both[k]
                if kind.tag == "averaging":
                    rhs1 = sum((right_act[m] * R[m][k] for m in rng), zero)
                    rhs2 = sum((left_act[m] * R[m][k] for m in rng), zero)
                    eqs.append(lhs - rhs1)
                    origins.append((i + 1, j + 1, k + 1, 1))
                    eqs.append(lhs - rhs2)
                    origins.append((i + 1, j + 1, k + 1, 2))
                    continue
                if kind.tag == "rota-baxter":
                    inner = [left_act[m] + right_act[m] + c[i][j][m] * kind.weight for m in rng]
                elif kind.tag == "reynolds":
                    inner = [left_act[m] + right_act[m] - both[m] for m in rng]
                else:  # nijenhuis
                    inner = [
                        left_act[m] + right_act[m] - sum((c[i][j][p] * R[p][m] for p in rng), zero)
                        for m in rng
                    ]
                rhs = sum((inner[m] * R[m][k] for m in rng), zero)
                eqs.append(lhs - rhs)
                origins.append((i + 1, j + 1, k + 1))
    return EquationSystem(A, kind, variables, tuple(eqs), tuple(origins))


# ------------------------------------------------------------------ matrices

Entry = Union[RationalFunction, Polynomial, Fraction, int]


@dataclass(frozen=True)
class OperatorMatrix:
    """Square matrix of rational functions over a parameter table."""

    rows: Tuple[Tuple[RationalFunction, ...], ...]
    params: Tuple[str, ...]

    @classmethod
    def build(cls, rows: Sequence[Sequence[Union[Entry, str]]], params: Sequence[str] = ()) -> "OperatorMatrix":
        params = tuple(params)
        out = []
        for row in rows:
            r = []
            for x in row:
                if isinstance(x, str):
                    r.append(parse_rational_function(x, params))
                elif isinstance(x, Polynomial):
                    r.append(RationalFunction(x.embed(params)))
                elif isinstance(x, RationalFunction):
                    r.append(RationalFunction(x.num.embed(params), x.den.embed(params)))
                else:
                    r.append(RationalFunction.lift(Fraction(x), params))
            out.append(tuple(r))
        n = len(out)
        if any(len(r) != n for r in out):
            raise ValueError("operator matrix must be square")
        return cls(tuple(out), params)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(tuple(zip(*self.rows)), self.params)

    def oriented(self, convention: str) -> "OperatorMatrix":
        if convention == "row":
            return self
        if convention == "column":
            return self.transpose()
        raise ValueError(f"unknown convention {convention!r}")

    def specialize(self, point: Mapping[str, Fraction]) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(e.evaluate(point) for e in row) for row in self.rows)

    def scaled(self, c) -> "OperatorMatrix":
        return OperatorMatrix(tuple(tuple(e * Fraction(c) for e in row) for row in self.rows), self.params)

    def denominators(self) -> List[Polynomial]:
        out = []
        for row in self.rows:
            for e in row:
                if not e.den.is_constant() and e.den not in out:
                    out.append(e.den)
        return out

    def as_strings(self) -> List[List[str]]:
        return [[str(e) for e in row] for row in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"


def concrete(rows: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int = 2) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zero_matrix(n: int = 2) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def _transpose(M):
    return tuple(zip(*M))


# ------------------------------------------------------------------ residuals

def residual(
    A: AlgebraSpec, kind: OperatorKind, M: Union[OperatorMatrix, Sequence[Sequence]], convention: str = "row"
) -> List[RationalFunction]:
    """Every equation of the system evaluated at ``M``.

    Symbolic matrices give rational functions in their parameters (plus
    ``alpha`` when the algebra is symbolic); the candidate satisfies the
    equation iff all of them are identically zero.
    """
    system = build_system(A, kind)
    if not isinstance(M, OperatorMatrix):
        M = OperatorMatrix.build(M)
    if M.dim != A.dim:
        raise ValueError(f"matrix dimension {M.dim} does not match algebra dimension {A.dim}")
    M = M.oriented(convention)
    params = M.params
    if A.symbolic and ALPHA not in params:
        params = params + (ALPHA,)
        M = OperatorMatrix(tuple(tuple(RationalFunction(e.num.embed(params), e.den.embed(params)) for e in row) for row in M.rows), params)
    bindings: Dict[str, object] = {}
    n = A.dim
    for i in range(n):
        for j in range(n):
            bindings[f"R{i + 1}{j + 1}"] = M.rows[i][j]
    if A.symbolic:
        bindings[ALPHA] = Polynomial.var(params, ALPHA)
    return [substitute(p, bindings, params) for p in system.equations]


def residual_values(system: EquationSystem, M: Sequence[Sequence], convention: str = "row") -> List[Fraction]:
    """Residuals at a concrete rational matrix (algebra must be specialized)."""
    if convention == "column":
        M = _transpose(M)
    n = system.algebra.dim
    point = {f"R{i + 1}{j + 1}": Fraction(M[i][j]) for i in range(n) for j in range(n)}
    return [p.evaluate(point) for p in system.equations]


def satisfies(A: AlgebraSpec, kind: OperatorKind, M, convention: str = "row") -> bool:
    if isinstance(M, OperatorMatrix):
        return all(r.is_zero() for r in residual(A, kind, M, convention))
    return not any(residual_values(build_system(A, kind), M, convention))


# ------------------------------------------------------------------ induced products

def apply_operator(M: Sequence[Sequence], v: Sequence) -> tuple:
    """``P(v)`` under the row convention."""
    n = len(M)
    return tuple(sum((v[i] * M[i][j] for i in range(n)), Fraction(0)) for j in range(n))


def induced_product(
    A: AlgebraSpec, kind: OperatorKind, M: Sequence[Sequence], convention: str = "row"
) -> Dict[Tuple[int, int, int], Fraction]:
    """Structure constants (0-based) of ``x * y`` built from the operator's inner expression."""
    if kind.tag not in ("rota-baxter", "nijenhuis"):
        raise ValueError(f"induced product undefined for {kind.label}")
    M = concrete(M)
    if convention == "column":
        M = _transpose(M)
    n = A.dim
    e = [basis_vector(n, i) for i in range(n)]
    out = {}
    for i in range(n):
        for j in range(n):
            v = add(multiply(apply_operator(M, e[i]), e[j], A), multiply(e[i], apply_operator(M, e[j]), A))
            prod = multiply(e[i], e[j], A)
            if kind.tag == "rota-baxter":
                v = add(v, scale(kind.weight, prod))
            else:
                v = sub(v, apply_operator(M, prod))
            for k in range(n):
                out[(i, j, k)] = v[k]
    return out


def morphism_defect(
    A: AlgebraSpec, kind: OperatorKind, M: Sequence[Sequence], convention: str = "row"
) -> List[tuple]:
    """``P(e_i * e_j) - P(e_i).P(e_j)`` for every pair, in row-major pair order."""
    d = induced_product(A, kind, M, convention)
    M = concrete(M)
    if convention == "column":
        M = _transpose(M)
    n = A.dim
    e = [basis_vector(n, i) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            star = tuple(d[(i, j, k)] for k in range(n))
            out.append(sub(apply_operator(M, star), multiply(apply_operator(M, e[i]), apply_operator(M, e[j]), A)))
    return out
