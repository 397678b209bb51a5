"""Complete solution sets of operator systems as unions of irreducible families.

The decomposition works on a lexicographic Groebner basis and repeatedly
does one of four things, in this order of preference:

1. eliminate a variable that occurs linearly with a constant coefficient;
2. split a univariate polynomial at its rational roots;
3. split a polynomial with a monomial factor into "variable is zero" branches
   and a "all those variables nonzero" branch;
4. eliminate a variable that occurs linearly with a polynomial coefficient,
   branching on whether that coefficient vanishes (vanishing case first).

When none applies, a partial derivative of a generator that lies in the
radical but not in the ideal is added and the branch is retried.  Branches
that still admit no step end as algebraic families described only
implicitly.  Every leaf is closed up by saturation, so each family is the
Zariski closure of its branch; families contained in others are dropped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import ALPHA
from .groebner import GroebnerBasis, buchberger, in_radical, normal_form, saturate
from .gridkernel import zero_points
from .poly import (
    Polynomial,
    RationalFunction,
    exact_quotient,
    format_rational,
    parse_polynomial,
    parse_rational,
    parse_rational_function,
    substitute,
)
from .systems import EquationSystem, build_system

DEFAULT_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))
MAX_BRANCHES = 64

Matrix = Tuple[Tuple[Fraction, ...], ...]


class CaseSplitError(RuntimeError):
    """Raised when a decomposition needs more branches than allowed."""

    def __init__(self, message, families, uncovered):
        super().__init__(message)
        self.families = families
        self.uncovered = uncovered


@dataclass(frozen=True)
class SolutionFamily:
    """Irreducible piece of a solution set.

    ``implicit`` generates the ideal of the family (reduced lex basis), so
    the family is exactly its common zero set minus the zeros of any
    ``inequations``.  ``parametric`` maps every unknown to a rational
    function of ``free_params`` and covers a dense part of the family; its
    denominators are listed by :meth:`domain`.  Algebraic families have no
    rational parametrization and ``parametric`` is None.
    """

    variables: Tuple[str, ...]
    free_params: Tuple[str, ...]
    parametric: Optional[Tuple[Tuple[str, RationalFunction], ...]]
    implicit: Tuple[Polynomial, ...]
    inequations: Tuple[Polynomial, ...] = ()
    generic: bool = False

    @property
    def rational(self) -> bool:
        return self.parametric is not None

    def parametric_map(self) -> Dict[str, RationalFunction]:
        return dict(self.parametric or ())

    def domain(self) -> List[Polynomial]:
        out = []
        for _, f in self.parametric or ():
            if not f.den.is_constant() and f.den not in out:
                out.append(f.den)
        return out

    def matrix(self, n: int) -> List[List[RationalFunction]]:
        pm = self.parametric_map()
        return [[pm[f"R{i + 1}{j + 1}"] for j in range(n)] for i in range(n)]

    def constraint_text(self) -> str:
        return "; ".join(str(p) for p in self.implicit) + (
            " | " + "; ".join(str(q) for q in self.inequations) if self.inequations else ""
        )

    def sort_key(self):
        return (len(self.implicit) + len(self.inequations), self.constraint_text())

    def sample(self, values: Dict[str, Fraction]) -> Dict[str, Fraction]:
        return {v: f.evaluate(values) for v, f in self.parametric}

    def to_json(self) -> dict:
        return {
            "free_params": list(self.free_params),
            "parametric": None if self.parametric is None else {v: str(f) for v, f in self.parametric},
            "implicit": [str(p) for p in self.implicit],
            "inequations": [str(q) for q in self.inequations],
            "kind": "rational" if self.rational else "algebraic",
            "generic": self.generic,
        }

    @classmethod
    def from_json(cls, data: dict, variables: Sequence[str]) -> "SolutionFamily":
        variables = tuple(variables)
        free = tuple(data["free_params"])
        param = None
        if data.get("parametric") is not None:
            param = tuple((v, parse_rational_function(t, free)) for v, t in data["parametric"].items())
        return cls(
            variables,
            free,
            param,
            tuple(parse_polynomial(t, variables) for t in data["implicit"]),
            tuple(parse_polynomial(t, variables) for t in data.get("inequations", [])),
            bool(data.get("generic", False)),
        )


# ------------------------------------------------------------------ helpers

def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(g: Polynomial, v: str) -> List[Fraction]:
    """Distinct rational roots of a polynomial in the single variable ``v``."""
    coeffs = {d: c.constant_value() for d, c in g.coefficients_in(v).items()}
    deg = max(coeffs)
    roots = []
    low = min(coeffs)
    if low > 0:
        roots.append(Fraction(0))
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {d: int(c * den) for d, c in coeffs.items()}
    a0, an = ints[low], ints[deg]
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (p, -p):
                r = Fraction(s, q)
                if r in roots:
                    continue
                if sum(c * r ** (d - low) for d, c in ints.items()) == 0:
                    roots.append(r)
    return sorted(roots)


def _strip_roots(g: Polynomial, v: str, roots: Sequence[Fraction]) -> Polynomial:
    x = Polynomial.var(g.vars, v)
    h = g
    for r in roots:
        lin = x - r
        while True:
            q = exact_quotient(h, lin)
            if q is None:
                break
            h = q
    return h


def _derivative(p: Polynomial, v: str) -> Polynomial:
    i = p.vars.index(v)
    out = {}
    for m, c in p.terms.items():
        if m[i]:
            out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c * m[i]
    return Polynomial._raw(p.vars, out)


def _subst_poly(p: Polynomial, v: str, expr: RationalFunction) -> Polynomial:
    """Numerator of ``p`` after ``v := expr`` (denominator is a nonzero factor)."""
    if p.degree(v) <= 0:
        return p
    return substitute(p, {v: expr}, p.vars).num


def _compose(expr: RationalFunction, bindings: Dict[str, RationalFunction]) -> RationalFunction:
    num = substitute(expr.num, bindings, expr.vars) if bindings else RationalFunction(expr.num)
    den = substitute(expr.den, bindings, expr.vars) if bindings else RationalFunction(expr.den)
    return num / den


@dataclass
class _Branch:
    eqs: List[Polynomial]
    ineqs: List[Polynomial]
    pivots: List[Tuple[str, RationalFunction]] = field(default_factory=list)


@dataclass
class _Leaf:
    pivots: List[Tuple[str, RationalFunction]]
    remaining: List[Polynomial]
    ineqs: List[Polynomial]


class _Decomposer:
    def __init__(self, variables: Tuple[str, ...], max_branches: int):
        self.variables = variables
        self.max_branches = max_branches
        self.leaves: List[_Leaf] = []
        self.visited = 0
        # alpha is split on only as a last resort
        self.rank = {v: (v == ALPHA, i) for i, v in enumerate(variables)}

    def run(self, eqs: Sequence[Polynomial]):
        stack = [_Branch(list(eqs), [])]
        while stack:
            br = stack.pop()
            self.visited += 1
            if self.visited > self.max_branches:
                raise CaseSplitError(
                    f"decomposition exceeded {self.max_branches} branches", self.leaves, [br] + stack
                )
            children = self._step(br)
            # children are listed in exploration order; stack pops from the end
            stack.extend(reversed(children))

    def _step(self, br: _Branch) -> List[_Branch]:
        # Loop over cheap constant-coefficient eliminations without counting branches.
        while True:
            G = buchberger(br.eqs, "lex") if br.eqs else GroebnerBasis((), "lex", self.variables)
            if G.is_unit():
                return []
            ineqs = []
            for q in br.ineqs:
                r = normal_form(q, G.polys, "lex")
                if r.is_zero():
                    return []
                if not r.is_constant():
                    r = r.primitive()
                    if r not in ineqs:
                        ineqs.append(r)
            br = _Branch(list(G.polys), ineqs, br.pivots)
            if not br.eqs:
                self.leaves.append(_Leaf(br.pivots, [], br.ineqs))
                return []
            piv = self._linear_pivot(br.eqs, constant=True)
            if piv is None:
                break
            g, v, c, rest = piv
            expr = RationalFunction(-rest * (1 / c.constant_value()))
            br = _Branch(
                [_subst_poly(h, v, expr) for h in br.eqs if h is not g],
                [_subst_poly(q, v, expr) for q in br.ineqs],
                br.pivots + [(v, expr)],
            )
            br.eqs = [h for h in br.eqs if not h.is_zero()]

        # rational roots of a univariate polynomial
        for g in br.eqs:
            used = g.used_vars()
            if len(used) == 1 and g.degree(used[0]) >= 2:
                v = used[0]
                roots = rational_roots(g, v)
                if not roots:
                    continue
                x = Polynomial.var(g.vars, v)
                children = [_Branch(br.eqs + [x - r], list(br.ineqs), br.pivots) for r in roots]
                h = _strip_roots(g, v, roots)
                if h.total_degree() >= 1:
                    others = [e for e in br.eqs if e is not g]
                    children.append(_Branch(others + [h], list(br.ineqs), br.pivots))
                return children

        # monomial factor split
        for g in sorted(br.eqs, key=lambda p: (len(p.terms), str(p))):
            m = g.monomial_content()
            if any(m) and len(g.terms) > 1:
                vs = [v for v, e in zip(g.vars, m) if e]
                vs.sort(key=self.rank.get)
                children = []
                for v in vs:
                    children.append(_Branch(br.eqs + [Polynomial.var(g.vars, v)], list(br.ineqs), br.pivots))
                stripped = Polynomial._raw(g.vars, {tuple(a - b for a, b in zip(k, m)): c for k, c in g.terms.items()})
                others = [e for e in br.eqs if e is not g]
                children.append(
                    _Branch(others + [stripped], br.ineqs + [Polynomial.var(g.vars, v) for v in vs], br.pivots)
                )
                return children

        piv = self._linear_pivot(br.eqs, constant=False)
        if piv is not None:
            g, v, c, rest = piv
            vanish = _Branch(br.eqs + [c], list(br.ineqs), br.pivots)
            expr = RationalFunction(-rest, c)
            solved = _Branch(
                [e for e in (_subst_poly(h, v, expr) for h in br.eqs if h is not g) if not e.is_zero()],
                [_subst_poly(q, v, expr) for q in br.ineqs] + [c],
                br.pivots + [(v, expr)],
            )
            return [vanish, solved]

        extra = self._radical_candidate(br.eqs)
        if extra is not None:
            return [_Branch(br.eqs + [extra], list(br.ineqs), br.pivots)]

        self.leaves.append(_Leaf(br.pivots, list(br.eqs), list(br.ineqs)))
        return []

    def _radical_candidate(self, eqs: List[Polynomial]) -> Optional[Polynomial]:
        """A partial derivative of a generator lying in the radical but not the ideal.

        Repeated factors such as ``(x - y)^2`` leave no linear variable; their
        derivatives recover the reduced factor.
        """
        for g in sorted(eqs, key=lambda p: (p.total_degree(), len(p.terms), str(p))):
            for v in sorted(g.used_vars(), key=self.rank.get):
                d = _derivative(g, v)
                if d.is_zero() or d.is_constant():
                    continue
                if normal_form(d, eqs, "lex").is_zero():
                    continue
                if in_radical(eqs, d):
                    return d.primitive()
        return None

    def _linear_pivot(self, eqs: List[Polynomial], constant: bool):
        G = eqs
        best = None
        for g in G:
            for v in g.used_vars():
                parts = g.coefficients_in(v)
                if max(parts) != 1:
                    continue
                c = parts[1]
                if c.is_constant() != constant:
                    continue
                if not constant and normal_form(c, G, "lex").is_zero():
                    continue
                rest = parts.get(0, Polynomial.const(g.vars, 0))
                key = (len(c.terms), c.total_degree(), len(g.terms), self.rank[v], str(g))
                if best is None or key < best[0]:
                    best = (key, (g, v, c, rest))
        return None if best is None else best[1]


def _close_leaf(leaf: _Leaf, variables: Tuple[str, ...], generic: bool) -> Optional[SolutionFamily]:
    """Turn a branch leaf into its Zariski closure, or None when empty."""
    pivoted = {v for v, _ in leaf.pivots}
    # back-substitute later pivots into earlier expressions
    final: Dict[str, RationalFunction] = {}
    for v, expr in reversed(leaf.pivots):
        final[v] = _compose(expr, final)
    gens = []
    dens = Polynomial.const(variables, 1)
    for v, f in final.items():
        gens.append(f.den * Polynomial.var(variables, v) - f.num)
        dens = dens * f.den
    gens.extend(leaf.remaining)
    h = dens
    for q in leaf.ineqs:
        h = h * q
    if leaf.remaining and in_radical(gens, h):
        return None
    if h.is_constant():
        I = buchberger(gens, "lex") if gens else GroebnerBasis((), "lex", variables)
    else:
        I = saturate(gens, h, "lex")
    if I.is_unit():
        return None
    implicit = tuple(p.primitive() for p in I.polys)
    if leaf.remaining:
        return SolutionFamily(variables, (), None, implicit, (), generic)
    free = tuple(v for v in variables if v not in pivoted)
    param = []
    for v in variables:
        if v in final:
            f = final[v]
            param.append((v, RationalFunction(f.num.embed(free), f.den.embed(free))))
        else:
            param.append((v, RationalFunction(Polynomial.var(free, v))))
    return SolutionFamily(variables, free, tuple(param), implicit, (), generic)


def _contained(small: SolutionFamily, big: SolutionFamily) -> bool:
    """Sufficient test for ``closure(small) <= closure(big)`` via ideal inclusion."""
    if big.inequations or small.inequations:
        return False
    basis = list(small.implicit)
    return all(normal_form(p, basis, "lex").is_zero() for p in big.implicit)


# ------------------------------------------------------------------ public API

def _specialized(system: EquationSystem, alpha) -> EquationSystem:
    if alpha is None:
        return system
    A = system.algebra
    if not A.parametric:
        raise ValueError(f"{A.name} has no alpha parameter")
    if A.alpha is not None:
        if Fraction(alpha) != A.alpha:
            raise ValueError("system already specialized at a different alpha")
        return system
    return build_system(A.specialize(parse_rational(alpha)), system.kind)


def solve_polynomials(
    eqs: Sequence[Polynomial], variables: Sequence[str], max_branches: int = MAX_BRANCHES, generic: bool = False
) -> List[SolutionFamily]:
    variables = tuple(variables)
    dec = _Decomposer(variables, max_branches)
    dec.run([e for e in eqs if not e.is_zero()])
    fams: List[SolutionFamily] = []
    for leaf in dec.leaves:
        f = _close_leaf(leaf, variables, generic)
        if f is not None:
            fams.append(f)
    fams.sort(key=SolutionFamily.sort_key)
    unique: List[SolutionFamily] = []
    for f in fams:
        if any(u.implicit == f.implicit for u in unique):
            continue
        unique.append(f)
    kept = []
    for i, f in enumerate(unique):
        # among mutually contained families keep the first in sort order
        if any(_contained(f, g) and (not _contained(g, f) or j < i) for j, g in enumerate(unique) if j != i):
            continue
        kept.append(f)
    return kept


def solve_families(
    system: EquationSystem, alpha=None, max_branches: int = MAX_BRANCHES
) -> List[SolutionFamily]:
    """Irreducible families whose union is the complex solution set of ``system``.

    Parametric algebras should be specialized (via ``alpha`` or beforehand);
    a symbolic alpha is treated as one more unknown and the families are
    flagged ``generic``.
    """
    system = _specialized(system, alpha)
    generic = system.algebra.symbolic
    return solve_polynomials(system.equations, system.variables, max_branches, generic)


def family_contains(family: SolutionFamily, point: Union[Matrix, Dict[str, Fraction]]) -> bool:
    if not isinstance(point, dict):
        n = len(point)
        point = {f"R{i + 1}{j + 1}": Fraction(point[i][j]) for i in range(n) for j in range(n)}
    if any(p.evaluate(point) != 0 for p in family.implicit):
        return False
    return all(q.evaluate(point) != 0 for q in family.inequations)


def family_residuals(system: EquationSystem, family: SolutionFamily) -> List[RationalFunction]:
    """System equations composed with the family's parametric form."""
    if family.parametric is None:
        raise ValueError("algebraic family has no parametric form")
    bindings = family.parametric_map()
    return [substitute(p, bindings, family.free_params) for p in system.equations]


def family_is_sound(system: EquationSystem, family: SolutionFamily) -> bool:
    """Every system equation vanishes on the family.

    Rational families are checked by composition with the parametric form;
    algebraic ones by ideal membership in the family ideal.
    """
    if family.parametric is not None:
        return all(r.is_zero() for r in family_residuals(system, family))
    basis = list(family.implicit)
    return all(normal_form(p, basis, "lex").is_zero() for p in system.equations)


def grid_enumerate(system: EquationSystem, grid: Iterable = DEFAULT_GRID, alpha=None, backend: str | None = None) -> List[Matrix]:
    """Every matrix with entries in ``grid`` solving the system, in lexicographic entry order."""
    system = _specialized(system, alpha)
    if system.algebra.symbolic:
        raise ValueError("grid enumeration needs a specialized alpha")
    values = sorted({parse_rational(g) if isinstance(g, str) else Fraction(g) for g in grid})
    if not values:
        raise ValueError("grid must be nonempty")
    n = system.algebra.dim
    hits = zero_points(system.equations, len(system.variables), values, backend)
    out = []
    for idx in hits:
        flat = [values[i] for i in idx]
        out.append(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
    return out


def grid_from_families(families: Sequence[SolutionFamily], n: int, grid: Iterable = DEFAULT_GRID) -> List[Matrix]:
    """Grid matrices contained in at least one family (same ordering as :func:`grid_enumerate`)."""
    values = sorted({Fraction(g) for g in grid})
    out = []
    for flat in product(values, repeat=n * n):
        M = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if any(family_contains(f, M) for f in families):
            out.append(M)
    return out


def format_matrix(M: Matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in M]


def families_to_json(families: Sequence[SolutionFamily]) -> List[dict]:
    return [f.to_json() for f in families]
