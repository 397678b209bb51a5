"""Exact sparse multivariate polynomials and rational functions over Q.

A polynomial lives over an ordered tuple of variable names (its variable
table) and stores a dict ``exponent tuple -> Fraction`` with no zero
coefficients.  Two polynomials over different tables never mix implicitly;
use :meth:`Polynomial.embed` to move one into a larger table.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal-free integer string into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"malformed rational: {text!r}")
    value = Fraction(s)
    return value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- orders

def lex_key(m: Monomial):
    return m


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _elim_key(k: int) -> Callable[[Monomial], tuple]:
    def key(m: Monomial):
        return (sum(m[:k]), m[:k], grevlex_key(m[k:]))
    return key


def monomial_key(order: str) -> Callable[[Monomial], object]:
    """Return a sort key for the named order.

    ``lex`` and ``grevlex`` are the usual orders with the first variable
    largest; ``elimK`` ranks by total degree in the first K variables before
    falling back to grevlex on the rest (an elimination order for them).
    """
    if order == "lex":
        return lex_key
    if order == "grevlex":
        return grevlex_key
    if order.startswith("elim"):
        return _elim_key(int(order[4:]))
    raise ValueError(f"unknown monomial order {order!r}")


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------- polynomial

class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, Scalar] | None = None):
        self.vars: Tuple[str, ...] = tuple(variables)
        n = len(self.vars)
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("monomial length does not match variable table")
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, variables: Sequence[str], c: Scalar) -> "Polynomial":
        variables = tuple(variables)
        c = Fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        m = [0] * len(variables)
        m[i] = 1
        return cls._raw(variables, {tuple(m): Fraction(1)})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> Tuple["Polynomial", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    # -- predicates / accessors
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def used_vars(self) -> Tuple[str, ...]:
        seen = [False] * len(self.vars)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen[i] = True
        return tuple(v for v, s in zip(self.vars, seen) if s)

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        return max(self.terms, key=monomial_key(order))

    def leading_coefficient(self, order: str = "grevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: str = "grevlex") -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def sorted_terms(self, order: str = "grevlex"):
        key = monomial_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- table handling
    def _check(self, other: "Polynomial") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable-table mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def embed(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express this polynomial over another table containing its used variables."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        idx = []
        for i, v in enumerate(self.vars):
            if v in pos:
                idx.append((i, pos[v]))
            elif any(m[i] for m in self.terms):
                raise ValueError(f"variable {v} missing from target table")
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = [0] * len(variables)
            for i, j in idx:
                nm[j] = m[i]
            out[tuple(nm)] = c
        return Polynomial._raw(variables, out)

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = Fraction(other)
            if not c0:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {m: c * c0 for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.const(self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c: Fraction) -> "Polynomial":
        return Polynomial._raw(
            self.vars, {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation
    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a fully specified rational point."""
        used = self.used_vars()
        missing = [v for v in used if v not in point]
        if missing:
            raise KeyError(f"unbound variables: {', '.join(missing)}")
        vals = [Fraction(point[v]) if v in point else Fraction(0) for v in self.vars]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(vals, m):
                if e:
                    t *= x ** e
            total += t
        return total

    def partial_evaluate(self, point: Mapping[str, Scalar]) -> "Polynomial":
        """Substitute rationals for some variables, keeping the table unchanged."""
        idx = [(i, Fraction(point[v])) for i, v in enumerate(self.vars) if v in point]
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = list(m)
            for i, x in idx:
                if nm[i]:
                    c = c * x ** nm[i]
                    nm[i] = 0
            if c:
                key = tuple(nm)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial._raw(self.vars, out)

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Split as a polynomial in one variable: ``{degree: coefficient}``."""
        i = self.vars.index(name)
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            nm = m[:i] + (0,) + m[i + 1:]
            parts.setdefault(m[i], {})[nm] = c
        return {d: Polynomial._raw(self.vars, t) for d, t in parts.items()}

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(self.vars)
        ms = list(self.terms)
        return tuple(min(col) for col in zip(*ms))

    def primitive(self) -> "Polynomial":
        """Scale so that coefficients are coprime integers with positive leading grevlex coefficient."""
        if not self.terms:
            return self
        from math import gcd

        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for x in nums:
            g = gcd(g, x)
        scale = Fraction(den, g)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    # -- text
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, vars={self.vars})"


def format_polynomial(p: Polynomial, order: str = "grevlex") -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for m, c in p.sorted_terms(order):
        factors = []
        for v, e in zip(p.vars, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse the textual form produced by :func:`format_polynomial`.

    Terms are ``c*x^a*y^b`` products joined by ``+``/``-``; ``c`` may be
    ``p/q``.  Juxtaposition and parentheses are not supported.
    """
    variables = tuple(variables)
    pos = {v: i for i, v in enumerate(variables)}
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    out = Polynomial.const(variables, 0)
    idx = 0
    while idx < len(s):
        m = _TERM_RE.match(s, idx)
        if not m or m.end() == idx:
            raise ValueError(f"cannot parse polynomial near {s[idx:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        idx = m.end()
        coeff = Fraction(sign)
        expo = [0] * len(variables)
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            name = name.strip()
            if name not in pos:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            expo[pos[name]] += int(power) if power else 1
        out = out + Polynomial._raw(variables, {tuple(expo): coeff} if coeff else {})
    return out


def exact_quotient(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Return ``p / q`` when ``q`` divides ``p`` exactly, else None."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    lm_q = q.leading_monomial()
    lc_q = q.terms[lm_q]
    rem = p
    quot: Dict[Monomial, Fraction] = {}
    while rem.terms:
        lm = rem.leading_monomial()
        if not mono_divides(lm_q, lm):
            return None
        t = mono_div(lm, lm_q)
        c = rem.terms[lm] / lc_q
        quot[t] = c
        rem = rem - q.mul_term(t, c)
    return Polynomial._raw(p.vars, quot)


# ---------------------------------------------------------------- rational functions

class RationalFunction:
    """Quotient of two polynomials over the same table; denominator monic (grevlex)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.const(num.vars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with identically-zero denominator")
        if num.is_zero():
            den = Polynomial.const(num.vars, 1)
        else:
            content = mono_divides_common(num, den)
            if any(content):
                num = _mono_exact_div(num, content)
                den = _mono_exact_div(den, content)
            if not den.is_constant():
                q = exact_quotient(num, den)
                if q is not None:
                    num, den = q, Polynomial.const(num.vars, 1)
        lc = den.leading_coefficient()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def lift(cls, value, variables: Sequence[str]) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls(value)
        return cls(Polynomial.const(variables, value))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction.lift(other, self.vars)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ratfun_equal(self, other)

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is by cross-multiplication)")

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {dict(point)}")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den.is_constant():
            return format_polynomial(self.num)
        return f"({format_polynomial(self.num)})/({format_polynomial(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"


def mono_divides_common(p: Polynomial, q: Polynomial) -> Monomial:
    a = p.monomial_content()
    b = q.monomial_content()
    return tuple(min(x, y) for x, y in zip(a, b))


def _mono_exact_div(p: Polynomial, m: Monomial) -> Polynomial:
    return Polynomial._raw(p.vars, {mono_div(k, m): c for k, c in p.terms.items()})


def parse_rational_function(text: str, variables: Sequence[str]) -> RationalFunction:
    """Parse ``num`` or ``(num)/(den)`` as emitted by ``str(RationalFunction)``."""
    s = text.strip()
    if s.startswith("("):
        depth = 0
        for i, ch in enumerate(s):
            depth += (ch == "(") - (ch == ")")
            if depth == 0:
                break
        rest = s[i + 1:].strip()
        if not rest:
            return RationalFunction(parse_polynomial(s[1:i], variables))
        if not (rest.startswith("/(") and rest.endswith(")")):
            raise ValueError(f"cannot parse rational function {text!r}")
        return RationalFunction(
            parse_polynomial(s[1:i], variables), parse_polynomial(rest[2:-1], variables)
        )
    return RationalFunction(parse_polynomial(s, variables))


def ratfun_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """Equality by cross-multiplication."""
    if f.vars != g.vars:
        raise ValueError("variable-table mismatch")
    return (f.num * g.den - g.num * f.den).is_zero()


def substitute(
    p: Polynomial,
    bindings: Mapping[str, Union[RationalFunction, Polynomial, Scalar]],
    target: Sequence[str] | None = None,
) -> RationalFunction:
    """Compose ``p`` with rational-function bindings.

    Variables of ``p`` without a binding stay free and must appear in the
    target table.  The result shares one common denominator built from
    powers of the binding denominators, so no gcd is needed.
    """
    if target is None:
        target = _infer_target(p, bindings)
    target = tuple(target)
    bound: Dict[int, RationalFunction] = {}
    for i, v in enumerate(p.vars):
        if v in bindings:
            b = RationalFunction.lift(bindings[v], target)
            if b.vars != target:
                raise ValueError("binding over a different variable table")
            bound[i] = b
        elif any(m[i] for m in p.terms) and v not in target:
            raise ValueError(f"free variable {v} not in target table")
    free = {i: Polynomial.var(target, v) for i, v in enumerate(p.vars) if i not in bound and v in target}
    degs = {i: max((m[i] for m in p.terms), default=0) for i in bound}
    num_pows: Dict[Tuple[int, int], Polynomial] = {}
    den_pows: Dict[Tuple[int, int], Polynomial] = {}

    def npow(i, e):
        key = (i, e)
        if key not in num_pows:
            num_pows[key] = bound[i].num ** e
        return num_pows[key]

    def dpow(i, e):
        key = (i, e)
        if key not in den_pows:
            den_pows[key] = bound[i].den ** e
        return den_pows[key]

    one = Polynomial.const(target, 1)
    total = Polynomial.const(target, 0)
    for m, c in p.terms.items():
        term = one * c
        for i, e in enumerate(m):
            if i in bound:
                if degs[i]:
                    term = term * npow(i, e) * dpow(i, degs[i] - e)
            elif e:
                term = term * free[i] ** e
        total = total + term
    den = one
    for i in bound:
        if degs[i]:
            den = den * dpow(i, degs[i])
    return RationalFunction(total, den)


def _infer_target(p: Polynomial, bindings) -> Tuple[str, ...]:
    for b in bindings.values():
        if isinstance(b, (Polynomial, RationalFunction)):
            return b.vars
    return p.vars


def evaluate(p: Polynomial, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def poly_arith(kind: str, p: Polynomial, q) -> Polynomial:
    """Dispatch ``add|sub|mul|scale|pow`` on polynomials."""
    if kind == "add":
        return p + p._coerce(q)
    if kind == "sub":
        return p - p._coerce(q)
    if kind == "mul":
        return p * p._coerce(q)
    if kind == "scale":
        return p * Fraction(q)
    if kind == "pow":
        return p ** q
    raise ValueError(f"unknown operation {kind!r}")


def variable_table(n: int, with_alpha: bool = False, extra: Iterable[str] = ()) -> Tuple[str, ...]:
    """Operator-entry variables ``R11..Rnn`` then ``alpha`` then extra names."""
    names = [f"R{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    if with_alpha:
        names.append("alpha")
    names.extend(extra)
    if len(set(names)) != len(names):
        raise ValueError("variable names must be unique")
    return tuple(names)
