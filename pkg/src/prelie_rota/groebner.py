"""Buchberger's algorithm over Q with reduced output."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .poly import (
    Monomial,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    monomial_key,
)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: Tuple[Polynomial, ...]
    order: str
    vars: Tuple[str, ...]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


class _Lead:
    """Polynomial with cached leading data under a fixed order."""

    __slots__ = ("poly", "lm", "lc")

    def __init__(self, poly: Polynomial, key):
        self.poly = poly
        self.lm = max(poly.terms, key=key)
        self.lc = poly.terms[self.lm]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: str = "grevlex") -> Polynomial:
    """Full reduction of ``f`` modulo ``basis``."""
    key = monomial_key(order)
    leads = [_Lead(g, key) for g in basis if not g.is_zero()]
    return _reduce(f, leads, key)


def _reduce(f: Polynomial, leads: List[_Lead], key) -> Polynomial:
    work: Dict[Monomial, Fraction] = dict(f.terms)
    rem: Dict[Monomial, Fraction] = {}
    while work:
        lm = max(work, key=key)
        c = work[lm]
        for g in leads:
            if mono_divides(g.lm, lm):
                t = mono_div(lm, g.lm)
                q = c / g.lc
                for m, gc in g.poly.terms.items():
                    nm = tuple(a + b for a, b in zip(m, t))
                    s = work.get(nm, 0) - q * gc
                    if s:
                        work[nm] = s
                    else:
                        del work[nm]
                break
        else:
            rem[lm] = c
            del work[lm]
    return Polynomial._raw(f.vars, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: str = "grevlex") -> Polynomial:
    key = monomial_key(order)
    a, b = _Lead(f, key), _Lead(g, key)
    lcm = mono_lcm(a.lm, b.lm)
    return f.mul_term(mono_div(lcm, a.lm), 1 / a.lc) - g.mul_term(mono_div(lcm, b.lm), 1 / b.lc)


def buchberger(system: Sequence[Polynomial], order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``system``.

    Pairs are processed by the normal strategy (smallest lcm first) and
    pruned with the Gebauer-Moeller criteria.  The zero ideal yields an
    empty basis; the unit ideal yields ``[1]``.
    """
    system = [p for p in system if not p.is_zero()]
    if not system:
        variables = system[0].vars if system else ()
        return GroebnerBasis((), order, variables)
    variables = system[0].vars
    for p in system:
        if p.vars != variables:
            raise ValueError("variable-table mismatch in system")
    key = monomial_key(order)
    for p in system:
        if p.is_constant():
            return GroebnerBasis((Polynomial.const(variables, 1),), order, variables)

    G: List[_Lead] = []
    pairs: List[Tuple[int, int]] = []

    def add(h: Polynomial):
        nonlocal pairs
        h = h.monic(order)
        new = _Lead(h, key)
        k = len(G)
        lm = new.lm
        # Gebauer-Moeller update
        kept = []
        for (i, j) in pairs:
            l_ij = mono_lcm(G[i].lm, G[j].lm)
            if (
                mono_divides(lm, l_ij)
                and l_ij != mono_lcm(G[i].lm, lm)
                and l_ij != mono_lcm(G[j].lm, lm)
            ):
                continue
            kept.append((i, j))
        cands: Dict[Monomial, List[int]] = {}
        for i, g in enumerate(G):
            if g is None:
                continue
            cands.setdefault(mono_lcm(g.lm, lm), []).append(i)
        chosen: List[Monomial] = []
        for L in sorted(cands, key=key):
            if any(mono_divides(L2, L) for L2 in chosen):
                continue
            chosen.append(L)
        fresh = []
        for L in chosen:
            idx = cands[L]
            # product criterion: coprime leading monomials give zero S-polynomials
            if any(mono_lcm(G[i].lm, lm) == tuple(a + b for a, b in zip(G[i].lm, lm)) for i in idx):
                continue
            fresh.append((min(idx), k))
        G.append(new)
        pairs = kept + fresh

    for p in system:
        r = _reduce(p, [g for g in G if g is not None], key)
        if not r.is_zero():
            if r.is_constant():
                return GroebnerBasis((Polynomial.const(variables, 1),), order, variables)
            add(r)

    while pairs:
        best = min(range(len(pairs)), key=lambda t: key(mono_lcm(G[pairs[t][0]].lm, G[pairs[t][1]].lm)))
        i, j = pairs.pop(best)
        s = s_polynomial(G[i].poly, G[j].poly, order)
        r = _reduce(s, G, key)
        if r.is_zero():
            continue
        if r.is_constant():
            return GroebnerBasis((Polynomial.const(variables, 1),), order, variables)
        add(r)

    return GroebnerBasis(tuple(_reduced([g.poly for g in G], order)), order, variables)


def _reduced(G: List[Polynomial], order: str) -> List[Polynomial]:
    key = monomial_key(order)
    leads = sorted((_Lead(g, key) for g in G), key=lambda l: key(l.lm))
    minimal: List[_Lead] = []
    for g in leads:
        if any(mono_divides(h.lm, g.lm) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce(g.poly, others, key).monic(order)
        out.append(r)
    out.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return out


def is_groebner(G: Sequence[Polynomial], order: str = "grevlex") -> bool:
    """Check that every S-polynomial of basis pairs reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not normal_form(s_polynomial(G[a], G[b], order), G, order).is_zero():
                return False
    return True


def saturate(ideal: Sequence[Polynomial], h: Polynomial, order: str = "lex") -> GroebnerBasis:
    """Reduced basis of ``ideal : h^inf`` via an auxiliary variable ``1 - t*h``."""
    variables = h.vars
    aux = "_sat_t"
    while aux in variables:
        aux += "_"
    big = (aux,) + tuple(variables)
    t = Polynomial.var(big, aux)
    gens = [p.embed(big) for p in ideal] + [1 - t * h.embed(big)]
    G = buchberger(gens, order="elim1")
    kept = [g for g in G if g.degree(aux) <= 0]
    return buchberger([g.embed(variables) for g in kept], order=order)


def in_radical(ideal: Sequence[Polynomial], h: Polynomial) -> bool:
    """True iff ``h`` vanishes on every complex zero of ``ideal``."""
    variables = h.vars
    aux = "_rad_t"
    big = (aux,) + tuple(variables)
    t = Polynomial.var(big, aux)
    G = buchberger([p.embed(big) for p in ideal] + [1 - t * h.embed(big)], order="grevlex")
    return G.is_unit()
