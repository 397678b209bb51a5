"""Soundness and completeness audit of the published tables against exact solving."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    ALPHA,
    ALPHA_SAMPLES,
    CATALOG_NAMES,
    PARAMETRIC_NAMES,
    AlgebraSpec,
    catalog,
    catalog_instances,
    commutator_algebra,
    is_antisymmetric,
    prelie_check,
)
from .groebner import in_radical
from .poly import Polynomial, RationalFunction, format_rational
from .solver import (
    DEFAULT_GRID,
    SolutionFamily,
    family_contains,
    family_residuals,
    format_matrix,
    grid_enumerate,
    grid_from_families,
    solve_families,
)
from .systems import AUDIT_KINDS, OperatorKind, build_system, residual, residual_values, rota_baxter
from .tables import AMBIGUOUS, PUBLISHED_ENTRIES, VERBATIM, PublishedEntry, published_families

CONVENTIONS = ("row", "column")
# parameter values tried when looking for a numeric witness
_WITNESS_VALUES = tuple(Fraction(x) for x in (1, 2, -1, 3, "1/2", -2, 5))
_GENERIC_VALUES = tuple(Fraction(x) for x in (3, 5, 7, 11, 13, 17, 19, 23))


@dataclass
class Verdict:
    status: str  # "sound" | "unsound"
    convention: str
    alpha: Optional[Fraction] = None
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"status": self.status, "convention": self.convention}
        if self.alpha is not None:
            out["alpha"] = format_rational(self.alpha)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _algebra_for(entry: PublishedEntry, alpha) -> AlgebraSpec:
    if entry.algebra in PARAMETRIC_NAMES:
        return catalog(entry.algebra, ALPHA if alpha is None else alpha)
    return catalog(entry.algebra)


def _restrictions_ok(entry: PublishedEntry, point: Dict[str, Fraction]) -> bool:
    return all(any(q.evaluate(point) != 0 for q in clause) for clause in entry.restrictions)


def _param_points(entry: PublishedEntry, values: Sequence[Fraction]):
    for combo in product(values, repeat=len(entry.params)):
        point = dict(zip(entry.params, combo))
        if not _restrictions_ok(entry, point):
            continue
        if any(d.evaluate(point) == 0 for d in entry.matrix.denominators()):
            continue
        yield point


def verify_soundness(entry: PublishedEntry, convention: str = "row", alpha=None) -> Verdict:
    """Exact residual test of a published entry.

    For A5/A6 with ``alpha=None`` the parameter stays symbolic, so "sound"
    means sound for every alpha.  An unsound verdict carries the first
    nonzero residual and a concrete parameter point where it is nonzero.
    """
    A = _algebra_for(entry, alpha)
    alpha_value = None if alpha is None else Fraction(alpha)
    res = residual(A, entry.kind, entry.matrix, convention)
    system = build_system(A, entry.kind)
    bad = [(o, r) for o, r in zip(system.origins, res) if not r.is_zero()]
    if not bad:
        return Verdict("sound", convention, alpha_value)
    origin, r = bad[0]
    witness = {"origin": list(origin), "residual": str(r)}
    alphas = ALPHA_SAMPLES if A.symbolic else (None,)
    found = None
    for a in alphas:
        for point in _param_points(entry, _WITNESS_VALUES):
            full = dict(point)
            if a is not None:
                full[ALPHA] = a
            for o, rr in bad:
                if rr.den.evaluate(full) == 0:
                    continue
                value = rr.evaluate(full)
                if value != 0:
                    found = (o, full, value)
                    break
            if found:
                break
        if found:
            break
    if found:
        o, full, value = found
        M = entry.matrix.specialize({k: v for k, v in full.items() if k != ALPHA})
        witness.update(
            {
                "at": {k: format_rational(v) for k, v in sorted(full.items())},
                "at_origin": list(o),
                "value": format_rational(value),
                "matrix": format_matrix(M),
            }
        )
    return Verdict("unsound", convention, alpha_value, witness)


def entry_contains(entry: PublishedEntry, point, convention: str = "row") -> bool:
    """Whether some admissible complex parameter value maps the entry onto ``point``.

    ``point`` is a row-convention matrix; the entry is read under ``convention``.
    """
    M = entry.matrix.oriented(convention)
    n = M.dim
    target = [[Fraction(point[i][j]) for j in range(n)] for i in range(n)]
    params = entry.params
    if not params:
        return all(M.rows[i][j].num.constant_value() == target[i][j] for i in range(n) for j in range(n))
    # fast path: read parameters off cells of the form a*p + b
    assign: Dict[str, Fraction] = {}
    for i in range(n):
        for j in range(n):
            e = M.rows[i][j]
            if not e.den.is_constant():
                continue
            used = e.num.used_vars()
            if len(used) == 1 and e.num.total_degree() == 1:
                p = used[0]
                a = e.num.terms[tuple(int(v == p) for v in params)] / e.den.constant_value()
                b = e.num.terms.get((0,) * len(params), Fraction(0)) / e.den.constant_value()
                val = (target[i][j] - b) / a
                if assign.setdefault(p, val) != val:
                    return False
    if len(assign) == len(params):
        if any(d.evaluate(assign) == 0 for d in M.denominators()):
            return False
        if not _restrictions_ok(entry, assign):
            return False
        return all(M.rows[i][j].evaluate(assign) == target[i][j] for i in range(n) for j in range(n))
    # general case: consistency over C with a Rabinowitsch variable
    eqs = [M.rows[i][j].num - M.rows[i][j].den * target[i][j] for i in range(n) for j in range(n)]
    dens = Polynomial.const(params, 1)
    for d in M.denominators():
        dens = dens * d
    for choice in product(*entry.restrictions) if entry.restrictions else [()]:
        h = dens
        for q in choice:
            h = h * q
        if not in_radical(eqs, h):
            return True
    return False


def generic_point(family: SolutionFamily) -> Optional[Dict[str, Fraction]]:
    """A rational point of the family off its parametrization's poles."""
    if family.parametric is None:
        return None
    free = family.free_params
    dens = family.domain()
    for shift in range(len(_GENERIC_VALUES)):
        vals = {p: _GENERIC_VALUES[(k + shift) % len(_GENERIC_VALUES)] for k, p in enumerate(free)}
        if all(d.evaluate(vals) != 0 for d in dens):
            return family.sample(vals)
    return None


def _as_matrix(sample: Dict[str, Fraction], n: int):
    return tuple(tuple(sample[f"R{i + 1}{j + 1}"] for j in range(n)) for i in range(n))


# ------------------------------------------------------------------ cells

def compare(
    A: AlgebraSpec,
    kind: OperatorKind,
    families: Sequence[SolutionFamily],
    entries: Sequence[PublishedEntry],
    grid: Iterable = DEFAULT_GRID,
    convention: str = "row",
    grid_solutions=None,
) -> dict:
    """Discrepancies between solver output and published entries for one cell."""
    n = A.dim
    if grid_solutions is None:
        grid_solutions = grid_from_families(families, n, grid)
    primary = [e for e in entries if e.reading == "primary"]
    verdicts = {e.label: verify_soundness(e, convention, A.alpha if A.parametric else None) for e in entries}
    unsound = [
        {"entry": label, **v.to_json()} for label, v in verdicts.items() if v.status == "unsound"
    ]
    uncovered = [
        format_matrix(M) for M in grid_solutions if not any(entry_contains(e, M, convention) for e in primary)
    ]
    family_findings = []
    for idx, fam in enumerate(families):
        sample = generic_point(fam)
        if sample is None:
            continue
        M = _as_matrix(sample, n)
        if not any(entry_contains(e, M, convention) for e in primary):
            family_findings.append(
                {"family": idx, "constraints": [str(p) for p in fam.implicit], "witness": format_matrix(M)}
            )
    entry_outside = []
    for e in entries:
        if verdicts[e.label].status != "sound":
            continue
        for point in _param_points(e, DEFAULT_GRID):
            M = e.matrix.oriented(convention).specialize(point)
            if not any(family_contains(f, M) for f in families):
                entry_outside.append({"entry": e.label, "matrix": format_matrix(M)})
                break
    return {
        "convention": convention,
        "verdicts": {label: v.status for label, v in verdicts.items()},
        "unsound": unsound,
        "uncovered_grid_solutions": uncovered,
        "uncovered_families": family_findings,
        "sound_entries_outside_solver": entry_outside,
        "discrepancy": bool(unsound or uncovered or family_findings or entry_outside),
    }


def audit_cell(
    A: AlgebraSpec, kind: OperatorKind, grid: Iterable = DEFAULT_GRID, conventions: Sequence[str] = CONVENTIONS
) -> dict:
    grid = tuple(grid)
    system = build_system(A, kind)
    families = solve_families(system)
    oracle = grid_enumerate(system, grid)
    from_families = grid_from_families(families, A.dim, grid)
    entries = published_families(A.name, kind)
    return {
        "algebra": A.name,
        "alpha": None if A.alpha is None else format_rational(A.alpha),
        "operator": kind.label,
        "families": [f.to_json() for f in families],
        "grid_solutions": len(oracle),
        "solver_oracle_agree": oracle == from_families,
        "comparisons": [compare(A, kind, families, entries, grid, c, oracle) for c in conventions],
    }


def _audit_cell_args(args):
    return audit_cell(*args)


def _cells(algebras: Sequence[str], kinds: Sequence[OperatorKind], alphas: Sequence[Fraction]):
    out = []
    for name in algebras:
        instances = [catalog(name, a) for a in alphas] if name in PARAMETRIC_NAMES else [catalog(name)]
        for A in instances:
            for kind in kinds:
                out.append((A, kind))
    return out


def entry_report(entry: PublishedEntry, conventions: Sequence[str] = CONVENTIONS, alphas=ALPHA_SAMPLES) -> dict:
    out = entry.to_json()
    verdicts = {}
    for conv in conventions:
        v = verify_soundness(entry, conv)
        item = v.to_json()
        if entry.algebra in PARAMETRIC_NAMES:
            item["per_alpha"] = {
                format_rational(a): verify_soundness(entry, conv, a).status for a in alphas
            }
        verdicts[conv] = item
    out["verdicts"] = verdicts
    sound_any = any(
        v["status"] == "sound" or "sound" in v.get("per_alpha", {}).values() for v in verdicts.values()
    )
    out["verdict"] = AMBIGUOUS if entry.fidelity == AMBIGUOUS else ("sound" if sound_any else "unsound")
    if not sound_any:
        out["sound_elsewhere"] = _sound_elsewhere(entry, conventions)
    return out


def _sound_elsewhere(entry: PublishedEntry, conventions: Sequence[str]) -> List[str]:
    """Other catalog algebras (generic alpha for A5/A6) on which the entry is sound."""
    hits = []
    for name in CATALOG_NAMES:
        if name == entry.algebra:
            continue
        A = catalog(name, ALPHA) if name in PARAMETRIC_NAMES else catalog(name)
        for conv in conventions:
            if all(r.is_zero() for r in residual(A, entry.kind, entry.matrix, conv)):
                hits.append(f"{name} ({conv})")
    return hits


def weight_claim_check(alphas=ALPHA_SAMPLES) -> List[dict]:
    """Test whether every weight-0 Rota-Baxter operator is also of weight 1."""
    out = []
    for A in catalog_instances(alphas):
        fams = solve_families(build_system(A, rota_baxter(0)))
        rb1 = build_system(A, rota_baxter(1))
        for fam in fams:
            holds = all(r.is_zero() for r in family_residuals(rb1, fam))
            if holds:
                continue
            sample = generic_point(fam)
            M = _as_matrix(sample, A.dim)
            vals = residual_values(rb1, M)
            out.append(
                {
                    "algebra": A.label,
                    "family": [str(p) for p in fam.implicit],
                    "witness": format_matrix(M),
                    "first_nonzero_weight1_residual": format_rational(next(v for v in vals if v != 0)),
                }
            )
    return out


def identity_checks(alphas=ALPHA_SAMPLES) -> List[dict]:
    out = []
    for A in catalog_instances(alphas):
        pre = prelie_check(A)
        B, jacobi_ok = commutator_algebra(A)
        out.append(
            {
                "algebra": A.label,
                "left_prelie": f"{pre['left_pass']}/{pre['triples']}",
                "right_prelie": f"{pre['right_pass']}/{pre['triples']}",
                "lie_antisymmetric": is_antisymmetric(B),
                "lie_jacobi": jacobi_ok,
            }
        )
    return out


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("PRELIE_ROTA_WORKERS", "1")))
    except ValueError:
        return 1


def audit_all(
    algebras: Sequence[str] = CATALOG_NAMES,
    kinds: Sequence[OperatorKind] = AUDIT_KINDS,
    alphas: Sequence[Fraction] = ALPHA_SAMPLES,
    grid: Iterable = DEFAULT_GRID,
    conventions: Sequence[str] = CONVENTIONS,
    workers: Optional[int] = None,
    include_claims: bool = True,
) -> dict:
    """Full discrepancy report; deterministic for a fixed configuration."""
    grid = tuple(sorted(Fraction(g) for g in grid))
    workers = worker_count() if workers is None else workers
    jobs = [(A, k, grid, tuple(conventions)) for A, k in _cells(algebras, kinds, alphas)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_audit_cell_args, jobs))
    else:
        cells = [audit_cell(*j) for j in jobs]
    entries = [
        entry_report(e, conventions, alphas)
        for e in PUBLISHED_ENTRIES
        if e.algebra in algebras and e.kind in kinds
    ]
    report = {
        "config": {
            "algebras": list(algebras),
            "operators": [k.label for k in kinds],
            "alpha_samples": [format_rational(a) for a in alphas],
            "grid": [format_rational(g) for g in grid],
            "conventions": list(conventions),
            "matrix_convention_note": "witness matrices are written in the row convention P(e_i) = sum_j M[i][j] e_j",
        },
        "identities": identity_checks(alphas) if include_claims else [],
        "cells": cells,
        "entries": entries,
        "claims": {"weight0_implies_weight1_counterexamples": weight_claim_check(alphas)} if include_claims else {},
    }
    report["summary"] = summarize(report)
    return report


def summarize(report: dict) -> dict:
    per_conv = {}
    for conv in report["config"]["conventions"]:
        unsound = sorted(
            {u["entry"] for c in report["cells"] for cmp in c["comparisons"] if cmp["convention"] == conv for u in cmp["unsound"]}
        )
        uncovered = sum(
            len(cmp["uncovered_grid_solutions"])
            for c in report["cells"] for cmp in c["comparisons"] if cmp["convention"] == conv
        )
        fam = sum(
            len(cmp["uncovered_families"])
            for c in report["cells"] for cmp in c["comparisons"] if cmp["convention"] == conv
        )
        per_conv[conv] = {
            "unsound_entries": unsound,
            "uncovered_grid_solutions": uncovered,
            "uncovered_families": fam,
        }
    flagged = [e["label"] for e in report["entries"] if e["fidelity"] != VERBATIM]
    disagreements = [
        f"{c['algebra']}{'' if c['alpha'] is None else '[alpha=' + c['alpha'] + ']'}/{c['operator']}"
        for c in report["cells"] if not c["solver_oracle_agree"]
    ]
    discrepancies = bool(
        flagged or disagreements or any(v["unsound_entries"] or v["uncovered_grid_solutions"] or v["uncovered_families"] for v in per_conv.values())
    )
    return {
        "by_convention": per_conv,
        "flagged_transcriptions": flagged,
        "solver_oracle_disagreements": disagreements,
        "discrepancies_found": discrepancies,
    }


# ------------------------------------------------------------------ markdown

def _mat(m: List[List[str]]) -> str:
    return "[" + "; ".join(", ".join(r) for r in m) + "]"


def to_markdown(report: dict) -> str:
    lines = ["# Operator table audit", ""]
    cfg = report["config"]
    lines.append(f"Grid: {{{', '.join(cfg['grid'])}}}; alpha samples: {', '.join(cfg['alpha_samples'])}.")
    lines.append(cfg["matrix_convention_note"] + ".")
    lines.append("")
    if report.get("identities"):
        lines += ["## Algebra identities", "", "| Algebra | left pre-Lie | right pre-Lie | Lie antisymmetry | Jacobi |", "|---|---|---|---|---|"]
        for r in report["identities"]:
            lines.append(
                f"| {r['algebra']} | {r['left_prelie']} | {r['right_prelie']} | {'yes' if r['lie_antisymmetric'] else 'no'} | {'yes' if r['lie_jacobi'] else 'no'} |"
            )
        lines.append("")
    convs = cfg["conventions"]
    lines += ["## Published entries", ""]
    header = "| Entry | Matrix | Restrictions | Fidelity | " + " | ".join(convs) + " |"
    lines += [header, "|" + "---|" * (4 + len(convs))]
    for e in report["entries"]:
        cells = []
        for c in convs:
            v = e["verdicts"][c]
            text = v["status"]
            if "per_alpha" in v and v["status"] != "sound":
                ok = [a for a, s in v["per_alpha"].items() if s == "sound"]
                if ok:
                    text += f" (sound at alpha={', '.join(ok)})"
            cells.append(text)
        lines.append(
            f"| {e['label']} | {_mat(e['matrix'])} | {'; '.join(e['restrictions']) or '-'} | {e['fidelity']} | "
            + " | ".join(cells) + " |"
        )
    lines.append("")
    lines += ["## Cells", ""]
    for c in report["cells"]:
        name = c["algebra"] + ("" if c["alpha"] is None else f" (alpha={c['alpha']})")
        lines.append(f"### {name}, {c['operator']}")
        lines.append("")
        lines.append(f"Solver families ({'agrees' if c['solver_oracle_agree'] else 'DISAGREES'} with the grid oracle, {c['grid_solutions']} grid solutions):")
        lines.append("")
        for f in c["families"]:
            par = ", ".join(f"{k} = {v}" for k, v in (f["parametric"] or {}).items())
            lines.append(f"- {'; '.join(f['implicit']) or '(no constraint)'}" + (f"  [{par}]" if par else ""))
        for cmp in c["comparisons"]:
            findings = []
            for u in cmp["unsound"]:
                w = u.get("witness", {})
                findings.append(f"unsound {u['entry']}: {w.get('residual', '')} at {w.get('origin')}")
            if cmp["uncovered_grid_solutions"]:
                shown = ", ".join(_mat(m) for m in cmp["uncovered_grid_solutions"][:5])
                more = len(cmp["uncovered_grid_solutions"]) - 5
                findings.append(f"{len(cmp['uncovered_grid_solutions'])} grid solutions not listed: {shown}" + (f", ... (+{more})" if more > 0 else ""))
            for f in cmp["uncovered_families"]:
                findings.append(f"family {'; '.join(f['constraints'])} not listed, e.g. {_mat(f['witness'])}")
            for o in cmp["sound_entries_outside_solver"]:
                findings.append(f"entry {o['entry']} gives {_mat(o['matrix'])} outside solver output")
            lines.append("")
            lines.append(f"*{cmp['convention']} convention:* " + ("no findings" if not findings else ""))
            for f in findings:
                lines.append(f"- {f}")
        lines.append("")
    claims = report.get("claims", {}).get("weight0_implies_weight1_counterexamples")
    if claims is not None:
        lines += ["## Weight 0 versus weight 1", ""]
        if not claims:
            lines.append("Every weight-0 Rota-Baxter family is also of weight 1.")
        for c in claims:
            lines.append(f"- {c['algebra']}: {_mat(c['witness'])} has weight 0 but not weight 1")
        lines.append("")
    s = report["summary"]
    lines += ["## Summary", ""]
    for conv, v in s["by_convention"].items():
        lines.append(
            f"- {conv}: {len(v['unsound_entries'])} unsound entries, {v['uncovered_grid_solutions']} unlisted grid solutions, {v['uncovered_families']} unlisted families"
        )
    lines.append(f"- flagged transcriptions: {', '.join(s['flagged_transcriptions']) or 'none'}")
    lines.append(f"- solver/oracle disagreements: {', '.join(s['solver_oracle_disagreements']) or 'none'}")
    lines.append("")
    return "\n".join(lines)
