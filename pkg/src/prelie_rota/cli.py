"""Command-line front end.

Examples:
    prelie-rota catalog
    prelie-rota check-prelie --algebra A5 --alpha 1/2
    prelie-rota build-system --algebra A1 --operator rota-baxter --weight 0 --out a1_rb0.json
    prelie-rota solve --system a1_rb0.json
    prelie-rota oracle-grid --algebra A3 --operator nijenhuis --grid=-1,0,1
    prelie-rota verify-tables --algebra A1 --operator reynolds --convention both
    prelie-rota audit-all --format markdown --out audit.md

Exit status: 0 on success, 2 when an audit reports discrepancies, 1 on errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import ALPHA_SAMPLES, CATALOG_NAMES, PARAMETRIC_NAMES, catalog, commutator_algebra, is_antisymmetric, prelie_check
from .audit import CONVENTIONS, audit_all, to_markdown, worker_count
from .gridkernel import BACKEND
from .poly import format_rational, parse_rational
from .solver import DEFAULT_GRID, families_to_json, format_matrix, grid_enumerate, solve_families
from .systems import AUDIT_KINDS, EquationSystem, OperatorKind, build_system

EXIT_OK, EXIT_ERROR, EXIT_DISCREPANCY = 0, 1, 2

_GRID_TEXT = ",".join(format_rational(g) for g in DEFAULT_GRID)
_ALPHA_TEXT = ",".join(format_rational(a) for a in ALPHA_SAMPLES)


class UsageError(Exception):
    pass


def _rational_list(text: str):
    try:
        values = [parse_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational list {text!r}: {exc}") from None
    if not values:
        raise UsageError("empty rational list")
    return tuple(values)


def _rational(text):
    if text is None:
        return None
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: {exc}") from None


def _algebra(name: str, alpha):
    if name not in CATALOG_NAMES:
        raise UsageError(f"unknown algebra {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    if name in PARAMETRIC_NAMES and alpha is None:
        raise UsageError(f"{name} needs --alpha")
    if name not in PARAMETRIC_NAMES and alpha is not None:
        raise UsageError(f"--alpha only applies to {' and '.join(PARAMETRIC_NAMES)}")
    return catalog(name, alpha)


def _kind(name: str, weight):
    try:
        return OperatorKind.parse(name, weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ------------------------------------------------------------------ commands

def cmd_catalog(args) -> int:
    if args.json:
        _emit(_dump([catalog(n, "alpha" if n in PARAMETRIC_NAMES else None).to_json() for n in CATALOG_NAMES]), None)
        return EXIT_OK
    for name in CATALOG_NAMES:
        A = catalog(name, "alpha" if name in PARAMETRIC_NAMES else None)
        prods = []
        for i in range(A.dim):
            for j in range(A.dim):
                terms = []
                for k in range(A.dim):
                    c = A.constant_poly(i, j, k, ("alpha",))
                    if not c.is_zero():
                        coeff = str(c)
                        if coeff == "1":
                            terms.append(f"e{k + 1}")
                        elif coeff == "-1":
                            terms.append(f"-e{k + 1}")
                        else:
                            terms.append(f"({coeff})*e{k + 1}")
                if terms:
                    prods.append(f"e{i + 1}.e{j + 1} = " + " + ".join(terms))
        print(f"{name}: " + ("; ".join(prods) or "zero product"))
    return EXIT_OK


def cmd_check_prelie(args) -> int:
    A = _algebra(args.algebra, _rational(args.alpha))
    res = prelie_check(A)
    B, jacobi_ok = commutator_algebra(A)
    n = res["triples"]
    left = "PASS" if res["left_pass"] == n else "FAIL"
    right = "PASS" if res["right_pass"] == n else "FAIL"
    print(f"{A.label}")
    print(f"left pre-Lie: {left} ({res['left_pass']}/{n} triples)")
    print(f"right pre-Lie: {right} ({res['right_pass']}/{n} triples)")
    print(f"commutator antisymmetric: {'PASS' if is_antisymmetric(B) else 'FAIL'}")
    print(f"commutator Jacobi: {'PASS' if jacobi_ok else 'FAIL'}")
    return EXIT_OK if left == "PASS" else EXIT_DISCREPANCY


def cmd_build_system(args) -> int:
    A = _algebra(args.algebra, _rational(args.alpha) if args.alpha != "symbolic" else "alpha")
    system = build_system(A, _kind(args.operator, args.weight))
    _emit(_dump(system.to_json()), args.out)
    if args.out:
        print(f"wrote {len(system.equations)} equations to {args.out}", file=sys.stderr)
    return EXIT_OK


def _load_system(args) -> EquationSystem:
    if args.system:
        try:
            return EquationSystem.from_json(Path(args.system).read_text())
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read system file {args.system}: {exc}") from None
    if not args.algebra or not args.operator:
        raise UsageError("give --system or both --algebra and --operator")
    alpha = "alpha" if args.alpha == "symbolic" else _rational(args.alpha)
    return build_system(_algebra(args.algebra, alpha), _kind(args.operator, args.weight))


def cmd_solve(args) -> int:
    system = _load_system(args)
    families = solve_families(system)
    if args.format == "json":
        payload = {
            "algebra": system.algebra.label,
            "operator": system.kind.label,
            "variables": list(system.variables),
            "families": families_to_json(families),
        }
        _emit(_dump(payload), args.out)
        return EXIT_OK
    lines = [f"{system.algebra.label}, {system.kind.label}: {len(families)} families"]
    n = system.algebra.dim
    for idx, fam in enumerate(families, 1):
        lines.append(f"[{idx}] {fam.constraint_text() or '(no constraint)'}")
        if fam.parametric is not None:
            free = ", ".join(fam.free_params) or "none"
            lines.append(f"    free: {free}")
            rows = fam.matrix(n)
            lines.append("    matrix: [" + "; ".join(", ".join(str(x) for x in r) for r in rows) + "]")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_oracle_grid(args) -> int:
    grid = _rational_list(args.grid)
    system = _load_system(args)
    sols = grid_enumerate(system, grid, backend=args.backend)
    payload = {
        "algebra": system.algebra.label,
        "operator": system.kind.label,
        "grid": [format_rational(g) for g in sorted(set(grid))],
        "points": len(set(grid)) ** len(system.variables),
        "solutions": [format_matrix(M) for M in sols],
    }
    _emit(_dump(payload), args.out)
    return EXIT_OK


def _report_args(args):
    algebras = CATALOG_NAMES
    if getattr(args, "algebra", None):
        if args.algebra not in CATALOG_NAMES:
            raise UsageError(f"unknown algebra {args.algebra!r}")
        algebras = (args.algebra,)
    kinds = AUDIT_KINDS
    if getattr(args, "operator", None):
        kinds = (_kind(args.operator, args.weight),)
    alphas = _rational_list(args.alpha) if args.alpha else ALPHA_SAMPLES
    grid = _rational_list(args.grid)
    return algebras, kinds, alphas, grid


def _write_report(report: dict, args) -> int:
    text = to_markdown(report) if args.format == "markdown" else _dump(report)
    _emit(text, args.out)
    return EXIT_DISCREPANCY if report["summary"]["discrepancies_found"] else EXIT_OK


def cmd_verify_tables(args) -> int:
    algebras, kinds, alphas, grid = _report_args(args)
    conventions = CONVENTIONS if args.convention == "both" else (args.convention,)
    report = audit_all(algebras, kinds, alphas, grid, conventions, workers=args.workers, include_claims=False)
    return _write_report(report, args)


def cmd_audit_all(args) -> int:
    _, _, alphas, grid = _report_args(args)
    report = audit_all(CATALOG_NAMES, AUDIT_KINDS, alphas, grid, CONVENTIONS, workers=args.workers)
    return _write_report(report, args)


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prelie-rota",
        description="Exact operator equations on two-dimensional pre-Lie algebras.",
        epilog=f"Default alpha samples: {_ALPHA_TEXT}. Default grid: {_GRID_TEXT}. "
        f"Grid kernel backend: {BACKEND}. Set PRELIE_ROTA_WORKERS for parallel audits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def cell(p, required=True, system_file=False):
        p.add_argument("--algebra", required=required and not system_file, help="catalog name, A1..A8")
        p.add_argument("--operator", required=required and not system_file,
                       help="rota-baxter | reynolds | nijenhuis | averaging")
        p.add_argument("--weight", help="Rota-Baxter weight as p/q (default 0)")
        p.add_argument("--alpha", help="alpha for A5/A6 as p/q" + (", or 'symbolic'" if system_file else ""))
        if system_file:
            p.add_argument("--system", help="read the equation system from a build-system JSON file")

    p = sub.add_parser("catalog", help="list the catalog algebras")
    p.add_argument("--json", action="store_true", help="print structure constants as JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check-prelie", help="check the pre-Lie and Lie identities")
    p.add_argument("--algebra", required=True)
    p.add_argument("--alpha", help="alpha for A5/A6 as p/q")
    p.set_defaults(func=cmd_check_prelie)

    p = sub.add_parser("build-system", help="write the polynomial system as JSON")
    cell(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_build_system)

    p = sub.add_parser("solve", help="decompose the solution set into families")
    cell(p, system_file=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle-grid", help="enumerate solutions on a rational grid")
    cell(p, system_file=True)
    p.add_argument("--grid", default=_GRID_TEXT, help=f"comma separated rationals (default {_GRID_TEXT})")
    p.add_argument("--backend", choices=("cython", "python"), help="force a grid kernel")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle_grid)

    for name, func, helptext in (
        ("verify-tables", cmd_verify_tables, "audit published entries against exact solving"),
        ("audit-all", cmd_audit_all, "full discrepancy report over every cell"),
    ):
        p = sub.add_parser(name, help=helptext)
        if name == "verify-tables":
            p.add_argument("--algebra")
            p.add_argument("--operator")
            p.add_argument("--weight")
            p.add_argument("--convention", choices=("row", "column", "both"), default="both")
        p.add_argument("--alpha", help=f"comma separated alpha samples (default {_ALPHA_TEXT})")
        p.add_argument("--grid", default=_GRID_TEXT, help=f"comma separated rationals (default {_GRID_TEXT})")
        p.add_argument("--format", choices=("json", "markdown"), default="json")
        p.add_argument("--workers", type=int, default=None,
                       help=f"parallel workers (default PRELIE_ROTA_WORKERS or 1, now {worker_count()})")
        p.add_argument("--out")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
