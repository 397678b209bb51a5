"""Transcription of the published operator families on the catalog algebras.

Matrices are entered exactly as printed (row by row).  Parameters keep the
printed letter: ``r`` for Rota-Baxter, ``R`` for Reynolds, ``N`` for
Nijenhuis and ``theta`` for averaging.  A restriction is a tuple of
parameters of which at least one must be nonzero; a printed list of
conditions becomes one single-parameter tuple per condition.  A printed
restriction covering several matrices is applied to each matrix for the
parameters it actually uses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .poly import Polynomial
from .systems import AVERAGING, NIJENHUIS, REYNOLDS, OperatorKind, OperatorMatrix, rota_baxter

VERBATIM = "verbatim"
TYPO = "typo-interpreted"
AMBIGUOUS = "ambiguous"

RB0 = rota_baxter(0)
RB1 = rota_baxter(1)


@dataclass(frozen=True)
class PublishedEntry:
    algebra: str
    kind: OperatorKind
    label: str
    matrix: OperatorMatrix
    restrictions: Tuple[Tuple[Polynomial, ...], ...] = ()
    fidelity: str = VERBATIM
    note: str = ""
    source: str = "table"
    reading: str = "primary"

    @property
    def params(self) -> Tuple[str, ...]:
        return self.matrix.params

    def restriction_text(self) -> List[str]:
        return [" or ".join(f"{p} != 0" for p in clause) for clause in self.restrictions]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "algebra": self.algebra,
            "operator": self.kind.label,
            "matrix": self.matrix.as_strings(),
            "params": list(self.params),
            "restrictions": self.restriction_text(),
            "fidelity": self.fidelity,
            "note": self.note,
            "source": self.source,
            "reading": self.reading,
        }


_PARAM_RE = re.compile(r"(?:theta|[rRN])\d\d")

_KIND_CODE = {RB0: "RB0", RB1: "RB1", REYNOLDS: "REY", NIJENHUIS: "NIJ", AVERAGING: "AVG"}


def _entry(algebra, kind, name, rows, restrict=(), fidelity=VERBATIM, note="", source="table", reading="primary"):
    text = " ".join(" ".join(r) for r in rows)
    params = tuple(sorted(set(_PARAM_RE.findall(text))))
    M = OperatorMatrix.build(rows, params)
    used = set(params)
    clauses = []
    for clause in restrict:
        if isinstance(clause, str):
            clause = (clause,)
        kept = tuple(p for p in clause if p in used)
        if kept:
            clauses.append(tuple(Polynomial.var(params, p) for p in kept))
    label = f"{_KIND_CODE[kind]}/{algebra}/{name}"
    if reading != "primary":
        label += f"#{reading}"
    return PublishedEntry(algebra, kind, label, M, tuple(clauses), fidelity, note, source, reading)


def _build() -> List[PublishedEntry]:
    E = _entry
    z = [["0", "0"], ["0", "0"]]
    out: List[PublishedEntry] = []

    # Rota-Baxter, weight 0
    out += [
        E("A1", RB0, "P", [["0", "0"], ["r21", "0"]], source="statement"),
        E("A2", RB0, "P", [["0", "0"], ["r21", "0"]]),
        E("A3", RB0, "P1", [["0", "0"], ["r21", "r22"]]),
        E("A3", RB0, "P2", [["r11", "0"], ["r21", "1/2*r11"]]),
        E("A4", RB0, "P1", [["0", "r12"], ["0", "0"]]),
        E("A4", RB0, "P2", [["0", "0"], ["0", "r22"]]),
        E("A5", RB0, "P1", [["0", "0"], ["r21", "0"]]),
        E("A5", RB0, "P2", z),
        E("A6", RB0, "P", [["0", "0"], ["r21", "0"]]),
        E("A7", RB0, "P", z),
        E("A8", RB0, "P", z),
    ]

    # Rota-Baxter, weight 1
    out += [
        E("A1", RB1, "P1", [["0", "r12"], ["0", "0"]], source="statement",
          note="the accompanying proof works with e2.e1 = e1 and all other products zero, which is A4's product"),
        E("A1", RB1, "P2", z, source="statement"),
        E("A2", RB1, "P1", [["0", "r12"], ["0", "0"]]),
        E("A2", RB1, "P2", z),
        E("A3", RB1, "P1", [["r11", "r12"], ["0", "1/2*r11"]]),
        E("A3", RB1, "P2", [["0", "r12"], ["0", "r22"]]),
        E("A3", RB1, "P3", [["0", "-r22"], ["0", "r22"]]),
        E("A4", RB1, "P1", [["0", "0"], ["0", "r22"]]),
        E("A4", RB1, "P2", [["0", "0"], ["r21", "0"]]),
        E("A4", RB1, "P3", z),
        E("A5", RB1, "P1", [["0", "-r22"], ["0", "r22"]]),
        E("A5", RB1, "P2", [["0", "r21"], ["0", "r22"]],
          note="printed with r21 in the (1,2) slot; kept as a free parameter name"),
        E("A5", RB1, "P3", [["0", "r12"], ["0", "0"]]),
        E("A5", RB1, "P4", z),
        E("A5", RB1, "P5", [["-r21", "-r21"], ["r21", "r21"]]),
        E("A5", RB1, "P6", [["r11", "r12"], ["(-r11^2)/(r12)", "-r11"]]),
        E("A5", RB1, "P7", [["0", "0"], ["r21", "0"]]),
        E("A6", RB1, "P1", [["0", "r12"], ["0", "0"]]),
        E("A6", RB1, "P2", z),
        E("A6", RB1, "P3", [["-r22", "r12"], ["(-r22^2)/(r12)", "r22"]]),
        E("A6", RB1, "P4", [["-r22", "-r22"], ["r22", "r22"]]),
        E("A6", RB1, "P5", [["r21", "0"], ["r21", "0"]]),
        E("A7", RB1, "P1", z),
        E("A7", RB1, "P2", [["r12", "r12"], ["r12", "r12"]]),
        E("A8", RB1, "P", z),
    ]

    # Reynolds
    out += [
        E("A1", REYNOLDS, "P1", [["0", "0"], ["R21", "0"]], ["R21"], source="statement",
          note="R21 != 0 is imposed in the proof text, not in the statement"),
        E("A2", REYNOLDS, "P1", z),
        E("A3", REYNOLDS, "P1", [["0", "0"], ["R21", "R22"]], ["R21", "R22"]),
        E("A4", REYNOLDS, "P1", [["0", "0"], ["0", "R22"]], ["R22"]),
        E("A4", REYNOLDS, "P2", [["0", "-R22"], ["0", "R22"]], ["R22"]),
        E("A5", REYNOLDS, "P1", [["0", "0"], ["R21", "0"]], ["R21"]),
        E("A6", REYNOLDS, "P1", z),
        E("A7", REYNOLDS, "P1", z),
        E("A8", REYNOLDS, "P1", z),
    ]

    # Nijenhuis
    out += [
        E("A1", NIJENHUIS, "P", [["0", "0"], ["N21", "0"]], source="statement",
          note="the proof asks for N21 != 0 or N11 != 0 although N11 does not occur; statement has no restriction"),
        E("A2", NIJENHUIS, "P", [["0", "0"], ["N21", "0"]], ["N21"]),
        E("A3", NIJENHUIS, "P", [["1/2*N22", "0"], ["N21", "N22"]], [("N21", "N22")]),
        E("A4", NIJENHUIS, "P1", [["N11", "0"], ["0", "0"]], [("N11", "N12", "N22")]),
        E("A4", NIJENHUIS, "P2", [["N11", "0"], ["N11", "0"]], [("N11", "N12", "N22")]),
        E("A4", NIJENHUIS, "P3", [["0", "N12"], ["N11", "0"]], [("N11", "N12", "N22")]),
        E("A4", NIJENHUIS, "P4", [["0", "0"], ["0", "N22"]], [("N11", "N12", "N22")]),
        E("A5", NIJENHUIS, "P1", [["0", "0"], ["0", "N22"]], [("N21", "N22")]),
        E("A5", NIJENHUIS, "P2", [["0", "0"], ["N21", "0"]], [("N21", "N22")]),
        E("A6", NIJENHUIS, "P1", [["0", "0"], ["0", "N22"]], [("N21", "N22")]),
        E("A6", NIJENHUIS, "P2", [["0", "0"], ["N21", "0"]], [("N21", "N22")]),
        E("A7", NIJENHUIS, "P1", [["-N12", "N12"], ["-N12", "N12"]], ["N12"]),
        E("A8", NIJENHUIS, "P1", [["N11", "0"], ["-2*N11", "0"]], ["N11"]),
    ]

    # Averaging
    a3_note = 'the (1,1) cell is printed as "0\\vartheta_{11}"'
    a4_note = "P2 is printed with an empty first column"
    all3 = ["theta11", "theta21", "theta22"]
    out += [
        E("A1", AVERAGING, "P1", [["theta22", "0"], ["0", "theta22"]], ["theta22"], source="statement"),
        E("A1", AVERAGING, "P2", [["0", "0"], ["theta21", "0"]], ["theta21"], source="statement"),
        E("A2", AVERAGING, "P1", [["theta22", "0"], ["0", "theta22"]], ["theta22", "theta21"]),
        E("A2", AVERAGING, "P2", [["0", "0"], ["theta21", "0"]], ["theta22", "theta21"]),
        E("A3", AVERAGING, "P1", [["theta11", "0"], ["theta21", "theta11"]], all3,
          fidelity=AMBIGUOUS, note=a3_note + "; read as theta11"),
        E("A3", AVERAGING, "P1", [["0", "0"], ["theta21", "theta11"]], all3,
          fidelity=AMBIGUOUS, note=a3_note + "; read as 0", reading="alt"),
        E("A3", AVERAGING, "P2", [["0", "0"], ["theta21", "theta22"]], all3),
        E("A4", AVERAGING, "P1", [["theta11", "0"], ["0", "theta11"]], ["theta11", "theta12", "theta22"]),
        E("A4", AVERAGING, "P2", [["0", "theta12"], ["0", "theta22"]], ["theta11", "theta12", "theta22"],
          fidelity=TYPO, note=a4_note + "; blanks read as 0"),
        E("A5", AVERAGING, "P1", [["theta22", "0"], ["0", "theta22"]], all3),
        E("A5", AVERAGING, "P2", [["0", "0"], ["theta21", "0"]], all3),
        E("A5", AVERAGING, "P3", [["theta11", "0"], ["0", "0"]], all3),
        E("A6", AVERAGING, "P1", [["theta22", "0"], ["0", "theta22"]], all3),
        E("A6", AVERAGING, "P2", [["0", "0"], ["theta21", "0"]], all3),
        E("A6", AVERAGING, "P3", [["theta11", "0"], ["0", "0"]], all3),
        E("A7", AVERAGING, "P1", [["theta11", "0"], ["0", "theta22"]], ["theta11", "theta22", "theta12"]),
        E("A7", AVERAGING, "P2", [["theta11", "theta12"], ["theta11", "theta22"]], ["theta11", "theta22", "theta12"]),
        E("A8", AVERAGING, "P1", [["theta22", "0"], ["0", "theta22"]], ["theta22"]),
        E("A8", AVERAGING, "P2", [["0", "0"], ["2*theta22", "theta22"]], ["theta22"]),
    ]
    return out


PUBLISHED_ENTRIES: Tuple[PublishedEntry, ...] = tuple(_build())


def published_families(algebra: str, kind: OperatorKind, include_alternatives: bool = True) -> List[PublishedEntry]:
    """Published entries for one (algebra, operator) cell, in printed order."""
    return [
        e for e in PUBLISHED_ENTRIES
        if e.algebra == algebra and e.kind == kind and (include_alternatives or e.reading == "primary")
    ]


def entry_by_label(label: str) -> PublishedEntry:
    for e in PUBLISHED_ENTRIES:
        if e.label == label:
            return e
    raise KeyError(label)
