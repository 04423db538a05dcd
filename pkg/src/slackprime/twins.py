"""Twin-prime detection through R-constraints.

A prime ``p >= 5`` leads a twin pair exactly when no divisor ``d`` in
``[2, (p-1)/2]`` leaves remainder ``d - 2``; equivalently, when no slack of
``p`` equals 2.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import TextIO

import numpy as np
from numba import njit

from . import oracle
from .errors import DomainError, IntegerOverflow

EQUALS_ONE = "equals-1"
GREATER_THAN_TWO = "greater-than-2"
VIOLATES = "violates"


@dataclass(frozen=True)
class TwinReport:
    p: int
    checked_divisors: int
    violations: tuple[int, ...]
    verdict: bool
    companion: int | None

    def to_json_dict(self) -> dict:
        out = {"p": self.p, "violations": list(self.violations), "verdict": self.verdict}
        if self.verdict:
            out["companion"] = self.companion
        return out


@dataclass(frozen=True)
class TraceRow:
    d: int
    s: int
    status: str


@dataclass(frozen=True)
class ConstraintTrace:
    p: int
    rows: tuple[TraceRow, ...]

    def as_dict(self) -> dict[int, tuple[int, str]]:
        return {r.d: (r.s, r.status) for r in self.rows}


def _check(p: int, verify: bool) -> None:
    if p < 5 or p % 2 == 0:
        raise DomainError(f"R-constraints need an odd prime >= 5, got {p}")
    if p >= 1 << 62:
        raise IntegerOverflow("R-constraints support p < 2**62")
    if verify and not oracle.is_prime_trial(p):
        raise DomainError(f"{p} is not prime")


def r_constraint_violations(p: int, verify: bool = False) -> list[int]:
    """Every divisor ``d`` in [2, (p-1)/2] with ``p mod d == d - 2``, ascending."""
    _check(p, verify)
    d = np.arange(2, (p - 1) // 2 + 1, dtype=np.int64)
    return d[p % d == d - 2].tolist()


@njit(cache=True)
def _first_violation(p):
    k = (p - 1) // 2
    for d in range(2, k + 1):
        if p % d == d - 2:
            return d
    return 0


def is_twin_leader(p: int, verify: bool = False, full: bool = False) -> TwinReport:
    """Twin verdict for ``p``.

    By default the scan stops at the first violated constraint, so
    ``violations`` then lists only that divisor.  Pass ``full=True`` for the
    complete list.
    """
    _check(p, verify)
    if full:
        viol = tuple(r_constraint_violations(p))
    else:
        first = int(_first_violation(p))
        viol = (first,) if first else ()
    ok = not viol
    return TwinReport(
        p=p, checked_divisors=(p - 1) // 2 - 1, violations=viol,
        verdict=ok, companion=p + 2 if ok else None,
    )


def constraint_trace(p: int, verify: bool = False) -> ConstraintTrace:
    _check(p, verify)
    d = np.arange(2, (p - 1) // 2 + 1, dtype=np.int64)
    r = p % d
    # divisible pairs only arise for composite p; the literal slack formula gives d
    s = np.where(r == 0, d, d - r)
    rows = []
    for di, si in zip(d.tolist(), s.tolist()):
        if si == 1:
            status = EQUALS_ONE
        elif si == 2:
            status = VIOLATES
        else:
            status = GREATER_THAN_TWO
        rows.append(TraceRow(di, si, status))
    return ConstraintTrace(p=p, rows=tuple(rows))


def twin_pairs_upto(u: int, include_3_5: bool = False) -> list[tuple[int, int]]:
    """Twin pairs ``(p, p + 2)`` with ``p + 2 <= u``, verdicts from R-constraints.

    The R-constraint machinery starts at 5, so (3, 5) is left out unless
    ``include_3_5`` is set.
    """
    if u < 5:
        raise DomainError(f"upper bound must be >= 5, got {u}")
    pairs = [(3, 5)] if include_3_5 else []
    if u < 7:
        return pairs
    for p in oracle.segmented_sieve(5, u - 2).tolist():
        if is_twin_leader(p).verdict:
            pairs.append((p, p + 2))
    return pairs


def write_twin_csv(pairs, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(("p", "p_plus_2"))
    w.writerows(pairs)


def twin_report_json(report: TwinReport) -> str:
    return json.dumps(report.to_json_dict())
