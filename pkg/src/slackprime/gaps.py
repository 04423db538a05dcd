"""Prime gaps: records, the half-prime bound, merit, maximal gaps, estimators."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import DomainError

# log of twice the twin-prime constant, and the constant itself, as printed
TWIN_LOG_C = 0.2778769
TWIN_C2 = 1.3203236

CSV_COLUMNS = (
    "i", "p_i", "p_next", "gap", "merit", "bound_paper",
    "within_paper_bound", "is_maximal", "cramer", "wolf", "gauss_pi",
)


def fmt_real(x: float) -> str:
    """10 significant digits, positional notation (never scientific)."""
    return np.format_float_positional(x, precision=10, unique=False, fractional=False, trim="-")


def paper_gap_bound(p: int) -> int:
    """floor((p + 1) / 2), the claimed ceiling on the gap after ``p``."""
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    return (p + 1) // 2


def merit(gap: int, p: int) -> float:
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    return gap / math.log(p)


@dataclass(frozen=True)
class GapRecord:
    i: int
    p_i: int
    p_next: int
    gap: int
    merit: float
    bound_paper: int
    bound_bertrand: int
    within_paper_bound: bool
    is_maximal: bool = False


def gap_record(i: int, p_i: int, p_next: int) -> GapRecord:
    if p_next <= p_i:
        raise DomainError(f"successor {p_next} must exceed {p_i}")
    g = p_next - p_i
    bound = paper_gap_bound(p_i)
    return GapRecord(
        i=i, p_i=p_i, p_next=p_next, gap=g, merit=merit(g, p_i),
        bound_paper=bound, bound_bertrand=p_i, within_paper_bound=g <= bound,
    )


def gap_records(primes, first_index: int = 1) -> Iterator[GapRecord]:
    """Records for each consecutive pair of an ascending prime sequence."""
    ps = [int(x) for x in primes]
    for k, (a, b) in enumerate(zip(ps, ps[1:])):
        yield gap_record(first_index + k, a, b)


def maximal_gaps(records: Iterable[GapRecord]) -> list[GapRecord]:
    """Return ``records`` with ``is_maximal`` set where the gap beats all earlier ones."""
    out = []
    best = 0
    prev_i = None
    for rec in records:
        if prev_i is not None and rec.i <= prev_i:
            raise DomainError(f"records out of order: index {rec.i} after {prev_i}")
        prev_i = rec.i
        is_max = rec.gap > best
        if is_max:
            best = rec.gap
        out.append(replace(rec, is_maximal=is_max))
    return out


@dataclass(frozen=True)
class EstimateSet:
    cramer: float
    shanks: float
    wolf: float
    gauss_pi: float


def estimates(p: int, pi_p: int) -> EstimateSet:
    """Heuristic gap sizes near ``p`` plus the N/ln N count estimate.

    ``pi_p`` must be the exact prime count at ``p``.  Cramér's and Shanks'
    forms coincide numerically and are kept under separate names.
    """
    if pi_p <= 0:
        raise DomainError(f"pi(p) must be positive, got {pi_p}")
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    lp = math.log(p)
    sq = lp * lp
    wolf = p / pi_p * (2 * math.log(pi_p) - lp + TWIN_LOG_C)
    return EstimateSet(cramer=sq, shanks=sq, wolf=wolf, gauss_pi=p / lp)


def write_gap_csv(records: Iterable[GapRecord], fh: TextIO, pi_lookup=None) -> int:
    """Write records as CSV; ``pi_lookup(p)`` supplies pi(p) for the estimators.

    Returns the number of data rows written.
    """
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    n = 0
    for rec in records:
        pi_p = pi_lookup(rec.p_i) if pi_lookup else rec.i
        est = estimates(rec.p_i, pi_p)
        w.writerow([
            rec.i, rec.p_i, rec.p_next, rec.gap, fmt_real(rec.merit), rec.bound_paper,
            int(rec.within_paper_bound), int(rec.is_maximal),
            fmt_real(est.cramer), fmt_real(est.wolf), fmt_real(est.gauss_pi),
        ])
        n += 1
    return n
