"""Successor primes from the slack list.

For a prime ``p`` with ``k = (p - 1) // 2`` the slack list holds
``slack(p, d)`` for every divisor ``d`` in ``[2, k]``.  The successor is
``p + E`` where ``E`` is the first even number missing from the list,
searched over ``[2, hi]`` and falling back to a fixed value just beyond that
range when every candidate is present.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Literal

import numpy as np
from numba import njit

from . import oracle
from .errors import DomainError, IntegerOverflow
from .slack import U64_MAX

Mode = Literal["faithful", "fast"]

SEED_SUCCESSORS = {2: 3, 3: 5}


@dataclass(frozen=True)
class EvenSearchRange:
    lo: int
    hi_in_range: int
    beyond: int


@dataclass(frozen=True, eq=False)
class SlackList:
    """Slack of ``p`` per divisor, plus a presence mask over even slack values."""

    p: int
    divisors: np.ndarray
    slacks: np.ndarray
    even_mask: np.ndarray  # even_mask[s] is True when even s occurs in slacks

    @cached_property
    def even_present(self) -> frozenset:
        return frozenset(np.flatnonzero(self.even_mask).tolist())

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.divisors.tolist(), self.slacks.tolist()))

    def __len__(self) -> int:
        return int(self.divisors.size)


@dataclass(frozen=True)
class NextPrimeResult:
    p: int
    e: int
    successor: int
    used_beyond_range: bool


def _check_source(p: int) -> None:
    if p < 5:
        raise DomainError(f"the slack method starts at 5, got {p} (2 and 3 are seeded)")
    if p % 2 == 0:
        raise DomainError(f"{p} is even")
    if p > U64_MAX:
        raise IntegerOverflow(f"{p} outside the unsigned 64-bit range")


def divisor_range(p: int) -> tuple[int, int]:
    _check_source(p)
    return 2, (p - 1) // 2


def even_search_range(p: int) -> EvenSearchRange:
    k = (p - 1) // 2
    if k % 2:
        return EvenSearchRange(2, k - 1, k + 1)
    return EvenSearchRange(2, k - 2, k)


def build_slack_list(p: int, verify: bool = False) -> SlackList:
    """Slacks of ``p`` against every divisor in ``[2, (p-1)/2]``.

    Divisible pairs are skipped, so a composite ``p`` yields a list with holes.
    With ``verify=True`` primality is first asserted by trial division.
    """
    lo, k = divisor_range(p)
    if verify and not oracle.is_prime_trial(p):
        raise DomainError(f"{p} is not prime")
    d = np.arange(lo, k + 1, dtype=np.int64)
    r = p % d
    keep = r != 0
    d = d[keep]
    s = d - r[keep]
    mask = np.zeros(k + 2, dtype=bool)
    mask[s[(s & 1) == 0]] = True
    return SlackList(p=p, divisors=d, slacks=s, even_mask=mask)


def first_missing_even(sl: SlackList) -> tuple[int, bool]:
    rng = even_search_range(sl.p)
    window = sl.even_mask[rng.lo : rng.hi_in_range + 1 : 2]
    missing = np.flatnonzero(~window)
    if missing.size:
        return rng.lo + 2 * int(missing[0]), False
    return rng.beyond, True


@njit(cache=True)
def _faithful_kernel(p):
    # returns (e, used_beyond_range, number of divisors dividing p)
    k = (p - 1) // 2
    presence = np.zeros(k + 2, dtype=np.bool_)
    divisible = 0
    for d in range(2, k + 1):
        r = p % d
        if r == 0:
            divisible += 1
        else:
            s = d - r
            if s % 2 == 0:
                presence[s] = True
    if k % 2:
        hi, beyond = k - 1, k + 1
    else:
        hi, beyond = k - 2, k
    for e in range(2, hi + 1, 2):
        if not presence[e]:
            return e, False, divisible
    return beyond, True, divisible


def _has_divisor_in(n: int, lo: int, hi: int) -> bool:
    """True when some divisor of ``n`` lies in the open-closed range (lo, hi]."""
    if hi <= lo:
        return False
    for a in range(1, math.isqrt(n) + 1):
        if n % a == 0:
            b = n // a
            if lo < a <= hi or lo < b <= hi:
                return True
    return False


def _first_missing_fast(p: int) -> tuple[int, bool]:
    # slack(p, d) == e  <=>  d > e and d | p + e, so no explicit list is needed
    k = (p - 1) // 2
    rng = even_search_range(p)
    for e in range(rng.lo, rng.hi_in_range + 1, 2):
        if not _has_divisor_in(p + e, e, k):
            return e, False
    return rng.beyond, True


def next_prime_slack(p: int, mode: Mode = "faithful", verify: bool = False) -> NextPrimeResult:
    """Successor of the prime ``p`` by the first-missing-even-slack rule.

    ``mode="faithful"`` builds the full slack list; ``mode="fast"`` reaches the
    same answer by testing each even candidate directly.  Composite input is
    rejected: the faithful list reveals a divisor for free, the fast path
    checks by trial division.
    """
    if p in SEED_SUCCESSORS:
        s = SEED_SUCCESSORS[p]
        return NextPrimeResult(p=p, e=s - p, successor=s, used_beyond_range=False)
    _check_source(p)
    if verify and not oracle.is_prime_trial(p):
        raise DomainError(f"{p} is not prime")
    if mode == "faithful":
        if p >= 1 << 62:
            raise IntegerOverflow("faithful mode supports p < 2**62")
        e, beyond, divisible = _faithful_kernel(p)
        if divisible:
            raise DomainError(f"{p} is not prime")
        e, beyond = int(e), bool(beyond)
    elif mode == "fast":
        if not verify and not oracle.is_prime_trial(p):
            raise DomainError(f"{p} is not prime")
        e, beyond = _first_missing_fast(p)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    succ = p + e
    if succ > U64_MAX:
        raise IntegerOverflow(f"successor {succ} outside the unsigned 64-bit range")
    return NextPrimeResult(p=p, e=e, successor=succ, used_beyond_range=beyond)


def prime_sequence(start: int, count: int, mode: Mode = "faithful") -> list[NextPrimeResult]:
    return list(iter_prime_sequence(start, count, mode))


def iter_prime_sequence(start: int, count: int, mode: Mode = "faithful") -> Iterator[NextPrimeResult]:
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    p = start
    for _ in range(count):
        res = next_prime_slack(p, mode=mode)
        yield res
        p = res.successor


def successor_upper_bound(p: int) -> int:
    """Largest successor the method can emit: ``p + (p-1)/2 + 1``."""
    return p + (p - 1) // 2 + 1


def max_divisor_bound(p: int) -> int:
    """Largest potential divisor of any emitted successor, ``floor((3p-1)/4)``."""
    return (3 * p - 1) // 4


def check_successor_divisors(successor: int) -> bool:
    """True when ``successor`` has no divisor in ``[2, (successor-1)/2]``.

    Checked directly by trial division rather than trusting the argument that
    the new divisors beyond the source's range cannot divide the successor.
    """
    k = (successor - 1) // 2
    return not _has_divisor_in(successor, 1, k)
