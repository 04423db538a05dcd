"""Deterministic ground truth: trial division, whole-table and segmented sieves.

The three routes are implemented independently of each other so that a bug in
one cannot quietly vouch for the slack method.  Nothing here is probabilistic.

Sieves use an odd-only layout: index ``j`` stands for the odd number ``2j + 1``.
"""
from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CapacityError, DomainError, IntegerOverflow
from .slack import U64_MAX

MEM_BUDGET_ENV = "SLACKPRIME_MEM_BUDGET"
DEFAULT_MEM_BUDGET = 1 << 30
DEFAULT_SEGMENT = 1 << 20  # odd candidates per segment


def mem_budget() -> int:
    """Byte cap on sieve allocations, from ``SLACKPRIME_MEM_BUDGET`` if set."""
    raw = os.environ.get(MEM_BUDGET_ENV)
    if not raw:
        return DEFAULT_MEM_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{MEM_BUDGET_ENV} must be an integer byte count, got {raw!r}")
    if value <= 0:
        raise DomainError(f"{MEM_BUDGET_ENV} must be positive")
    return value


def _require_budget(nbytes: int, what: str) -> None:
    budget = mem_budget()
    if nbytes > budget:
        raise CapacityError(f"{what} needs {nbytes} bytes, budget is {budget}")


# -- trial division ---------------------------------------------------------

def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@njit(cache=True)
def _trial_kernel(values, out):
    for k in range(values.size):
        n = values[k]
        if n < 2:
            out[k] = False
            continue
        if n < 4:
            out[k] = True
            continue
        if n % 2 == 0 or n % 3 == 0:
            out[k] = False
            continue
        res = True
        i = 5
        while i * i <= n:
            if n % i == 0 or n % (i + 2) == 0:
                res = False
                break
            i += 6
        out[k] = res


def is_prime_trial_array(values) -> np.ndarray:
    """Vectorised :func:`is_prime_trial`; values must be below 2**62."""
    arr = np.ascontiguousarray(values, dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= 1 << 62):
        raise IntegerOverflow("array trial division supports 0 <= n < 2**62")
    out = np.empty(arr.shape, dtype=bool)
    _trial_kernel(arr.ravel(), out.ravel())
    return out


# -- sieves -----------------------------------------------------------------

@functools.lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    """Odd primes up to ``limit`` by a plain (non-segmented) sieve."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    _require_budget(limit + 1, "base-prime sieve")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    primes.flags.writeable = False
    return primes[1:]


def _odd_segment(j0: int, count: int, base: np.ndarray) -> np.ndarray:
    """Primality of the odd numbers 2j+1 for j in [j0, j0 + count)."""
    seg = np.ones(count, dtype=bool)
    lo = 2 * j0 + 1
    hi = 2 * (j0 + count) - 1
    for q in base:
        q = int(q)
        qq = q * q
        if qq > hi:
            break
        m = max(qq, -(-lo // q) * q)
        if m % 2 == 0:
            m += q
        start = (m - 1) // 2 - j0
        if start < count:
            seg[start::q] = False
    if j0 == 0:
        seg[0] = False  # 1 is not prime
    return seg


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable primality bitmap for [0, limit], odd numbers only, bit-packed."""

    limit: int
    bits: np.ndarray

    def _odd_flags(self) -> np.ndarray:
        n_odd = (self.limit + 1) // 2
        return np.unpackbits(self.bits, count=n_odd, bitorder="little").astype(bool)

    def is_prime(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise DomainError(f"{n} outside table range [0, {self.limit}]")
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        j = n // 2
        return bool((self.bits[j >> 3] >> (j & 7)) & 1)

    __contains__ = is_prime

    def primes(self) -> np.ndarray:
        odd = 2 * np.flatnonzero(self._odd_flags()).astype(np.int64) + 1
        if self.limit >= 2:
            return np.concatenate(([2], odd)).astype(np.int64)
        return odd

    def count(self) -> int:
        odd = int(np.unpackbits(self.bits, bitorder="little")[: (self.limit + 1) // 2].sum())
        return odd + (1 if self.limit >= 2 else 0)

    def mask(self, lo: int, hi: int) -> np.ndarray:
        """Boolean primality flags for every integer in [lo, hi]."""
        if not 0 <= lo <= hi <= self.limit:
            raise DomainError(f"[{lo}, {hi}] outside table range [0, {self.limit}]")
        j_lo, j_hi = lo // 2, hi // 2
        b_lo, b_hi = j_lo >> 3, (j_hi >> 3) + 1
        odd = np.unpackbits(self.bits[b_lo:b_hi], bitorder="little").astype(bool)
        n = np.arange(lo, hi + 1, dtype=np.int64)
        out = np.zeros(n.size, dtype=bool)
        is_odd = (n & 1) == 1
        out[is_odd] = odd[n[is_odd] // 2 - 8 * b_lo]
        out[n == 2] = True
        return out


@functools.lru_cache(maxsize=4)
def sieve_upto(n: int, segment: int = DEFAULT_SEGMENT) -> PrimeTable:
    if n < 2:
        raise DomainError(f"sieve limit must be >= 2, got {n}")
    if n > U64_MAX:
        raise IntegerOverflow(f"{n} outside the unsigned 64-bit range")
    n_odd = (n + 1) // 2
    segment -= segment % 8
    if segment <= 0:
        raise DomainError("segment must hold at least 8 candidates")
    _require_budget(n_odd // 8 + 1 + segment, f"prime table to {n}")
    base = _base_primes(math.isqrt(n))
    chunks = []
    for j0 in range(0, n_odd, segment):
        count = min(segment, n_odd - j0)
        chunks.append(np.packbits(_odd_segment(j0, count, base), bitorder="little"))
    bits = np.concatenate(chunks)
    bits.flags.writeable = False
    return PrimeTable(limit=n, bits=bits)


def segmented_sieve(lo: int, hi: int, segment: int = DEFAULT_SEGMENT) -> np.ndarray:
    """Primes in the closed interval [lo, hi], ascending."""
    if not 2 <= lo <= hi:
        raise DomainError(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if hi > U64_MAX:
        raise IntegerOverflow(f"{hi} outside the unsigned 64-bit range")
    if segment <= 0:
        raise DomainError("segment must be positive")
    _require_budget(segment, "sieve segment")
    base = _base_primes(math.isqrt(hi))
    out = [np.array([2], dtype=np.int64)] if lo <= 2 else []
    j_lo = lo // 2  # first odd >= lo is 2*j_lo + 1 (for even lo) or lo itself
    j_hi = (hi - 1) // 2
    for j0 in range(j_lo, j_hi + 1, segment):
        count = min(segment, j_hi + 1 - j0)
        seg = _odd_segment(j0, count, base)
        out.append(2 * (j0 + np.flatnonzero(seg).astype(np.int64)) + 1)
    if not out:
        return np.zeros(0, dtype=np.int64)
    primes = np.concatenate(out)
    return primes[(primes >= lo) & (primes <= hi)]


def count_primes_segmented(n: int, segment: int = DEFAULT_SEGMENT) -> int:
    """pi(n) without materialising the table; memory is one segment."""
    if n < 2:
        return 0
    _require_budget(segment, "sieve segment")
    base = _base_primes(math.isqrt(n))
    n_odd = (n + 1) // 2
    total = 1
    for j0 in range(0, n_odd, segment):
        total += int(_odd_segment(j0, min(segment, n_odd - j0), base).sum())
    return total


def prime_count(n: int) -> int:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return count_primes_segmented(n)


def nth_prime_upper_bound(i: int) -> int:
    """Rosser-type bound: p_i < i (ln i + ln ln i) for i >= 6."""
    if i < 6:
        return 13
    return int(i * (math.log(i) + math.log(math.log(i)))) + 1


def nth_prime(i: int) -> int:
    if i < 1:
        raise DomainError(f"prime index must be >= 1, got {i}")
    return int(sieve_upto(nth_prime_upper_bound(i)).primes()[i - 1])


def primes_by_index(start: int, count: int) -> np.ndarray:
    """Primes P_start .. P_{start+count-1} (1-based, P_1 = 2)."""
    if start < 1 or count < 1:
        raise DomainError("start and count must be >= 1")
    last = start + count - 1
    primes = sieve_upto(nth_prime_upper_bound(last)).primes()
    return primes[start - 1 : last]


def next_prime_oracle(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    width = 64
    lo = n + 1
    while True:
        hi = lo + width - 1
        if lo > U64_MAX:
            raise IntegerOverflow(f"no prime above {n} fits in 64 bits")
        hi = min(hi, U64_MAX)
        found = segmented_sieve(lo, hi)
        if found.size:
            return int(found[0])
        lo = hi + 1
        width *= 2
