"""Slack and remainder arithmetic.

The slack of ``p`` with respect to ``d`` is the smallest positive ``t`` such
that ``d`` divides ``p + t``, computed as ``d * (p // d + 1) - p``.  When ``d``
divides ``p`` this yields ``d`` rather than ``0``; callers running the
next-prime algorithm skip divisible pairs themselves.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, IntegerOverflow

U64_MAX = 2**64 - 1


def _check_u64(*values: int) -> None:
    for v in values:
        if v < 0 or v > U64_MAX:
            raise IntegerOverflow(f"{v} outside the unsigned 64-bit range")


def _check_divisor(d: int) -> None:
    if d < 2:
        raise DomainError(f"divisor must be >= 2, got {d}")


def slack(p: int, d: int) -> int:
    """Return ``d * (p // d + 1) - p``, the amount ``p`` lacks to be divisible by ``d``."""
    _check_divisor(d)
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    _check_u64(p, d)
    top = d * (p // d + 1)
    _check_u64(top)
    return top - p


def remainder(p: int, d: int) -> int:
    _check_divisor(d)
    if p < 0:
        raise DomainError(f"p must be non-negative, got {p}")
    _check_u64(p, d)
    return p % d


def slack_remainder_dual(d: int, s: int) -> int:
    """Map a slack back to the remainder it came from (``d - s``).

    A slack equal to ``d`` (the divisible case) maps to remainder 0.
    """
    _check_divisor(d)
    if not 1 <= s <= d:
        raise DomainError(f"slack {s} outside [1, {d}]")
    return d - s


class Alpha(NamedTuple):
    """Fractional part of ``p / d`` kept as an unreduced integer pair."""

    num: int
    den: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def alpha(p: int, d: int) -> Alpha:
    return Alpha(remainder(p, d), d)


def alpha_in_prime_range(a: Alpha) -> bool:
    """True when ``a`` lies in [1/d, (d-1)/d], the range attained by primes."""
    return 1 <= a.num <= a.den - 1


def alpha_in_unit_range(a: Alpha) -> bool:
    """True when ``a`` lies in [0, 1), the range valid for any dividend."""
    return 0 <= a.num < a.den
