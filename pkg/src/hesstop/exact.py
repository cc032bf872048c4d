"""Exact scalars and binomial coefficients.

Integers are Python ``int`` (arbitrary precision) and rationals are
:class:`fractions.Fraction`, which already keeps the normal form
``denominator > 0``, ``gcd(|num|, den) == 1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "DomainError",
    "Rat",
    "binom",
    "absorption_check",
    "format_rat",
    "parse_rat",
]

Rat = Fraction


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


_RAT_RE = re.compile(r"-?\d+(?:/\d+)?")


@lru_cache(maxsize=1 << 16)
def _binom_nonneg(n: int, k: int) -> int:
    k = min(k, n - k)
    acc = 1
    for i in range(1, k + 1):
        # acc * (n - k + i) is always divisible by i
        acc = acc * (n - k + i) // i
    return acc


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero when k < 0 or k > n.

    Negative upper index is rejected rather than extended.
    """
    if n < 0:
        raise DomainError(f"binom: negative upper index n={n}")
    if k < 0 or k > n:
        return 0
    return _binom_nonneg(n, k)


def absorption_check(m: int, k: int) -> bool:
    """Check (m - k) C(m, k) == (k + 1) C(m, k + 1)."""
    if not 0 <= k <= m:
        raise DomainError(f"absorption_check needs 0 <= k <= m, got m={m}, k={k}")
    return (m - k) * binom(m, k) == (k + 1) * binom(m, k + 1)


def format_rat(q: Fraction | int) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> Fraction:
    if not isinstance(s, str) or _RAT_RE.fullmatch(s) is None:
        raise DomainError(f"not a rational literal: {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise DomainError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def is_integral(q: Fraction) -> bool:
    return Fraction(q).denominator == 1
