"""Binomial-coefficient identities arising from the Arnold family.

Every evaluator returns both sides exactly, computed literally from the
printed formula (signs and all), with the convention that C(n, k) = 0
outside 0 <= k <= n.  Rational prefactors with denominator ``m`` are
accumulated exactly as integer numerators over the common denominator and
returned as :class:`~fractions.Fraction`; integrality of the result is
checked by the sweeps, not assumed.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .exact import DomainError, binom, format_rat

__all__ = [
    "IdentityId",
    "IdentityReport",
    "Failure",
    "eq1_sides",
    "eq2_sides",
    "eq3_sides",
    "eq5_sides",
    "eq6_sides",
    "eq7_lhs",
    "eq10_sides",
    "t_value",
    "f_value",
    "parameter_grid",
    "sweep",
]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _require_even(m: int, name: str) -> None:
    if m < 2 or m % 2:
        raise DomainError(f"{name}: m must be an even integer >= 2, got {m}")


def _require_low_half(m: int, j: int, name: str) -> None:
    if m < 2 or not 0 <= 2 * j <= m - 1:
        raise DomainError(f"{name}: need m >= 2 and 0 <= j <= (m-1)/2, got m={m}, j={j}")


# -- main identities ----------------------------------------------------------

def eq1_sides(m: int, j: int) -> tuple[Fraction, Fraction]:
    """Both sides of the A(j) identity; RHS is C(m-1, j)."""
    _require_low_half(m, j, "eq1")
    c = m - 1
    s = binom(c, 2 * j)
    for k in range(j):
        s += binom(c, 2 * k) * binom(c, 2 * j - 2 * k) - binom(c, 2 * k + 1) * binom(c, 2 * j - 2 * k - 1)
    return Fraction(_sign(j) * s), Fraction(binom(c, j))


def eq2_sides(m: int, j: int) -> tuple[Fraction, Fraction]:
    """Both sides of the C(j) identity (m even); RHS is C(m-1, j + m/2 - 1)."""
    _require_even(m, "eq2")
    h = m // 2
    if not 0 <= j <= h - 1:
        raise DomainError(f"eq2: need 0 <= j <= (m-2)/2, got m={m}, j={j}")
    c = m - 1
    s = -binom(c, 2 * j - 1)
    for k in range(h - j):
        s += binom(c, 2 * k + 2 * j) * binom(c, 2 * k + 1) - binom(c, 2 * k) * binom(c, 2 * k + 2 * j - 1)
    return Fraction(_sign(h + j - 1) * s), Fraction(binom(c, j + h - 1))


def eq3_sides(m: int) -> tuple[Fraction, Fraction]:
    """Both sides of the B identity (m even); RHS is C(m-1, m/2)."""
    _require_even(m, "eq3")
    h = m // 2
    c = m - 1
    s = 1 - m
    for k in range(h - 1):
        s += binom(c, 2 * k + 1) * (binom(c, 2 * k + 2) - binom(c, 2 * k))
    return Fraction(_sign(h) * s), Fraction(binom(c, h))


# -- proof-step identities ----------------------------------------------------

def eq5_sides(m: int, j: int) -> tuple[Fraction, Fraction]:
    """A(j) identity after absorption: rational prefactors (4k - 2j + 1)/m."""
    _require_low_half(m, j, "eq5")
    # numerators over the common denominator m
    num = m * binom(m - 1, 2 * j)
    for k in range(j):
        num += (4 * k - 2 * j + 1) * binom(m, 2 * k + 1) * binom(m, 2 * j - 2 * k)
    return Fraction(_sign(j) * num, m), Fraction(binom(m - 1, j))


def eq6_sides(m: int, r: int) -> tuple[Fraction, Fraction]:
    """(-1)^r C(m-1, r) against the alternating partial row sum of C(m, .)."""
    if m < 1 or not 0 <= r <= m:
        raise DomainError(f"eq6: need m >= 1 and 0 <= r <= m, got m={m}, r={r}")
    rhs = sum(_sign(k) * binom(m, k) for k in range(r + 1))
    return Fraction(_sign(r) * binom(m - 1, r)), Fraction(rhs)


def eq7_lhs(m: int, j: int) -> Fraction:
    """The sum that has to vanish; returns its exact value."""
    _require_low_half(m, j, "eq7")
    num = 0
    for k in range(1, j + 1):
        num += _sign(k) * binom(m, j + k) * (m + (1 - 2 * k) * binom(m, j - k + 1))
    return Fraction(num, m)


def eq10_sides(m: int, j: int) -> tuple[Fraction, Fraction]:
    """C(j) identity after absorption (m even, 0 <= j <= m/2)."""
    _require_even(m, "eq10")
    h = m // 2
    if not 0 <= j <= h:
        raise DomainError(f"eq10: need 0 <= j <= m/2, got m={m}, j={j}")
    num = 0
    for k in range(h - j + 1):
        num += (m - 4 * k - 2 * j - 1) * binom(m, 2 * k + 1) * binom(m, 2 * k + 2 * j)
    return Fraction(_sign(h + j - 1) * num, m), Fraction(binom(m - 1, j + h - 1))


def t_value(m: int, j: int) -> Fraction:
    """T(m, j); equals (j + 1) C(m, j + 1)."""
    if m < 1 or not 0 <= j <= m - 1:
        raise DomainError(f"T: need m >= 1 and 0 <= j <= m-1, got m={m}, j={j}")
    s = 0
    for k in range(1, j + 2):
        s += _sign(k + 1) * (2 * k - 1) * binom(m, k + j) * binom(m, j - k + 1)
    return Fraction(s)


def f_value(m: int, j: int) -> Fraction:
    """F(m, j); equals C(m, j)."""
    if m < 1 or not 0 <= j <= m:
        raise DomainError(f"F: need m >= 1 and 0 <= j <= m, got m={m}, j={j}")
    s = binom(m, j) ** 2
    for k in range(1, j + 1):
        s += 2 * _sign(k) * binom(m, j - k) * binom(m, j + k)
    return Fraction(s)


# -- sweeps -------------------------------------------------------------------

class IdentityId(str, enum.Enum):
    EQ1 = "EQ1"
    EQ2 = "EQ2"
    EQ3 = "EQ3"
    EQ5 = "EQ5"
    EQ6 = "EQ6"
    EQ7 = "EQ7"
    EQ10 = "EQ10"
    T_CLOSED = "T_CLOSED"
    F_CLOSED = "F_CLOSED"

    @classmethod
    def parse(cls, name: str) -> "IdentityId":
        try:
            return cls(name.upper())
        except ValueError:
            raise DomainError(f"unknown identity {name!r}") from None


@dataclass(frozen=True)
class Failure:
    m: int
    j: int
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {"m": self.m, "j": self.j, "lhs": format_rat(self.lhs), "rhs": format_rat(self.rhs)}


@dataclass(frozen=True)
class IdentityReport:
    identity: IdentityId
    m_lo: int
    m_hi: int
    checked: int
    first_failure: Optional[Failure] = None

    @property
    def status(self) -> str:
        return "pass" if self.first_failure is None else "fail"

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def to_json(self) -> dict:
        return {
            "identity": self.identity.value,
            "m_lo": self.m_lo,
            "m_hi": self.m_hi,
            "checked": self.checked,
            "status": self.status,
            "first_failure": None if self.first_failure is None else self.first_failure.to_json(),
        }


def parameter_grid(identity: IdentityId, m: int) -> range:
    """Second-parameter values checked at a given m (empty if m is not valid)."""
    if identity in (IdentityId.EQ1, IdentityId.EQ5, IdentityId.EQ7):
        return range((m - 1) // 2 + 1) if m >= 2 else range(0)
    if identity is IdentityId.EQ2:
        return range(m // 2) if m >= 2 and m % 2 == 0 else range(0)
    if identity is IdentityId.EQ3:
        return range(1) if m >= 2 and m % 2 == 0 else range(0)
    if identity is IdentityId.EQ10:
        return range(m // 2 + 1) if m >= 2 and m % 2 == 0 else range(0)
    if identity in (IdentityId.EQ6, IdentityId.F_CLOSED):
        return range(m + 1) if m >= 1 else range(0)
    if identity is IdentityId.T_CLOSED:
        return range(m) if m >= 1 else range(0)
    raise DomainError(f"no grid for {identity}")


def _check_eq5(m: int, j: int) -> Iterator[tuple[Fraction, Fraction]]:
    lhs, rhs = eq5_sides(m, j)
    yield lhs, rhs
    # the rewritten form must agree with the original in value too
    yield lhs, eq1_sides(m, j)[0]


def _check_eq10(m: int, j: int) -> Iterator[tuple[Fraction, Fraction]]:
    lhs, rhs = eq10_sides(m, j)
    yield lhs, rhs
    n = m // 2 - j
    if 2 * n <= m - 1:
        # substitution m = 2r, j = r - n lands on the A(n) identity
        yield lhs, eq5_sides(m, n)[0]
    if j == 1:
        yield lhs, eq3_sides(m)[0]


_CHECKS: dict[IdentityId, Callable[[int, int], Iterator[tuple[Fraction, Fraction]]]] = {
    IdentityId.EQ1: lambda m, j: iter([eq1_sides(m, j)]),
    IdentityId.EQ2: lambda m, j: iter([eq2_sides(m, j)]),
    IdentityId.EQ3: lambda m, j: iter([eq3_sides(m)]),
    # the transformed identity must agree with the original in value as well
    IdentityId.EQ5: lambda m, j: _check_eq5(m, j),
    IdentityId.EQ6: lambda m, j: iter([eq6_sides(m, j)]),
    IdentityId.EQ7: lambda m, j: iter([(eq7_lhs(m, j), Fraction(0))]),
    IdentityId.EQ10: _check_eq10,
    IdentityId.T_CLOSED: lambda m, j: iter([(t_value(m, j), Fraction((j + 1) * binom(m, j + 1)))]),
    IdentityId.F_CLOSED: lambda m, j: iter([(f_value(m, j), Fraction(binom(m, j)))]),
}


def _is_exact_match(lhs: Fraction, rhs: Fraction) -> bool:
    return lhs == rhs and lhs.denominator == 1


def _sweep_one_m(identity: IdentityId, m: int) -> tuple[int, Optional[Failure]]:
    grid = parameter_grid(identity, m)
    check = _CHECKS[identity]
    for j in grid:
        for lhs, rhs in check(m, j):
            if not _is_exact_match(lhs, rhs):
                return len(grid), Failure(m, j, lhs, rhs)
    return len(grid), None


def _sweep_chunk(args: tuple[str, list[int]]) -> list[tuple[int, int, Optional[Failure]]]:
    identity = IdentityId(args[0])
    return [(m, *_sweep_one_m(identity, m)) for m in args[1]]


def sweep(identity: IdentityId, m_lo: int, m_hi: int, workers: int = 1) -> IdentityReport:
    """Check ``identity`` at every valid (m, j) with m_lo <= m <= m_hi.

    Work is split by m; the report does not depend on ``workers``.
    """
    identity = IdentityId(identity)
    if m_lo < 1 or m_hi < m_lo:
        raise DomainError(f"bad m range {m_lo}..{m_hi}")
    ms = list(range(m_lo, m_hi + 1))
    if workers <= 1 or len(ms) < 2:
        rows = _sweep_chunk((identity.value, ms))
    else:
        # interleave so expensive large m are spread over workers
        chunks = [ms[i::workers] for i in range(workers) if ms[i::workers]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            rows = [r for part in pool.map(_sweep_chunk, [(identity.value, c) for c in chunks]) for r in part]
    rows.sort(key=lambda r: r[0])
    checked = sum(r[1] for r in rows)
    failures = [r[2] for r in rows if r[2] is not None]
    first = min(failures, key=lambda f: (f.m, f.j)) if failures else None
    return IdentityReport(identity, m_lo, m_hi, checked, first)
