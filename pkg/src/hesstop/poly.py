"""Homogeneous bivariate polynomials over Q and exact real-root counting.

An :class:`HPoly` of degree n stores ``coeffs[j]``, the coefficient of
``x**(n-j) * y**j``.  Sign questions on the punctured plane reduce to the
chart ``f(1, t)`` plus the point ``(0, 1)``, and are settled by Sturm chains.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import DomainError, binom, format_rat, parse_rat

__all__ = [
    "HPoly",
    "UPoly",
    "Sign",
    "SturmCertificate",
    "SignCertificate",
    "hp_mul",
    "hp_diff",
    "hp_linear_combine",
    "hp_pow",
    "hp_div_exact",
    "restrict",
    "sturm_real_roots",
    "sign_on_punctured_plane",
    "sign_certificate",
    "r2_power",
]


def _common_denominator(cs: Iterable[Fraction]) -> tuple[list[int], int]:
    cs = list(cs)
    d = 1
    for c in cs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return [c.numerator * (d // c.denominator) for c in cs], d


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


@dataclass(frozen=True)
class HPoly:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise DomainError("negative degree")
        if len(self.coeffs) != self.degree + 1:
            raise DomainError(f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable) -> "HPoly":
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(len(cs) - 1, cs)

    @classmethod
    def zero(cls, degree: int) -> "HPoly":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, ypow: int, c=1) -> "HPoly":
        cs = [Fraction(0)] * (degree + 1)
        cs[ypow] = Fraction(c)
        return cls(degree, tuple(cs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "HPoly") -> "HPoly":
        return hp_linear_combine(1, self, 1, other)

    def __sub__(self, other: "HPoly") -> "HPoly":
        return hp_linear_combine(1, self, -1, other)

    def __neg__(self) -> "HPoly":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            return hp_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "HPoly":
        c = Fraction(c)
        return HPoly(self.degree, tuple(c * a for a in self.coeffs))

    def __call__(self, x, y):
        """Evaluate; exact for rational inputs, float arithmetic for floats."""
        n = self.degree
        if isinstance(x, float) or isinstance(y, float):
            return sum(float(c) * x ** (n - j) * y ** j for j, c in enumerate(self.coeffs) if c)
        return sum((c * Fraction(x) ** (n - j) * Fraction(y) ** j for j, c in enumerate(self.coeffs) if c), Fraction(0))

    def float_evaluator(self):
        """A fast float evaluator, ``g(x, y)``, for sampling on the unit circle."""
        n = self.degree
        fc = [float(c) for c in self.coeffs]

        def g(x: float, y: float) -> float:
            acc = 0.0
            xp = [1.0] * (n + 1)
            for i in range(1, n + 1):
                xp[i] = xp[i - 1] * x
            yp = 1.0
            for j in range(n + 1):
                if fc[j]:
                    acc += fc[j] * xp[n - j] * yp
                yp *= y
            return acc

        return g

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [format_rat(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "HPoly":
        if not isinstance(obj, dict) or set(obj) != {"degree", "coeffs"}:
            raise DomainError("polynomial object needs exactly the keys 'degree' and 'coeffs'")
        deg, cs = obj["degree"], obj["coeffs"]
        if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
            raise DomainError(f"bad degree {deg!r}")
        if not isinstance(cs, list):
            raise DomainError("coeffs must be a list")
        if len(cs) != deg + 1:
            raise DomainError(f"degree {deg} needs {deg + 1} coefficients, got {len(cs)}")
        return cls(deg, tuple(parse_rat(c) for c in cs))

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(p for p in (_pow("x", n - j), _pow("y", j)) if p)
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms) or "0"


def _pow(v: str, e: int) -> str:
    return "" if e == 0 else v if e == 1 else f"{v}^{e}"


def hp_mul(a: HPoly, b: HPoly) -> HPoly:
    an, ad = _common_denominator(a.coeffs)
    bn, bd = _common_denominator(b.coeffs)
    d = ad * bd
    return HPoly(a.degree + b.degree, tuple(Fraction(c, d) for c in _convolve(an, bn)))


def hp_pow(a: HPoly, e: int) -> HPoly:
    if e < 0:
        raise DomainError("negative exponent")
    out = HPoly.of([1])
    for _ in range(e):
        out = hp_mul(out, a)
    return out


def hp_diff(f: HPoly, var: str) -> HPoly:
    """Partial derivative in ``"x"`` or ``"y"``; degree drops by one (floored at 0)."""
    n = f.degree
    if n == 0:
        return HPoly.zero(0)
    if var == "x":
        return HPoly(n - 1, tuple((n - j) * f.coeffs[j] for j in range(n)))
    if var == "y":
        return HPoly(n - 1, tuple(j * f.coeffs[j] for j in range(1, n + 1)))
    raise DomainError(f"unknown variable {var!r}")


def hp_linear_combine(c1, a: HPoly, c2, b: HPoly) -> HPoly:
    if a.degree != b.degree:
        raise DomainError(f"degree mismatch {a.degree} vs {b.degree}")
    c1, c2 = Fraction(c1), Fraction(c2)
    return HPoly(a.degree, tuple(c1 * p + c2 * q for p, q in zip(a.coeffs, b.coeffs)))


def hp_div_exact(a: HPoly, b: HPoly) -> HPoly:
    """Quotient ``a / b``; raises if b does not divide a."""
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    if b.degree > a.degree:
        if a.is_zero():
            return HPoly.zero(0)
        raise DomainError("divisor has larger degree")
    n = a.degree - b.degree
    # long division from the lowest y-power of b upward
    s = next(i for i, c in enumerate(b.coeffs) if c)
    rem = list(a.coeffs)
    q = [Fraction(0)] * (n + 1)
    lead = b.coeffs[s]
    for i in range(n + 1):
        c = rem[i + s] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b.coeffs):
                rem[i + j] -= c * bj
    if any(rem):
        raise DomainError("polynomial division is not exact")
    return HPoly(n, tuple(q))


def r2_power(k: int) -> HPoly:
    """(x^2 + y^2)^k."""
    cs = [Fraction(0)] * (2 * k + 1)
    for i in range(k + 1):
        cs[2 * i] = Fraction(binom(k, i))
    return HPoly(2 * k, tuple(cs))


# -- univariate ---------------------------------------------------------------

@dataclass(frozen=True)
class UPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``t**i``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        acc = Fraction(0) if not isinstance(t, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + (float(c) if isinstance(t, float) else c)
        return acc

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly(())
        an, ad = _common_denominator(self.coeffs)
        bn, bd = _common_denominator(other.coeffs)
        return UPoly(tuple(Fraction(c, ad * bd) for c in _convolve(an, bn)))


def restrict(f: HPoly) -> tuple[UPoly, Fraction]:
    """(f(1, t), f(0, 1))."""
    return UPoly(f.coeffs), f.coeffs[-1]


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _primitive(p: list[int]) -> list[int]:
    g = math.gcd(*p)
    return [c // g for c in p] if g > 1 else p


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, integer coefficients."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    for _ in range(len(a) - len(b) + 1):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bi in enumerate(b):
            r[shift + i] -= lr * bi
        r.pop()
        _trim(r)
    return _trim(r)


def _variations(signs: Iterable[int]) -> int:
    seq = [s for s in signs if s]
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


@dataclass(frozen=True)
class SturmCertificate:
    """Sturm chain of ``poly`` (integer, primitive, positive rescalings)."""

    poly: UPoly
    chain: tuple[tuple[int, ...], ...]
    var_neg_inf: int
    var_pos_inf: int
    sample_point: Fraction
    sample_sign: int

    @property
    def real_roots(self) -> int:
        return self.var_neg_inf - self.var_pos_inf

    def to_json(self) -> dict:
        return {
            "poly": [format_rat(c) for c in self.poly.coeffs],
            "chain": [[str(c) for c in p] for p in self.chain],
            "variations_neg_inf": self.var_neg_inf,
            "variations_pos_inf": self.var_pos_inf,
            "real_roots": self.real_roots,
            "sample_point": format_rat(self.sample_point),
            "sample_sign": self.sample_sign,
        }


def sturm_real_roots(u: UPoly) -> SturmCertificate:
    """Number of distinct real roots of ``u`` with its Sturm chain as evidence."""
    if u.is_zero():
        raise DomainError("Sturm sequence of the zero polynomial")
    ints, _ = _common_denominator(u.coeffs)
    p0 = _primitive(ints)
    chain = [p0]
    if len(p0) > 1:
        p1 = _primitive([i * c for i, c in enumerate(p0)][1:])
        chain.append(p1)
        while len(chain[-1]) > 1:
            a, b = chain[-2], chain[-1]
            r = _prem(a, b)
            if not r:
                break
            # rem(a, b) = prem / lc(b)^(da - db + 1); keep the sign of -rem
            e = len(a) - len(b) + 1
            s = -1 if (b[-1] < 0 and e % 2) else 1
            chain.append(_primitive([-s * c for c in r]))
    pos = _variations(_sgn(p[-1]) for p in chain)
    neg = _variations(_sgn(p[-1]) * (-1 if (len(p) - 1) % 2 else 1) for p in chain)
    t0 = Fraction(0)
    return SturmCertificate(u, tuple(tuple(p) for p in chain), neg, pos, t0, _sgn(u(t0)))


class Sign(str, enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    MIXED_OR_VANISHING = "MIXED_OR_VANISHING"


@dataclass(frozen=True)
class SignCertificate:
    """Evidence for a sign decision of a homogeneous form off the origin."""

    sign: Sign
    at_0_1: Fraction
    at_1_0: Fraction
    sturm: SturmCertificate | None

    def to_json(self) -> dict:
        return {
            "sign": self.sign.value,
            "value_at_(0,1)": format_rat(self.at_0_1),
            "value_at_(1,0)": format_rat(self.at_1_0),
            "sturm": None if self.sturm is None else self.sturm.to_json(),
        }


def sign_certificate(f: HPoly) -> SignCertificate:
    if f.is_zero():
        raise DomainError("sign of the zero polynomial")
    u, at01 = restrict(f)
    at10 = f.coeffs[0]
    if f.degree % 2:
        return SignCertificate(Sign.MIXED_OR_VANISHING, at01, at10, None)
    cert = sturm_real_roots(u)
    sign = Sign.MIXED_OR_VANISHING
    if cert.real_roots == 0:
        if at01 > 0 and at10 > 0:
            sign = Sign.POSITIVE
        elif at01 < 0 and at10 < 0:
            sign = Sign.NEGATIVE
    return SignCertificate(sign, at01, at10, cert)


def sign_on_punctured_plane(f: HPoly) -> Sign:
    """Decide whether f > 0 (or f < 0) everywhere on R^2 minus the origin."""
    return sign_certificate(f).sign
