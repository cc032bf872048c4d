"""Hessian forms, second fundamental forms and the gradient-pairing identity.

The second fundamental form of the graph of ``f`` is represented by the
Hessian quadratic form ``f_xx dx^2 + 2 f_xy dx dy + f_yy dy^2``.  The true
form differs by the positive factor ``1/sqrt(1 + |grad f|^2)``, which changes
neither the sign of the discriminant nor the asymptotic directions, and
keeps every computation in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import DomainError, binom
from .poly import HPoly, hp_diff, hp_div_exact, hp_mul, r2_power

__all__ = [
    "QForm",
    "HamGrad",
    "ham_grad",
    "arnold_P",
    "arnold_family",
    "hessian_det",
    "second_form",
    "grad_pairing",
    "lemma3_lhs",
    "lemma3_rhs",
    "lemma3_check",
    "lemma3_bracket",
    "dPdQ",
    "product_second_form",
    "omega",
    "omega_discriminant",
    "omega_square_constant",
    "euler_route_check",
    "proportionality_constant",
]


@dataclass(frozen=True)
class QForm:
    """``e dx^2 + 2 f_mid dx dy + g dy^2`` with homogeneous coefficients."""

    e: HPoly
    f_mid: HPoly
    g: HPoly

    def __post_init__(self) -> None:
        if not self.e.degree == self.f_mid.degree == self.g.degree:
            raise DomainError("QForm components must share one degree")

    @property
    def degree(self) -> int:
        return self.e.degree

    def discriminant(self) -> HPoly:
        return hp_mul(self.f_mid, self.f_mid) - hp_mul(self.e, self.g)

    def __add__(self, other: "QForm") -> "QForm":
        return QForm(self.e + other.e, self.f_mid + other.f_mid, self.g + other.g)

    def __sub__(self, other: "QForm") -> "QForm":
        return QForm(self.e - other.e, self.f_mid - other.f_mid, self.g - other.g)

    def scale(self, c) -> "QForm":
        """Multiply by a scalar or by a homogeneous polynomial."""
        if isinstance(c, HPoly):
            return QForm(hp_mul(c, self.e), hp_mul(c, self.f_mid), hp_mul(c, self.g))
        return QForm(self.e.scale(c), self.f_mid.scale(c), self.g.scale(c))

    def to_json(self) -> dict:
        return {"e": self.e.to_json(), "f_mid": self.f_mid.to_json(), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, obj) -> "QForm":
        if not isinstance(obj, dict) or set(obj) != {"e", "f_mid", "g"}:
            raise DomainError("quadratic form object needs keys 'e', 'f_mid', 'g'")
        return cls(HPoly.from_json(obj["e"]), HPoly.from_json(obj["f_mid"]), HPoly.from_json(obj["g"]))


@dataclass(frozen=True)
class HamGrad:
    first: HPoly   # f_y
    second: HPoly  # -f_x


def ham_grad(f: HPoly) -> HamGrad:
    return HamGrad(hp_diff(f, "y"), -hp_diff(f, "x"))


def _partials(f: HPoly):
    fx, fy = hp_diff(f, "x"), hp_diff(f, "y")
    return fx, fy, hp_diff(fx, "x"), hp_diff(fx, "y"), hp_diff(fy, "y")


def arnold_P(m: int) -> HPoly:
    """Re (x + i y)^m."""
    if m < 1:
        raise DomainError(f"arnold_P needs m >= 1, got {m}")
    cs = [Fraction(0)] * (m + 1)
    for j in range(m // 2 + 1):
        cs[2 * j] = Fraction((-1) ** j * binom(m, 2 * j))
    return HPoly(m, tuple(cs))


def arnold_family(m: int, n: int) -> HPoly:
    """(x^2 + y^2)^((n-m)/2) Re (x + i y)^m."""
    if m < 2:
        raise DomainError(f"arnold_family needs m >= 2, got m={m}")
    if n < m:
        raise DomainError(f"arnold_family needs n >= m, got m={m}, n={n}")
    if (n - m) % 2:
        raise DomainError(f"arnold_family needs n - m even, got m={m}, n={n}")
    return hp_mul(r2_power((n - m) // 2), arnold_P(m))


def hessian_det(f: HPoly) -> HPoly:
    if f.degree < 2:
        raise DomainError(f"hessian_det needs degree >= 2, got {f.degree}")
    _, _, fxx, fxy, fyy = _partials(f)
    return hp_mul(fxx, fyy) - hp_mul(fxy, fxy)


def second_form(f: HPoly) -> QForm:
    if f.degree < 2:
        raise DomainError(f"second_form needs degree >= 2, got {f.degree}")
    _, _, fxx, fxy, fyy = _partials(f)
    return QForm(fxx, fxy, fyy)


def grad_pairing(P: HPoly, Q: HPoly) -> HPoly:
    """P_xx P_y Q_y + P_yy P_x Q_x - P_xy (P_x Q_y + P_y Q_x)."""
    if P.degree < 2 or Q.degree < 1:
        raise DomainError(f"grad_pairing needs deg P >= 2 and deg Q >= 1, got {P.degree}, {Q.degree}")
    px, py, pxx, pxy, pyy = _partials(P)
    qx, qy = hp_diff(Q, "x"), hp_diff(Q, "y")
    return (
        hp_mul(pxx, hp_mul(py, qy))
        + hp_mul(pyy, hp_mul(px, qx))
        - hp_mul(pxy, hp_mul(px, qy) + hp_mul(py, qx))
    )


def lemma3_lhs(P: HPoly, Q: HPoly) -> HPoly:
    """P_x (Q_y P_xy - Q_x P_yy) + P_y (Q_x P_xy - Q_y P_xx), expanded literally."""
    px, py, pxx, pxy, pyy = _partials(P)
    qx, qy = hp_diff(Q, "x"), hp_diff(Q, "y")
    return hp_mul(px, hp_mul(qy, pxy) - hp_mul(qx, pyy)) + hp_mul(py, hp_mul(qx, pxy) - hp_mul(qy, pxx))


def lemma3_rhs(m: int, k: int) -> HPoly:
    """2 k m^2 (m - 1) (x^2 + y^2)^(k + m - 2), built by repeated multiplication."""
    r2 = r2_power(1)
    out = HPoly.of([2 * k * m * m * (m - 1)])
    for _ in range(k + m - 2):
        out = hp_mul(out, r2)
    return out


def _check_mk(m: int, k: int, name: str) -> None:
    if m < 2 or k < 1:
        raise DomainError(f"{name} needs m >= 2 and k >= 1, got m={m}, k={k}")


def lemma3_check(m: int, k: int) -> bool:
    _check_mk(m, k, "lemma3_check")
    return lemma3_lhs(arnold_P(m), r2_power(k)) == lemma3_rhs(m, k)


def lemma3_bracket(m: int, k: int = 1) -> HPoly:
    """The bracketed factor of the expanded left side.

    Left side divided by 2 k m^2 (m - 1) (x^2 + y^2)^(k - 1); its coefficients
    are the A(j), B, C(j) that the binomial identities evaluate.
    """
    _check_mk(m, k, "lemma3_bracket")
    lhs = lemma3_lhs(arnold_P(m), r2_power(k))
    return hp_div_exact(lhs, r2_power(k - 1)).scale(Fraction(1, 2 * k * m * m * (m - 1)))


def dPdQ(P: HPoly, Q: HPoly) -> QForm:
    """Symmetric product of the differentials dP and dQ."""
    px, py = hp_diff(P, "x"), hp_diff(P, "y")
    qx, qy = hp_diff(Q, "x"), hp_diff(Q, "y")
    return QForm(hp_mul(px, qx), (hp_mul(px, qy) + hp_mul(py, qx)).scale(Fraction(1, 2)), hp_mul(py, qy))


def _require_product_degrees(P: HPoly, Q: HPoly, name: str) -> None:
    if P.degree < 2 or Q.degree < 2:
        raise DomainError(f"{name} needs deg P >= 2 and deg Q >= 2, got {P.degree}, {Q.degree}")


def product_second_form(P: HPoly, Q: HPoly) -> tuple[QForm, QForm, QForm]:
    """(P II_Q, 2 dP dQ, Q II_P); their sum is II_{PQ}."""
    _require_product_degrees(P, Q, "product_second_form")
    return second_form(Q).scale(P), dPdQ(P, Q).scale(2), second_form(P).scale(Q)


def omega(P: HPoly, Q: HPoly) -> QForm:
    """2 dP dQ + Q II_P."""
    _, mid, last = product_second_form(P, Q)
    return mid + last


def _jacobian_square(P: HPoly, Q: HPoly) -> HPoly:
    j = hp_mul(hp_diff(P, "x"), hp_diff(Q, "y")) - hp_mul(hp_diff(P, "y"), hp_diff(Q, "x"))
    return hp_mul(j, j)


def proportionality_constant(a: HPoly, b: HPoly) -> Optional[Fraction]:
    """The c with a == c * b, or None if there is none (b nonzero)."""
    if b.is_zero():
        raise DomainError("proportionality against the zero polynomial")
    if a.degree != b.degree:
        return Fraction(0) if a.is_zero() else None
    i = next(i for i, v in enumerate(b.coeffs) if v)
    c = a.coeffs[i] / b.coeffs[i]
    return c if a == b.scale(c) else None


def _omega_parts(P: HPoly, Q: HPoly) -> tuple[HPoly, HPoly, HPoly, Fraction]:
    _require_product_degrees(P, Q, "omega_discriminant")
    t1 = -hp_mul(hp_mul(Q, Q), hessian_det(P))
    t3 = hp_mul(Q, grad_pairing(P, Q)).scale(-2)
    rest = omega(P, Q).discriminant() - t1 - t3
    sq = _jacobian_square(P, Q)
    if sq.is_zero():
        if not rest.is_zero():
            raise DomainError("discriminant residual is not a multiple of the Jacobian square")
        return t1, rest, t3, Fraction(0)
    c = proportionality_constant(rest, sq)
    if c is None:
        raise DomainError("discriminant residual is not a multiple of the Jacobian square")
    return t1, sq.scale(c), t3, c


def omega_discriminant(P: HPoly, Q: HPoly) -> tuple[HPoly, HPoly, HPoly]:
    """Split disc(2 dP dQ + Q II_P) as -Q^2 det Hess P + c (P_x Q_y - P_y Q_x)^2 - 2 Q grad_pairing.

    The constant ``c`` is solved for, not assumed; see :func:`omega_square_constant`.
    """
    t1, t2, t3, _ = _omega_parts(P, Q)
    return t1, t2, t3


def omega_square_constant(P: HPoly, Q: HPoly) -> Fraction:
    return _omega_parts(P, Q)[3]


def euler_route_check(m: int, k: int) -> Fraction:
    """The constant c with lemma3_lhs = c * Q * det Hess P for the Arnold pair (m, k)."""
    _check_mk(m, k, "euler_route_check")
    P, Q = arnold_P(m), r2_power(k)
    lhs = lemma3_lhs(P, Q)
    c = proportionality_constant(lhs, hp_mul(Q, hessian_det(P)))
    if c is None:
        raise ArithmeticError(f"Euler-route forms not proportional at m={m}, k={k}")
    return c
