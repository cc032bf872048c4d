"""Hyperbolicity verdicts, the index of asymptotic line fields, isotopy certificates."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .diffgeo import (
    QForm,
    dPdQ,
    grad_pairing,
    hessian_det,
    omega,
    omega_discriminant,
    omega_square_constant,
    second_form,
)
from .exact import DomainError, format_rat
from .poly import HPoly, Sign, SignCertificate, hp_mul, sign_certificate

__all__ = [
    "Verdict",
    "HypVerdict",
    "IndexResult",
    "IsotopyReport",
    "classify",
    "asymptotic_angle",
    "index_at_origin",
    "isotopy_phi_certify",
    "isotopy_psi_certify",
    "arnold_hypothesis_ok",
]

SAMPLE_CAP = 1 << 20
TURN_BOUND = math.pi / 4
ROUNDING_TOL = 0.01


class Verdict(str, enum.Enum):
    HYPERBOLIC = "HYPERBOLIC"
    ELLIPTIC = "ELLIPTIC"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class HypVerdict:
    polynomial: HPoly
    verdict: Verdict
    hessian_det: HPoly
    certificate: SignCertificate

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "verdict": self.verdict.value,
            "hessian_det": self.hessian_det.to_json(),
            "certificate": self.certificate.to_json(),
        }


def classify(f: HPoly) -> HypVerdict:
    if f.degree < 2:
        raise DomainError(f"classify needs degree >= 2, got {f.degree}")
    h = hessian_det(f)
    if h.is_zero():
        # det Hess vanishes identically: ruled surface, no sign to certify
        cert = SignCertificate(Sign.MIXED_OR_VANISHING, Fraction(0), Fraction(0), None)
        return HypVerdict(f, Verdict.NEITHER, h, cert)
    cert = sign_certificate(h)
    verdict = {Sign.NEGATIVE: Verdict.HYPERBOLIC, Sign.POSITIVE: Verdict.ELLIPTIC}.get(cert.sign, Verdict.NEITHER)
    return HypVerdict(f, verdict, h, cert)


# -- index of the asymptotic line field -----------------------------------

def _angles(e: float, f: float, g: float) -> tuple[float, float]:
    disc = f * f - e * g
    if not disc > 0:
        raise DomainError(f"form is not hyperbolic at this point (discriminant {disc!r})")
    # eigenbasis of [[e, f], [f, g]]; null directions sit symmetric about it
    alpha = 0.5 * math.atan2(2 * f, e - g)
    mean, rad = 0.5 * (e + g), math.sqrt(0.25 * (e - g) ** 2 + f * f)
    l1, l2 = mean + rad, mean - rad
    beta = math.atan(math.sqrt(-l1 / l2))
    a, b = (alpha + beta) % math.pi, (alpha - beta) % math.pi
    return (a, b) if a <= b else (b, a)


def asymptotic_angle(q: QForm, theta: float) -> tuple[float, float]:
    """Directions phi in [0, pi) with q(cos phi, sin phi) = 0 at the point (cos theta, sin theta)."""
    x, y = math.cos(theta), math.sin(theta)
    return _angles(float(q.e(x, y)), float(q.f_mid(x, y)), float(q.g(x, y)))


@dataclass(frozen=True)
class IndexResult:
    value_times_two: Optional[int]
    samples_used: int
    max_step_turn: float
    raw: float
    converged: bool

    @property
    def value(self) -> Optional[Fraction]:
        return None if self.value_times_two is None else Fraction(self.value_times_two, 2)

    def to_json(self) -> dict:
        return {
            "value": None if self.value is None else format_rat(self.value),
            "value_times_two": self.value_times_two,
            "samples_used": self.samples_used,
            "max_step_turn": _finite(self.max_step_turn),
            "raw": _finite(self.raw),
            "converged": self.converged,
        }


def _finite(v: float) -> Optional[float]:
    return v if math.isfinite(v) else None


def _track(evals, samples: int) -> tuple[float, float]:
    ev_e, ev_f, ev_g = evals
    lift = None
    start = None
    max_turn = 0.0
    for i in range(samples + 1):
        th = 2 * math.pi * i / samples
        x, y = math.cos(th), math.sin(th)
        cands = _angles(ev_e(x, y), ev_f(x, y), ev_g(x, y))
        if lift is None:
            lift = start = cands[0]
            continue
        best = None
        for c in cands:
            # representative of c mod pi closest to the current lift
            r = c + math.pi * round((lift - c) / math.pi)
            if best is None or abs(r - lift) < abs(best - lift):
                best = r
        max_turn = max(max_turn, abs(best - lift))
        lift = best
    return (lift - start) / (2 * math.pi), max_turn


def index_at_origin(q: QForm, initial_samples: int = 64, cap: int = SAMPLE_CAP) -> IndexResult:
    """Index of an asymptotic line field of ``q`` around the origin (a half-integer)."""
    evals = (q.e.float_evaluator(), q.f_mid.float_evaluator(), q.g.float_evaluator())
    # a coarse symmetric grid can alias to a small turn, so start above 8(d + 1)
    n = max(8 * (q.e.degree + 1), initial_samples)
    if n > cap:
        return IndexResult(None, n, math.inf, math.nan, False)
    while True:
        raw, turn = _track(evals, n)
        if turn < TURN_BOUND:
            break
        if n * 2 > cap:
            return IndexResult(None, n, turn, raw, False)
        n *= 2
    doubled = round(2 * raw)
    if abs(raw - doubled / 2) >= ROUNDING_TOL:
        raise ArithmeticError(f"index {raw!r} is not within {ROUNDING_TOL} of a half-integer")
    return IndexResult(doubled, n, turn, raw, True)


# -- isotopy certificates ------------------------------------------------------

def arnold_hypothesis_ok(m: int, k: int) -> bool:
    """m <= n < m^2 with n = m + 2k the degree of (x^2 + y^2)^k Re (x + iy)^m, and k >= 1."""
    n = m + 2 * k
    return k >= 1 and m <= n < m * m


@dataclass
class IsotopyReport:
    path: str
    m: Optional[int]
    k: Optional[int]
    hypothesis_violated: bool
    certificates: dict[str, bool] = field(default_factory=dict)
    evidence: dict[str, dict] = field(default_factory=dict)
    grid_min: Optional[float] = None
    endpoint_indices: Optional[list[Optional[int]]] = None
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.certificates) and all(self.certificates.values())

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "m": self.m,
            "k": self.k,
            "hypothesis_violated": self.hypothesis_violated,
            "passed": self.passed,
            "certificates": dict(self.certificates),
            "grid_min": self.grid_min,
            "endpoint_indices_times_two": self.endpoint_indices,
            "notes": dict(self.notes),
            "evidence": dict(self.evidence),
        }


def _positive(report: IsotopyReport, name: str, f: HPoly, allow_zero: bool = False) -> bool:
    if f.is_zero():
        report.certificates[name] = allow_zero
        report.evidence[name] = {"sign": "ZERO"}
        return allow_zero
    cert = sign_certificate(f)
    ok = cert.sign is Sign.POSITIVE
    report.certificates[name] = ok
    report.evidence[name] = cert.to_json()
    return ok


def _grid_min(parts: tuple[HPoly, HPoly, HPoly], t_samples: int, theta_samples: int) -> float:
    """min over t in [0,1], theta in [0, 2pi) of c0 + t c1 + t^2 c2 at (cos theta, sin theta)."""
    evs = [p.float_evaluator() for p in parts]
    ts = [i / (t_samples - 1) for i in range(t_samples)] if t_samples > 1 else [1.0]
    best = math.inf
    for i in range(theta_samples):
        th = 2 * math.pi * i / theta_samples
        x, y = math.cos(th), math.sin(th)
        c0, c1, c2 = (ev(x, y) for ev in evs)
        for t in ts:
            best = min(best, c0 + t * (c1 + t * c2))
    return best


def _endpoint_indices(rep: IsotopyReport, a: QForm, b: QForm, samples: int) -> None:
    """Indices of both endpoint forms; recorded only when both are certified hyperbolic."""
    if not rep.passed:
        return
    ia, ib = index_at_origin(a, samples), index_at_origin(b, samples)
    rep.endpoint_indices = [ia.value_times_two, ib.value_times_two]
    rep.certificates["endpoint_indices_agree"] = ia.converged and ib.converged and ia.value_times_two == ib.value_times_two


def _pair_tags(P: HPoly, Q: HPoly, m: Optional[int], k: Optional[int]) -> tuple[Optional[int], Optional[int], bool]:
    if m is None:
        m = P.degree
    if k is None and Q.degree % 2 == 0:
        k = Q.degree // 2
    violated = k is None or not arnold_hypothesis_ok(m, k)
    return m, k, violated


def _check_inputs(P: HPoly, Q: HPoly) -> None:
    if P.degree < 2 or Q.degree < 2:
        raise DomainError(f"isotopy needs deg P >= 2 and deg Q >= 2, got {P.degree}, {Q.degree}")


def isotopy_phi_certify(
    P: HPoly,
    Q: HPoly,
    t_samples: int = 11,
    theta_samples: int = 360,
    m: Optional[int] = None,
    k: Optional[int] = None,
    index_samples: int = 64,
) -> IsotopyReport:
    """Certify disc(omega + t delta) > 0 off the origin for t in [0, 1].

    omega = 2 dP dQ + Q II_P and delta = P II_Q.  The discriminant is a
    quadratic in t; it is positive at both ends and its t^2 coefficient
    disc(delta) = -P^2 det Hess Q is <= 0, so it is concave and positive
    in between.
    """
    _check_inputs(P, Q)
    m, k, violated = _pair_tags(P, Q, m, k)
    rep = IsotopyReport("PHI", m, k, violated)

    t1, t2, t3 = omega_discriminant(P, Q)
    c = omega_square_constant(P, Q)
    rep.notes["jacobian_square_constant"] = format_rat(c)
    a = _positive(rep, "omega_term_neg_Q2_detHessP_positive", t1)
    rep.certificates["omega_term_jacobian_square_nonneg"] = c >= 0
    b = _positive(rep, "omega_term_neg_2Q_pairing_nonneg", t3, allow_zero=True)
    rep.certificates["delta_omega_positive_termwise"] = a and c >= 0 and b
    w = omega(P, Q)
    d_omega = w.discriminant()
    rep.certificates["delta_omega_terms_sum_exact"] = d_omega == t1 + t2 + t3
    _positive(rep, "delta_omega_positive_direct", d_omega)

    f = hp_mul(P, Q)
    d_one = second_form(f).discriminant()
    _positive(rep, "delta_phi1_positive", d_one)

    delta = second_form(Q).scale(P)
    d_delta = delta.discriminant()
    hq = hessian_det(Q)
    rep.certificates["leading_coeff_equals_neg_P2_detHessQ"] = d_delta == -hp_mul(hp_mul(P, P), hq)
    _positive(rep, "detHessQ_positive", hq)

    cross = d_one - d_omega - d_delta
    rep.grid_min = _grid_min((d_omega, cross, d_delta), t_samples, theta_samples)
    _endpoint_indices(rep, w, second_form(f), index_samples)
    return rep


def isotopy_psi_certify(
    P: HPoly,
    Q: HPoly,
    t_samples: int = 11,
    theta_samples: int = 360,
    m: Optional[int] = None,
    k: Optional[int] = None,
    index_samples: int = 64,
) -> IsotopyReport:
    """Certify disc(Q II_P + 2t dP dQ) > 0 off the origin for t in [0, 1].

    The discriminant equals -Q^2 det Hess P + t^2 J^2 - 2t Q grad_pairing(P, Q)
    with J = P_x Q_y - P_y Q_x; the first term is certified positive and the
    other two nonnegative.
    """
    _check_inputs(P, Q)
    m, k, violated = _pair_tags(P, Q, m, k)
    rep = IsotopyReport("PSI", m, k, violated)

    t1, sq, t3 = omega_discriminant(P, Q)
    c = omega_square_constant(P, Q)
    rep.notes["jacobian_square_constant"] = format_rat(c)
    _positive(rep, "neg_Q2_detHessP_positive", t1)
    rep.certificates["jacobian_square_nonneg"] = c >= 0
    _positive(rep, "neg_2Q_pairing_nonneg", t3, allow_zero=True)

    base = second_form(P).scale(Q)
    mixed = dPdQ(P, Q).scale(2)
    # a quadratic in t is pinned down by three values
    exact = True
    for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
        lhs = (base + mixed.scale(t)).discriminant()
        exact &= lhs == t1 + t3.scale(t) + sq.scale(t * t)
    rep.certificates["psi_expansion_exact"] = exact
    rep.certificates["pairing_matches_formula"] = t3 == hp_mul(Q, grad_pairing(P, Q)).scale(-2)

    rep.grid_min = _grid_min((t1, t3, sq), t_samples, theta_samples)
    _endpoint_indices(rep, base + mixed, base, index_samples)
    return rep
