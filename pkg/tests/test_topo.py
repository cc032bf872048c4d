import json
import math
from fractions import Fraction

import pytest

from hesstop.diffgeo import QForm, arnold_P, arnold_family, omega, second_form
from hesstop.exact import DomainError
from hesstop.poly import HPoly, hp_mul, r2_power
from hesstop.topo import (
    TURN_BOUND,
    Verdict,
    arnold_hypothesis_ok,
    asymptotic_angle,
    classify,
    index_at_origin,
    isotopy_phi_certify,
    isotopy_psi_certify,
)

SADDLE = HPoly.of([1, 0, -1])
R2 = r2_power(1)


def test_classify_examples():
    assert classify(SADDLE).verdict is Verdict.HYPERBOLIC
    assert classify(R2).verdict is Verdict.ELLIPTIC
    assert classify(HPoly.of([1, 0, 0, 0, -1])).verdict is Verdict.NEITHER  # x^4 - y^4
    assert classify(HPoly.of([1, 0, 0])).verdict is Verdict.NEITHER  # det Hess identically 0
    with pytest.raises(DomainError):
        classify(HPoly.of([1, 1]))


def test_classify_certificate_json():
    js = classify(arnold_P(3)).to_json()
    json.dumps(js)
    assert js["verdict"] == "HYPERBOLIC"
    assert js["certificate"]["sign"] == "NEGATIVE"
    assert js["certificate"]["sturm"]["real_roots"] == 0


def test_classify_arnold_P_and_r2_powers():
    for m in range(2, 21):
        assert classify(arnold_P(m)).verdict is Verdict.HYPERBOLIC
    for k in range(1, 11):
        assert classify(r2_power(k)).verdict is Verdict.ELLIPTIC


def test_arnold_family_outside_range_not_hyperbolic():
    # n = m^2 is the first excluded degree
    for m in (2, 3):
        assert classify(arnold_family(m, m * m)).verdict is not Verdict.HYPERBOLIC


# -- asymptotic directions --------------------------------------------------------

@pytest.mark.parametrize("theta", [0.0, 0.3, 1.7, 4.0])
def test_angles_saddle(theta):
    a, b = asymptotic_angle(second_form(SADDLE), theta)
    assert a == pytest.approx(math.pi / 4)
    assert b == pytest.approx(3 * math.pi / 4)


def test_angles_monkey_saddle_at_zero():
    a, b = asymptotic_angle(second_form(arnold_P(3)), 0.0)
    assert (a, b) == pytest.approx((math.pi / 4, 3 * math.pi / 4))


@pytest.mark.parametrize("theta", [0.1, 1.0, 2.5, 5.9])
def test_angles_sign_invariant_and_null(theta):
    q = second_form(arnold_family(4, 6))
    neg = q.scale(-1)
    assert asymptotic_angle(q, theta) == pytest.approx(asymptotic_angle(neg, theta))
    x, y = math.cos(theta), math.sin(theta)
    e, f, g = (float(p(x, y)) for p in (q.e, q.f_mid, q.g))
    for phi in asymptotic_angle(q, theta):
        c, s = math.cos(phi), math.sin(phi)
        assert abs(e * c * c + 2 * f * c * s + g * s * s) < 1e-9 * (abs(e) + abs(f) + abs(g))


def test_angle_rejects_elliptic_point():
    with pytest.raises(DomainError):
        asymptotic_angle(second_form(R2), 0.0)


# -- index ----------------------------------------------------------------------------

@pytest.mark.parametrize("m", range(2, 9))
def test_index_arnold_P(m):
    res = index_at_origin(second_form(arnold_P(m)))
    assert res.converged
    assert res.value == Fraction(2 - m, 2)
    assert res.max_step_turn < TURN_BOUND
    assert abs(res.raw - (2 - m) / 2) < 0.01


@pytest.mark.parametrize("m, n", [(3, 5), (3, 7), (4, 6), (4, 14), (5, 7), (5, 23)])
def test_index_arnold_family(m, n):
    assert index_at_origin(second_form(arnold_family(m, n))).value_times_two == 2 - m


def test_index_constant_field_is_zero():
    assert index_at_origin(second_form(SADDLE)).value_times_two == 0


@pytest.mark.parametrize("factor", [R2, HPoly.of([1, 1, 1]), hp_mul(R2, HPoly.of([2, -1, 3]))])
def test_index_invariant_under_positive_factor(factor):
    for m in (3, 4, 6):
        q = second_form(arnold_P(m))
        assert index_at_origin(q.scale(factor)).value_times_two == index_at_origin(q).value_times_two


def test_step_turn_halves_when_samples_double():
    for m in (3, 5, 8):
        q = second_form(arnold_P(m))
        a = index_at_origin(q, 128)
        b = index_at_origin(q, 256)
        assert b.samples_used == 2 * a.samples_used
        assert b.max_step_turn == pytest.approx(a.max_step_turn / 2, rel=1e-6)


def test_index_doubles_samples_until_turn_bound():
    q = second_form(arnold_P(8))
    res = index_at_origin(q, 4)
    assert res.samples_used >= 8 * 7
    assert res.max_step_turn < TURN_BOUND
    assert res.value_times_two == -6


def test_index_unconverged_flag():
    res = index_at_origin(second_form(arnold_P(8)), 4, cap=8)
    assert not res.converged
    assert res.value is None
    json.dumps(res.to_json(), allow_nan=False)
    # a high-degree field whose sampling floor already exceeds the cap
    res = index_at_origin(second_form(arnold_family(8, 62)), 4, cap=64)
    assert not res.converged


def test_index_rejects_non_hyperbolic_form():
    with pytest.raises(DomainError):
        index_at_origin(second_form(HPoly.of([1, 0, 0, 0, -1])))


# -- isotopies ------------------------------------------------------------------------------

def test_hypothesis_helper():
    assert arnold_hypothesis_ok(4, 1)
    assert not arnold_hypothesis_ok(2, 1)  # n = 4 = m^2
    assert arnold_hypothesis_ok(3, 2)
    assert not arnold_hypothesis_ok(3, 3)


def test_phi_m4_k1_passes():
    rep = isotopy_phi_certify(arnold_P(4), R2)
    assert not rep.hypothesis_violated
    assert rep.passed, rep.certificates
    assert rep.grid_min > 0
    assert rep.notes["jacobian_square_constant"] == "1"
    assert rep.endpoint_indices == [-2, -2]


def test_phi_m2_k1_flags_boundary():
    rep = isotopy_phi_certify(arnold_P(2), R2)
    assert rep.hypothesis_violated
    # II of x^4 - y^4 degenerates on the axes
    assert not rep.certificates["delta_phi1_positive"]
    assert not rep.passed


def test_psi_m4_k1_passes():
    rep = isotopy_psi_certify(arnold_P(4), R2)
    assert rep.passed, rep.certificates
    assert rep.grid_min > 0


def test_psi_hand_check_at_t1_theta0():
    # P = x^2 - y^2, Q = x^2 + y^2 at (1, 0): Q II_P = (2, 0, -2), 2 dP dQ = (8, 0, 0)
    P, Q = arnold_P(2), R2
    from hesstop.diffgeo import dPdQ
    form = second_form(P).scale(Q) + dPdQ(P, Q).scale(2)
    assert (form.e(1, 0), form.f_mid(1, 0), form.g(1, 0)) == (10, 0, -2)
    assert form.discriminant()(1, 0) == 20  # 4 from -Q^2 det P, 16 from the pairing term, 0 from J^2
    assert isotopy_psi_certify(P, Q).passed


@pytest.mark.parametrize("m", range(2, 9))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_psi_termwise_sweep(m, k):
    rep = isotopy_psi_certify(arnold_P(m), r2_power(k), t_samples=5, theta_samples=90)
    assert rep.passed, rep.certificates


def test_phi_grid_min_positive_whenever_pass():
    for m in range(3, 7):
        for k in (1, 2):
            rep = isotopy_phi_certify(arnold_P(m), r2_power(k), t_samples=6, theta_samples=120)
            assert rep.passed == arnold_hypothesis_ok(m, k)
            if rep.passed:
                assert rep.grid_min > 0


def test_report_json_is_serialisable():
    rep = isotopy_phi_certify(arnold_P(3), R2)
    js = rep.to_json()
    text = json.dumps(js, sort_keys=True)
    assert json.loads(text)["passed"] is True
    assert "chain" in js["evidence"]["delta_phi1_positive"]["sturm"]


def test_certify_degree_errors():
    with pytest.raises(DomainError):
        isotopy_phi_certify(HPoly.of([1, 1]), R2)
    with pytest.raises(DomainError):
        isotopy_psi_certify(arnold_P(3), HPoly.of([1, 1]))


def test_omega_endpoint_index_matches_P():
    for m in (3, 4, 5):
        q = omega(arnold_P(m), r2_power(1))
        assert isinstance(q, QForm)
        assert index_at_origin(q).value_times_two == 2 - m
