import math

import pytest

from orthokit.kernels import F_closed, basmajian_term, ball_volume, cusp_term
from orthokit.geom import l_of_a
from orthokit.quadrature import (
    ToleranceError, QuadratureSpec,
    kernel_L, F_k_numeric, F_nk_numeric, sinh_moment,
    i1_split_values, indefinite_integral_checks,
)
from orthokit.specfun import PI, rogers_dilog


def test_kernel_L_domain():
    v = kernel_L(0.5, 0.25, 2.0)
    assert v > 0.0
    with pytest.raises(ValueError):
        kernel_L(1.5, 0.25, 2.0)
    with pytest.raises(ValueError):
        kernel_L(0.5, 0.75, 2.0)
    with pytest.raises(ValueError):
        kernel_L(0.5, 0.25, 0.5)


def test_fk_k0_matches_log():
    # F_0(a) = -4 log(1-a): the measure of geodesics crossing the diameter
    for a in (0.1, 0.5, 0.9):
        assert abs(F_k_numeric(a, 0) + 4.0 * math.log1p(-a)) < 1e-9


def test_fk_k1_matches_rogers():
    for a in (0.1, 0.5, 0.9):
        assert abs(F_k_numeric(a, 1) - 8.0 * rogers_dilog(a)) < 1e-8


def test_fk_k2_matches_closed_form():
    for a in (0.2, 0.5, 0.8):
        assert abs(F_k_numeric(a, 2) - F_closed(a)) < 1e-9


def test_fk_error_estimate_honest():
    value, err = F_k_numeric(0.5, 2, full_output=True)
    assert abs(value - F_closed(0.5)) <= max(err, 1e-12) * 10 + 1e-12
    assert err < 1e-9


def test_fk_domain_errors():
    with pytest.raises(ValueError):
        F_k_numeric(0.0, 1)
    with pytest.raises(ValueError):
        F_k_numeric(1.0, 1)
    with pytest.raises(ValueError):
        F_k_numeric(0.5, -1)


def test_fk_tolerance_error_carries_best_estimate():
    # a node budget too small to allow any level doubling cannot certify
    # convergence, so the call must fail and surface its best estimate
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-13, max_subdivisions=1000)
    with pytest.raises(ToleranceError) as info:
        F_k_numeric(0.5, 2, spec)
    assert abs(info.value.value - F_closed(0.5)) < 1e-2
    assert info.value.error > 0.0


def test_fnk_n3_k0_closed_form():
    # F_{3,0}(l) = 4 pi^2 / (e^{2l} - 1) = pi * V_2(log coth(l/2))
    for l in (0.5, 1.0, 2.0):
        expected = 4.0 * PI * PI / math.expm1(2.0 * l)
        got = F_nk_numeric(3, 0, l)
        assert abs(got - expected) < 1e-6
        r = math.log(1.0 / math.tanh(0.5 * l))
        assert abs(got - PI * ball_volume(2, r)) < 1e-6


def test_fnk_domain_errors():
    with pytest.raises(ValueError):
        F_nk_numeric(2, 0, 1.0)
    with pytest.raises(ValueError):
        F_nk_numeric(3, -1, 1.0)
    with pytest.raises(ValueError):
        F_nk_numeric(3, 0, 0.0)


def test_sinh_moments_match_zeta():
    # int_0^inf x^(k+1)/sinh^2 x dx = (k+1)! zeta(k+1)/2^k
    for k in (1, 2, 3):
        expected = cusp_term(k) / 4.0  # = (k+1)! zeta(k+1)/2^k
        assert abs(sinh_moment(k) - expected) < 1e-12
    with pytest.raises(ValueError):
        sinh_moment(0)


def test_i1_split_symmetry():
    # the Mobius substitution z -> a/z exchanges the two sub-integrals
    for a in (0.3, 0.6, 0.9):
        left, right = i1_split_values(a)
        assert abs(left - right) < 1e-10 * max(1.0, abs(left))


def test_indefinite_integral_checks():
    residuals = indefinite_integral_checks(n_points=60)
    for name in ("eq4", "eq5", "eq6", "G", "H"):
        assert residuals[name] < 1e-6, (name, residuals[name])
    # exact algebraic relation between the two antiderivatives
    assert residuals["H_equals_minus_G"] < 1e-12


def test_crofton_ratio_from_quadrature():
    # F_0(a) / basmajian_term(2, l) = K_2 = 4 under the integral-consistent
    # convention
    for a in (0.2, 0.5, 0.8):
        ratio = F_k_numeric(a, 0) / basmajian_term(2, l_of_a(a))
        assert abs(ratio - 4.0) < 1e-9
