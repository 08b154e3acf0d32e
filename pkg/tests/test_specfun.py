import math

import numpy as np
import pytest

from orthokit.specfun import (
    PI, ZETA2, ZETA3, EvalTolerance,
    li2, li3, polylog, rogers_dilog, hurwitz_zeta, riemann_zeta,
)

N_POINTS = 1000
SEED = 12345


def _points(lo, hi):
    rng = np.random.default_rng(SEED)
    return rng.uniform(lo, hi, N_POINTS)


def test_li2_special_values():
    assert li2(0.0) == 0.0
    assert abs(li2(1.0) - ZETA2) < 1e-15
    assert abs(li2(0.5) - (ZETA2 / 2.0 - 0.5 * math.log(2.0) ** 2)) < 1e-14
    assert abs(li2(-1.0) + ZETA2 / 2.0) < 1e-14


def test_li3_special_values():
    assert li3(0.0) == 0.0
    assert abs(li3(1.0) - ZETA3) < 1e-15
    expected_half = (7.0 * ZETA3 / 8.0 - ZETA2 / 2.0 * math.log(2.0)
                     + math.log(2.0) ** 3 / 6.0)
    assert abs(li3(0.5) - expected_half) < 1e-14
    assert abs(li3(-1.0) + 0.75 * ZETA3) < 1e-14


def test_euler_reflection():
    for x in _points(1e-6, 1.0 - 1e-6):
        r = li2(x) + li2(1.0 - x) - (ZETA2 - math.log(x) * math.log1p(-x))
        assert abs(r) < 1e-12


def test_li2_inversion():
    for x in _points(-50.0, -1.0):
        r = li2(x) + li2(1.0 / x) + ZETA2 + 0.5 * math.log(-x) ** 2
        assert abs(r) < 1e-12


def test_li2_duplication():
    for x in _points(-1.0 + 1e-9, 1.0 - 1e-9):
        r = li2(x) + li2(-x) - 0.5 * li2(x * x)
        assert abs(r) < 1e-12


def test_rogers_reflection():
    for x in _points(1e-6, 1.0 - 1e-6):
        assert abs(rogers_dilog(x) + rogers_dilog(1.0 - x) - ZETA2) < 1e-12


def test_rogers_landen():
    for x in _points(1e-6, 1.0 - 1e-3):
        assert abs(rogers_dilog(-x / (1.0 - x)) + rogers_dilog(x)) < 1e-12


def test_rogers_abel():
    rng = np.random.default_rng(SEED)
    for _ in range(N_POINTS):
        x, y = rng.uniform(1e-4, 1.0 - 1e-4, 2)
        r = (rogers_dilog(x) + rogers_dilog(y) - rogers_dilog(x * y)
             - rogers_dilog(x * (1.0 - y) / (1.0 - x * y))
             - rogers_dilog(y * (1.0 - x) / (1.0 - x * y)))
        assert abs(r) < 1e-12


def test_tri1_square_relation():
    for x in _points(1e-6, 1.0 - 1e-6):
        assert abs(li3(x) + li3(-x) - 0.25 * li3(x * x)) < 1e-12


def test_tri2_inversion():
    for z in _points(1e-3, 100.0):
        lg = math.log(z)
        r = li3(-z) - li3(-1.0 / z) + lg ** 3 / 6.0 + ZETA2 * lg
        assert abs(r) < 1e-12


def test_tri3_reflection():
    # Li3(z) + Li3(1-z) + Li3(1-1/z)
    #   = zeta(3) + log^3 z / 6 + (pi^2/6) log z - log^2 z log(1-z)/2
    for z in _points(1e-4, 1.0 - 1e-4):
        lg = math.log(z)
        rhs = (ZETA3 + lg ** 3 / 6.0 + ZETA2 * lg
               - 0.5 * lg * lg * math.log1p(-z))
        r = li3(z) + li3(1.0 - z) + li3(1.0 - 1.0 / z) - rhs
        assert abs(r) < 1e-12


def test_polylog_generic_order():
    assert abs(polylog(1, 0.5) - math.log(2.0)) < 1e-15
    assert abs(polylog(4, 1.0) - PI ** 4 / 90.0) < 1e-14
    assert abs(polylog(5, 0.3) - sum(0.3 ** n / n ** 5
                                     for n in range(1, 60))) < 1e-15


def test_polylog_domain():
    with pytest.raises(ValueError):
        polylog(0, 0.5)
    with pytest.raises(ValueError):
        polylog(2, 1.5)
    with pytest.raises(ValueError):
        li2(1.0 + 1e-12)
    with pytest.raises(ValueError):
        li3(2.0)
    with pytest.raises(ValueError):
        polylog(1, 1.0)


def test_rogers_endpoints():
    assert rogers_dilog(0.0) == 0.0
    assert abs(rogers_dilog(1.0) - ZETA2) < 1e-15
    assert abs(rogers_dilog(0.5) - ZETA2 / 2.0) < 1e-14


def test_riemann_zeta_values():
    assert abs(riemann_zeta(2) - ZETA2) < 1e-14
    assert abs(riemann_zeta(3) - ZETA3) < 1e-14
    assert abs(riemann_zeta(4) - PI ** 4 / 90.0) < 1e-14
    assert abs(riemann_zeta(10) - 1.0009945751278180853) < 1e-14
    with pytest.raises(ValueError):
        riemann_zeta(1)


def test_hurwitz_zeta_basics():
    import mpmath
    # zeta(s, 1/2) = (2^s - 1) zeta(s); generic arguments against mpmath
    for s, t in ((2.0, 0.5), (3.0, 0.25), (2.5, 1.7)):
        assert abs(hurwitz_zeta(s, t) - float(mpmath.zeta(s, t))) < 1e-12
    assert abs(hurwitz_zeta(2.0, 0.5) - 3.0 * ZETA2) < 1e-13
    with pytest.raises(ValueError):
        hurwitz_zeta(1.0, 1.0)
    with pytest.raises(ValueError):
        hurwitz_zeta(2.0, 0.0)


def test_eval_tolerance_validation():
    with pytest.raises(ValueError):
        EvalTolerance(abs_tol=0.0)
    with pytest.raises(ValueError):
        EvalTolerance(max_terms=0)
    loose = EvalTolerance(abs_tol=1e-6)
    assert abs(li2(0.3, loose) - li2(0.3)) < 1e-6
