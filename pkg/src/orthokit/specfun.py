"""Real-argument polylogarithms, the Rogers dilogarithm and zeta functions.

Evaluation strategy: direct Taylor series where it converges geometrically
(|x| <= 1/2, and up to |x| < 0.995 for the alternating range), reflection and
inversion identities elsewhere.  The Hurwitz zeta uses Euler-Maclaurin after
an explicit partial sum.  Everything is binary64.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

PI = math.pi
ZETA2 = PI * PI / 6.0
ZETA3 = 1.2020569031595942854
ZETA4 = PI ** 4 / 90.0

# B_2, B_4, ..., B_20
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0,
)

_SERIES_CUT = 0.5       # plain Taylor below this
_NEG_SERIES_CUT = 0.995  # alternating series still fine down to -0.995


@dataclass(frozen=True)
class EvalTolerance:
    """Termination control for the series evaluations."""
    abs_tol: float = 1e-14
    max_terms: int = 10 ** 6

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


_DEFAULT_TOL = EvalTolerance()


def _series_polylog(k: int, x: float, tol: EvalTolerance) -> float:
    """Taylor series sum_{n>=1} x^n / n^k for |x| < 1."""
    total = 0.0
    term = x
    n = 1
    while n <= tol.max_terms:
        contrib = term / n ** k
        total += contrib
        if abs(contrib) < tol.abs_tol * 0.01 and n > 4:
            break
        n += 1
        term *= x
    return total


def li2(x: float, tol: EvalTolerance = _DEFAULT_TOL) -> float:
    """Dilogarithm Li_2(x) for real x <= 1."""
    if x > 1.0:
        raise ValueError("li2 requires x <= 1 (real branch)")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return ZETA2
    if x < -1.0:
        # inversion: Li2(x) + Li2(1/x) = -pi^2/6 - log^2(-x)/2
        return -ZETA2 - 0.5 * math.log(-x) ** 2 - li2(1.0 / x, tol)
    if x <= -_NEG_SERIES_CUT:
        # duplication: Li2(x) = Li2(x^2)/2 - Li2(-x)
        return 0.5 * li2(x * x, tol) - li2(-x, tol)
    if x > _SERIES_CUT:
        # Euler reflection
        return ZETA2 - math.log(x) * math.log1p(-x) - li2(1.0 - x, tol)
    return _series_polylog(2, x, tol)


def li3(x: float, tol: EvalTolerance = _DEFAULT_TOL) -> float:
    """Trilogarithm Li_3(x) for real x <= 1."""
    if x > 1.0:
        raise ValueError("li3 requires x <= 1 (real branch)")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return ZETA3
    if x < -1.0:
        # inversion: Li3(x) = Li3(1/x) - log^3(-x)/6 - (pi^2/6) log(-x)
        lg = math.log(-x)
        return li3(1.0 / x, tol) - lg ** 3 / 6.0 - ZETA2 * lg
    if x <= -_NEG_SERIES_CUT:
        # square relation: Li3(x) = Li3(x^2)/4 - Li3(-x); terminates since
        # both arguments land in fast branches
        return 0.25 * li3(x * x, tol) - li3(-x, tol)
    if x > _SERIES_CUT:
        # reflection (Landen-type three-term relation)
        lg = math.log(x)
        l1m = math.log1p(-x)
        return (ZETA3 + lg ** 3 / 6.0 + ZETA2 * lg - 0.5 * lg * lg * l1m
                - li3(1.0 - 1.0 / x, tol) - li3(1.0 - x, tol))
    return _series_polylog(3, x, tol)


def polylog(k: int, x: float, tol: EvalTolerance = _DEFAULT_TOL) -> float:
    """Polylogarithm Li_k(x) for integer k >= 1 and real x <= 1."""
    if k < 1:
        raise ValueError("polylog requires k >= 1")
    if x > 1.0:
        raise ValueError("polylog requires x <= 1")
    if k == 1:
        if x == 1.0:
            raise ValueError("Li_1(1) diverges")
        return -math.log1p(-x)
    if k == 2:
        return li2(x, tol)
    if k == 3:
        return li3(x, tol)
    if x == 1.0:
        return riemann_zeta(k)
    if x < -1.0:
        raise ValueError("polylog with k >= 4 supports only x in [-1, 1]")
    return _series_polylog(k, x, tol)


def rogers_dilog(x: float, tol: EvalTolerance = _DEFAULT_TOL) -> float:
    """Rogers dilogarithm R(x) = Li2(x) + log|x| log(1-x)/2 for x <= 1."""
    if x > 1.0:
        raise ValueError("rogers_dilog requires x <= 1")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return ZETA2
    return li2(x, tol) + 0.5 * math.log(abs(x)) * math.log1p(-x)


def hurwitz_zeta(s: float, t: float, n_direct: int = 64) -> float:
    """Hurwitz zeta sum_{k>=0} (k+t)^(-s) for s > 1, t > 0.

    Direct summation of the first `n_direct` terms plus an Euler-Maclaurin
    tail; accurate to ~1e-15 relative for the arguments used here.
    """
    if not s > 1.0:
        raise ValueError("hurwitz_zeta requires s > 1")
    if not t > 0.0:
        raise ValueError("hurwitz_zeta requires t > 0")
    total = 0.0
    for k in range(n_direct):
        total += (k + t) ** (-s)
    w = n_direct + t
    total += w ** (1.0 - s) / (s - 1.0)
    total += 0.5 * w ** (-s)
    # tail: sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * w^(-s-2j+1)
    poch = s              # rising factorial s(s+1)...(s+2j-2)
    fact = 2.0            # (2j)!
    wpow = w ** (-s - 1.0)
    for j, b in enumerate(_BERNOULLI, start=1):
        total += b / fact * poch * wpow
        m = 2 * j
        poch *= (s + m - 1.0) * (s + m)
        fact *= (m + 1.0) * (m + 2.0)
        wpow /= w * w
    return total


def riemann_zeta(k: int) -> float:
    """Riemann zeta at an integer k >= 2."""
    if k < 2:
        raise ValueError("riemann_zeta requires k >= 2")
    return hurwitz_zeta(float(k), 1.0)
