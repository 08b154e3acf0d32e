"""Assemble orthospectra and kernels into the moment identities, with
convergence reports: Basmajian (M_0), the Rogers-dilogarithm identity (M_1),
and the average hitting time (M_2).
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

from . import kernels
from .geom import OrthoSpectrum, SurfaceModel, a_of_l, enumerate_orthospectrum
from .kernels import DivergenceError
from .quadrature import QuadratureSpec, F_k_numeric
from .specfun import PI, ZETA3, rogers_dilog


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class IdentityReport:
    """Partial sums of one identity at one cutoff, against its prediction."""
    identity_name: str
    l_max: float
    partial_sum: float
    predicted: float
    terms_used: int
    trace: tuple = ()   # ((l_max', partial_sum'), ...) increasing cutoffs

    @property
    def abs_error(self) -> float:
        return abs(self.partial_sum - self.predicted)

    @property
    def rel_error(self) -> float:
        if self.predicted == 0.0:
            return 0.0 if self.partial_sum == 0.0 else math.inf
        return self.abs_error / abs(self.predicted)

    def to_json(self) -> str:
        return json.dumps({
            "identity_name": self.identity_name,
            "l_max": self.l_max,
            "partial_sum": self.partial_sum,
            "predicted": self.predicted,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "terms_used": self.terms_used,
            "trace": [[l, s] for l, s in self.trace],
        })

    def trace_csv(self) -> str:
        lines = ["l_max,partial_sum,abs_error"]
        for l, s in self.trace:
            lines.append(f"{l!r},{s!r},{abs(s - self.predicted)!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MomentReport:
    """Truncated moment M_k split into spectrum and cusp contributions."""
    k: int
    truncated_moment: float
    cusp_contribution: float
    spectrum_contribution: float
    method: Method

    def __post_init__(self):
        total = self.spectrum_contribution + self.cusp_contribution
        if abs(total - self.truncated_moment) > 1e-9 * max(1.0, abs(total)):
            raise ValueError("inconsistent moment decomposition")

    def to_json(self) -> str:
        return json.dumps({
            "k": self.k,
            "truncated_moment": self.truncated_moment,
            "cusp_contribution": self.cusp_contribution,
            "spectrum_contribution": self.spectrum_contribution,
            "method": self.method.value,
        })


_TRACE_FRACTIONS = (0.25, 0.5, 0.75, 1.0)


def _surface_spectrum(surface: SurfaceModel, l_max: float) -> OrthoSpectrum:
    if not surface.generators:
        # ideal triangle: no closed orthogeodesics at all
        return OrthoSpectrum((), l_max)
    return enumerate_orthospectrum(surface, l_max)


def _partial(spectrum: OrthoSpectrum, cutoff: float, term) -> tuple:
    total = 0.0
    used = 0
    for l, mult in spectrum.iter_lengths():
        if l <= cutoff:
            total += mult * term(l)
            used += mult
    return total, used


def _build_report(name: str, surface: SurfaceModel, l_max: float, term,
                  predicted: float, offset: float = 0.0) -> IdentityReport:
    spectrum = _surface_spectrum(surface, l_max)
    trace = []
    for frac in _TRACE_FRACTIONS:
        cutoff = frac * l_max
        s, _ = _partial(spectrum, cutoff, term)
        trace.append((cutoff, s + offset))
    partial, used = _partial(spectrum, l_max, term)
    return IdentityReport(name, l_max, partial + offset, predicted, used,
                          tuple(trace))


def verify_basmajian(surface: SurfaceModel, l_max: float) -> IdentityReport:
    """Boundary-length identity: sum of 2 V_1(log coth(l/2)) -> Len(dS)."""
    if surface.cusp_count > 0:
        raise DivergenceError(
            "Basmajian sum diverges: boundary cusps make M_0 infinite")
    return _build_report(
        "basmajian", surface, l_max,
        lambda l: 2.0 * kernels.basmajian_term(2, l),
        surface.boundary_length)


def verify_rogers(surface: SurfaceModel, l_max: float) -> IdentityReport:
    """Rogers-dilogarithm identity: sum R(sech^2(l/2)) -> pi^2(6|chi|-C_S)/12."""
    abs_chi = abs(surface.chi_eff)
    predicted = kernels.rogers_identity_rhs(abs_chi, surface.cusp_count)
    return _build_report(
        "rogers", surface, l_max,
        lambda l: rogers_dilog(a_of_l(l)),
        predicted)


def verify_moment1(surface: SurfaceModel, l_max: float) -> IdentityReport:
    """M_1 identity: sum F_1(a) + cusp terms -> Vol(T_1) = 4 pi^2 |chi|."""
    abs_chi = abs(surface.chi_eff)
    offset = surface.cusp_count * kernels.cusp_term(1)
    return _build_report(
        "moment1", surface, l_max,
        lambda l: 8.0 * rogers_dilog(a_of_l(l)),
        4.0 * PI * PI * abs_chi, offset=offset)


def truncated_moment(surface: SurfaceModel, k: int, l_max: float,
                     method: Method = Method.CLOSED_FORM,
                     spec: QuadratureSpec | None = None) -> MomentReport:
    """Truncated M_k = sum_{l <= l_max} F_k(sech^2(l/2)) + C_S cusp_term(k)."""
    if k < 1:
        raise ValueError("truncated_moment requires k >= 1 (M_0 is the "
                         "boundary length; use verify_basmajian)")
    if method is Method.CLOSED_FORM and k not in (1, 2):
        raise ValueError("closed forms are available only for k in {1, 2}")
    spectrum = _surface_spectrum(surface, l_max)
    if method is Method.CLOSED_FORM:
        if k == 1:
            term = lambda l: 8.0 * rogers_dilog(a_of_l(l))
        else:
            term = lambda l: kernels.F_closed(a_of_l(l))
    else:
        qspec = spec if spec is not None else QuadratureSpec()
        term = lambda l: F_k_numeric(a_of_l(l), k, qspec)
    spec_sum, _ = _partial(spectrum, l_max, term)
    cusp = surface.cusp_count * kernels.cusp_term(k) if surface.cusp_count else 0.0
    return MomentReport(k, spec_sum + cusp, cusp, spec_sum, method)


def average_hitting_time_report(surface: SurfaceModel, l_max: float,
                                method: Method = Method.CLOSED_FORM) -> float:
    """Truncated A(S) = M_2 / (2 Vol(T_1)) = M_2 / (8 pi^2 |chi|)."""
    abs_chi = abs(surface.chi_eff)
    report = truncated_moment(surface, 2, l_max, method)
    return report.truncated_moment / (8.0 * PI * PI * abs_chi)
