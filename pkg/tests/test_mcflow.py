import json
import math

import numpy as np
import pytest

from orthokit.geom import ideal_triangle, seam_length, build_pants
from orthokit.mcflow import (
    FlowConfig, EmpiricalMoments, _PantsDomain, _entry_state,
    sample_entering_geodesic, flow_to_exit, estimate_moments,
    estimate_hitting_time, histogram_csv,
)
from orthokit.specfun import PI


def test_flow_config_validation(pants111):
    with pytest.raises(ValueError):
        FlowConfig(pants111, 0)
    with pytest.raises(ValueError):
        FlowConfig(pants111, 10, max_length=0.0)


def test_domain_rejects_cusped():
    with pytest.raises(ValueError):
        _PantsDomain(ideal_triangle())


def _perpendicular_entry(surface, side, offset):
    """Entry state perpendicular to a boundary side at a given arc offset."""
    domain = _PantsDomain(surface)
    return _entry_state(domain, side, offset, 0.5 * PI)


def test_perpendicular_seam_entry_exits_at_seam_length(pants111):
    # entering cuff 1 (side 2) perpendicularly at a seam foot, the geodesic
    # runs along the seam perpendicular and exits after exactly that length
    d = seam_length(1.0, 1.0, 1.0)
    entry = _perpendicular_entry(pants111, 2, 0.0)
    got = flow_to_exit(pants111, entry)
    assert got == pytest.approx(d, abs=1e-9)


def test_perpendicular_seam_entry_asymmetric(pants123):
    # side 2 carries cuff 1; its seam to cuff 3 has the hexagon-rule length
    d = seam_length(1.0, 3.0, 2.0)
    entry = _perpendicular_entry(pants123, 2, 0.0)
    got = flow_to_exit(pants123, entry)
    assert got == pytest.approx(d, abs=1e-9)


def test_sample_entering_geodesic_shape(pants111):
    rng = np.random.default_rng(3)
    (u, v, z), s, theta = sample_entering_geodesic(pants111, rng)
    assert 0.0 <= s <= pants111.boundary_length
    assert 0.0 < theta < PI
    assert z.imag > 0.0
    assert u != v
    L = flow_to_exit(pants111, (u, v, z))
    assert 0.0 < L <= 200.0


def test_moment0_is_exact(pants111):
    # L^0 = 1 for every sample: M_0 estimate = 2 Len(dS) with zero error
    m = estimate_moments(FlowConfig(pants111, 500, seed=1))
    assert m.estimates[0] == pytest.approx(6.0)
    assert m.std_errors[0] == pytest.approx(0.0, abs=1e-12)


def test_determinism(pants111):
    c = FlowConfig(pants111, 400, seed=42)
    m1 = estimate_moments(c)
    m2 = estimate_moments(c)
    assert m1 == m2
    m3 = estimate_moments(FlowConfig(pants111, 400, seed=43))
    assert m3.estimates[1] != m1.estimates[1]


def test_moment1_matches_identity(pants111):
    # M_1 = 4 pi^2 |chi| exactly; 20k samples puts the truth within ~3 sigma
    m = estimate_moments(FlowConfig(pants111, 20000, seed=5))
    z = (m.estimates[1] - 4.0 * PI * PI) / m.std_errors[1]
    assert abs(z) < 4.0
    assert m.capped_fraction < 1e-3


def test_hitting_time_estimate_consistency(pants111):
    a, se = estimate_hitting_time(FlowConfig(pants111, 5000, seed=9))
    m = estimate_moments(FlowConfig(pants111, 5000, seed=9))
    assert a == pytest.approx(m.estimates[2] / (8.0 * PI * PI), rel=1e-12)
    assert se > 0.0


def test_histogram_csv_structure(pants111):
    csv = histogram_csv(FlowConfig(pants111, 300, seed=2), bins=20)
    lines = csv.strip().split("\n")
    assert lines[0] == "bin_left,bin_right,count"
    assert len(lines) == 21
    total = sum(int(line.split(",")[2]) for line in lines[1:])
    assert total == 300
    # support starts strictly above zero: no instant exits
    first_left = float(lines[1].split(",")[0])
    assert first_left > 0.0


def test_empirical_moments_json():
    m = EmpiricalMoments((0, 1), (6.0, 39.0), (0.0, 0.5), 0, 100)
    doc = json.loads(m.to_json())
    assert doc["samples"] == 100
    assert doc["estimates"] == [6.0, 39.0]
    with pytest.raises(ValueError):
        EmpiricalMoments((0,), (math.inf,), (0.0,), 0, 10)
    with pytest.raises(ValueError):
        EmpiricalMoments((0,), (1.0,), (-0.1,), 0, 10)
