"""End-to-end checks of the python surface. Deep numerical validation lives
in the C++ test suite; these verify the bindings expose the same quantities
and stay deterministic."""

import math

import pytest

import lpentropy as lp


def test_version():
    assert lp.__version__ == "0.1.0"


def test_a0_closed_forms():
    # n = 3, p = 2 collapses to 2 / (3 pi e).
    assert lp.a0_constant(3, 2.0) * (3 * math.pi * math.e / 2) == pytest.approx(
        1.0, abs=1e-12
    )
    assert lp.a0_constant(4, 2.0) == pytest.approx(
        0.05854983152431916069024, abs=1e-15
    )


def test_theta_and_geometry():
    assert lp.theta(3, 2.0, 1.0) == pytest.approx(0.6, abs=1e-15)
    assert lp.surface_area(3) == pytest.approx(4 * math.pi, rel=1e-15)
    assert lp.sphere_volume(3) == pytest.approx(2 * math.pi**2, rel=1e-15)


def test_extremal_spec_and_moments():
    spec = lp.extremal_spec(3, 2.0)
    assert spec["a"] == pytest.approx((2 / math.pi) ** 0.75, rel=1e-14)
    assert spec["s"] == pytest.approx(2.0, abs=0)
    mom = lp.moments(3, 2.0)
    assert mom["I1"] == pytest.approx(-2.1773740579341822971, rel=1e-14)
    assert mom["I2"] == pytest.approx(3.0, rel=1e-14)
    assert mom["J1"] == pytest.approx(0.75, rel=1e-14)


def test_extremal_deficit_vanishes():
    for n, p in [(3, 2.0), (4, 2.0), (3, 1.5)]:
        assert abs(lp.extremal_deficit(n, p)) < 1e-6


def test_deficit_samples_nonnegative_and_seeded():
    first = lp.deficit_samples(3, 2.0, family="gaussian_mixture", count=12, seed=7)
    again = lp.deficit_samples(3, 2.0, family="gaussian_mixture", count=12, seed=7)
    assert first == again
    assert len(first) == 12
    assert min(first) >= -1e-7


def test_nash_constant_bounded_by_a0():
    row = lp.nash_constant(3, 2.0, 1.5, seed=11, restarts=2, max_evals=120)
    assert row["status"] == "ok"
    assert 0.0 < row["N_hat"] <= lp.a0_constant(3, 2.0) + 1e-6
    rerun = lp.nash_constant(3, 2.0, 1.5, seed=11, restarts=2, max_evals=120)
    assert row == rerun


def test_limit_trace_default_grid():
    rows = lp.limit_trace(3, 2.0)
    assert len(rows) == 7
    errors = [r["error"] for r in rows]
    assert all(e < 0 for e in errors)
    assert errors[0] == pytest.approx(-0.10362634, abs=1e-6)
    # First-order convergence: each tenfold smaller gap shrinks the error
    # by roughly ten.
    for wide, tight in zip(errors, errors[1:]):
        assert abs(tight) < 0.2 * abs(wide)
    assert all(r["status"] == "ok" for r in rows)


def test_bubble_fit_mass():
    fit = lp.bubble_fit(3, 2.0, observable="mass")
    assert fit["fitted"][0] == pytest.approx(1.0, abs=1e-4)
    assert fit["fitted"][1] == pytest.approx(-0.25, rel=0.05)
    assert fit["residual_rms"] < 1e-5


def test_b_search_constant_family():
    result = lp.b_search(3, 2.0, family="constant")
    target = (2 * math.pi**2) ** (-2.0 / 3.0)
    assert result["B_hat"] == pytest.approx(target, abs=1e-8)
    assert result["constant_candidate"] == pytest.approx(target, abs=1e-15)
    assert result["status"] == "ok"


def test_minimize_j_constant_basin():
    result = lp.minimize_j(3, 2.0, 1.9, C=0.485, n_nodes=500)
    assert result["status"] == "ok"
    assert result["el_residual"] < 1e-4
    assert result["nu"] == pytest.approx(
        0.485 * (2 * math.pi**2) ** (2.0 / 3.0), rel=1e-8
    )
    trace = result["j_trace"]
    assert all(b <= a + 1e-15 for a, b in zip(trace, trace[1:]))


def test_b_lower_trace_single_row():
    rows = lp.b_lower_trace(
        3,
        2.0,
        q_grid=[1.8],
        seed=23,
        nash_reference=False,
        sup_restarts=3,
        sup_max_evals=100,
        descent_nodes=400,
    )
    assert len(rows) == 1
    row = rows[0]
    assert row["status"] == "ok"
    assert row["N_ref"] == pytest.approx(lp.a0_constant(3, 2.0), abs=1e-15)
    assert row["B_hat"] >= (2 * math.pi**2) ** (-2.0 / 3.0) - 1e-12
    assert row["nu"] == pytest.approx(
        row["C_k"] * (2 * math.pi**2) ** (2.0 / 3.0), rel=1e-6
    )


def test_parameter_validation_raises():
    with pytest.raises(ValueError, match="requires p < n and p <= 2"):
        lp.extremal_spec(3, 2.5)
    with pytest.raises(ValueError):
        lp.theta(3, 2.0, 2.5)
    with pytest.raises(ValueError):
        lp.deficit_samples(3, 2.0, count=0)
