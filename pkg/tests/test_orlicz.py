import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqspace_greedy import (
    DegenerateFlowError,
    DomainError,
    DualG,
    Flow,
    Fpa,
    Power,
    ShapeError,
    Table,
    delta2_estimate,
    evaluate,
    flow,
    fundamental_function,
    multiplicative_convexity_check,
)

FAMILIES = [Power(1), Power(1.5), Power(3), Fpa(1, 1), Fpa(2, 1), Fpa(1.5, 0.3), DualG(), Flow(Fpa(1, 1), 0.05)]
GRID = np.concatenate(([0.0], np.geomspace(1e-9, 8.0, 400)))


def newton_d_log_d(target):
    """Root of D log D = target by Newton's method, independent of the package."""
    d = max(2.0, target)
    for _ in range(100):
        step = (d * math.log(d) - target) / (math.log(d) + 1.0)
        d -= step
        if abs(step) < 1e-15 * d:
            break
    return d


@pytest.mark.parametrize("F", FAMILIES, ids=lambda F: F.family)
def test_normalized(F):
    assert F(0.0) == 0.0
    assert F(1.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("F", FAMILIES, ids=lambda F: F.family)
def test_monotone_and_midpoint_convex(F):
    v = F(GRID)
    assert np.all(np.diff(v) >= -1e-12)
    u, w = np.meshgrid(GRID[::8], GRID[::8])
    mid = F((u + w) / 2)
    assert np.all(mid <= (F(u) + F(w)) / 2 + 1e-12)


def test_fpa_branches_meet():
    for p, a in [(1, 1), (2, 1), (1.5, 0.4)]:
        F = Fpa(p, a)
        e = math.exp(-1)
        left = math.exp(-a) * e**p * (-math.log(e)) ** (-a)
        assert left == pytest.approx(math.exp(-(p + a)), rel=1e-14)
        assert F(e) == pytest.approx(math.exp(-(p + a)), rel=1e-14)
        assert F(e * (1 - 1e-9)) == pytest.approx(F(e), rel=1e-7)


def test_eval_examples():
    assert evaluate(Fpa(1, 1), 1.0) == 1.0
    assert evaluate(Fpa(1, 1), math.exp(-1)) == pytest.approx(math.exp(-2), rel=1e-14)
    assert evaluate(Power(2), 0.5) == 0.25


def test_negative_and_nan_rejected():
    with pytest.raises(DomainError):
        Fpa(1, 1)(-0.1)
    with pytest.raises(DomainError):
        Power(2)(np.array([0.2, float("nan")]))


def test_parameter_domains():
    with pytest.raises(DomainError):
        Power(0.5)
    with pytest.raises(DomainError):
        Fpa(1, 0)


@given(st.floats(1e-6, 50.0), st.floats(0.0, 5.0))
def test_power_flow_is_fixed_point(s, t):
    assert flow(Power(2.5), s)(t) == pytest.approx(t**2.5, rel=1e-12, abs=1e-300)


@given(st.floats(1e-8, 10.0))
def test_flow_normalized(s):
    assert flow(Fpa(1, 1), s)(1.0) == pytest.approx(1.0, rel=1e-15)


def test_flow_example():
    F = Fpa(2, 1)
    expect = F(math.exp(-3)) / F(math.exp(-2))
    assert flow(F, math.exp(-2))(math.exp(-1)) == pytest.approx(expect, rel=1e-14)


def test_degenerate_flow():
    T = Table(((0.5, 0.0), (1.0, 1.0)))
    with pytest.raises(DegenerateFlowError):
        flow(T, 0.25)


def test_delta2_power():
    assert delta2_estimate(Power(2), 0.5) == pytest.approx(4.0, rel=1e-12)


def test_delta2_fpa_stable_under_refinement():
    coarse = delta2_estimate(Fpa(1, 1), 0.1, grid_size=512)
    fine = delta2_estimate(Fpa(1, 1), 0.1, grid_size=4096)
    assert math.isfinite(coarse)
    assert abs(fine - coarse) / coarse < 0.01


def test_delta2_exp_table_grows():
    # e^{-1/t} is convex on (0, 1/2]; past the last sample the table is linear
    t = np.geomspace(0.02, 0.5, 200)
    T = Table(tuple(zip(t, np.exp(-1.0 / t))))
    values = [delta2_estimate(T, 0.25, grid=np.geomspace(lo, 0.25, 64)) for lo in (0.2, 0.1, 0.05, 0.03)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] > math.exp(1.0 / (2 * 0.035))


@given(st.floats(0.01, 0.5), st.floats(0.01, 0.5))
def test_delta2_monotone_in_a(a1, a2):
    a1, a2 = sorted((a1, a2))
    grid = np.geomspace(1e-6, 0.5, 300)
    F = Fpa(1, 1)
    assert delta2_estimate(F, a1, grid=grid) <= delta2_estimate(F, a2, grid=grid) + 1e-12


def test_delta2_domain():
    with pytest.raises(DomainError):
        delta2_estimate(Power(2), 0.7)
    with pytest.raises(DomainError):
        delta2_estimate(Power(2), 0.3, grid_size=5)


@pytest.mark.parametrize("F", [Power(1), Power(2.5), Fpa(1, 1), Fpa(2, 1)], ids=str)
def test_multiplicatively_convex(F):
    assert multiplicative_convexity_check(F, grid_size=32) <= 1e-10


def test_convex_but_not_multiplicatively_convex_table():
    # max(0, 2t - 1): s=0.4, t=1, theta=1/2 gives F(sqrt 0.4) > 0 = F(0.4)^(1/2) F(1)^(1/2)
    T = Table(((0.5, 0.0), (1.0, 1.0)))
    direct = T(math.sqrt(0.4)) - T(0.4) ** 0.5 * T(1.0) ** 0.5
    assert direct > 0.2
    assert multiplicative_convexity_check(T, grid_size=32) > 0.2


def test_table_rejects_nonconvex():
    with pytest.raises(ShapeError):
        Table(((0.1, 0.1), (1.0, 0.1)))
    with pytest.raises(ShapeError):
        Table(((0.5, 0.8), (1.0, 1.0)))


def test_table_normalizes_and_extrapolates():
    T = Table(((1.0, 2.0), (2.0, 6.0)))
    assert T(1.0) == 1.0
    assert T(3.0) == pytest.approx(5.0)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3])
def test_fundamental_power(p):
    N = np.arange(1, 1025)
    D = np.array([fundamental_function(Power(p), n) for n in N])
    assert np.max(np.abs(D - N ** (1.0 / p)) / N ** (1.0 / p)) <= 1e-12


def test_fundamental_fpa_against_newton():
    oracle = newton_d_log_d(8 / math.e)
    assert fundamental_function(Fpa(1, 1), 8) == pytest.approx(oracle, rel=1e-12)
    assert oracle == pytest.approx(2.830, abs=1e-3)


def test_fundamental_trivial():
    for F in FAMILIES:
        assert fundamental_function(F, 1) == 1.0
    with pytest.raises(DomainError):
        fundamental_function(Power(2), 0.5)
