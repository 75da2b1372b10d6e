import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from crnoma.errors import DomainError, EvaluationError
from crnoma.statmath import (
    GOLDEN_RATIO,
    Bracket,
    OptimizationResult,
    Probability,
    SearchMethod,
    golden_section_max,
    grid_max,
    q,
    q_inv,
)


def gaussian_tail_quad(x: float) -> float:
    """Independent tail-probability oracle: adaptive quadrature of the
    standard normal density from x to infinity."""
    val, _ = quad(lambda t: math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi), x, np.inf)
    return val


# ---------------------------------------------------------------------------
# q


def test_q_matches_quadrature_oracle():
    for x in [-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0]:
        assert abs(q(x) - gaussian_tail_quad(x)) < 1e-12


def test_q_known_values():
    assert q(0.0) == 0.5
    assert abs(q(1.0) - 0.15865525393145707) < 1e-15
    assert abs(q(-1.0) - (1.0 - 0.15865525393145707)) < 1e-15


def test_q_reflection_identity():
    for x in np.linspace(-8.0, 8.0, 161):
        assert abs(q(x) + q(-x) - 1.0) < 1e-12


def test_q_strictly_decreasing():
    # float values can only be strictly ordered while 1 - q(x) is still
    # representable (x above about -8.3); past that the carried log keeps
    # the ordering all the way into the subnormal range
    xs = np.linspace(-8.0, 8.0, 321)
    vals = [q(float(x)) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    xs = np.linspace(-35.0, 35.0, 141)
    logs = [q(float(x)).log_value for x in xs]
    assert all(a > b for a, b in zip(logs, logs[1:]))


def test_q_array_matches_scalar_bitwise():
    xs = np.linspace(-5.0, 5.0, 17)
    arr = q(xs)
    assert isinstance(arr, np.ndarray)
    for x, v in zip(xs, arr):
        assert float(q(float(x))) == float(v)


def test_q_scalar_returns_probability_with_log():
    p = q(2.0)
    assert isinstance(p, Probability)
    assert abs(p.log_value - math.log(float(p))) < 1e-12


def test_q_deep_tail_carries_log_past_underflow():
    # far enough out that the tail probability underflows float64 entirely
    p = q(50.0)
    assert float(p) == 0.0
    assert p.log_value < -1000.0
    assert math.isfinite(p.log_value)


def test_q_rejects_non_finite():
    with pytest.raises(DomainError):
        q(float("nan"))
    with pytest.raises(DomainError):
        q(float("inf"))
    with pytest.raises(DomainError):
        q(np.array([0.0, np.nan]))


# ---------------------------------------------------------------------------
# q_inv


def test_q_inv_known_values():
    assert abs(q_inv(0.5)) < 1e-12
    assert abs(q_inv(0.15865525393145707) - 1.0) < 1e-9


def test_q_inv_roundtrip_x():
    for x in np.linspace(-6.0, 6.0, 121):
        assert abs(q_inv(q(float(x))) - x) < 1e-9


def test_q_inv_roundtrip_p():
    for p in np.linspace(0.001, 0.999, 999):
        assert abs(q(q_inv(float(p))) - p) < 1e-10


def test_q_inv_deep_tail_roundtrip():
    # values of x whose tail probability is far below the smallest subnormal
    for x in [40.0, 46.0, 53.0, 60.0]:
        p = q(x)
        assert float(p) == 0.0  # would be unrecoverable without the log channel
        assert abs(q_inv(p) - x) < 1e-9 * x


def test_q_inv_subnormal_plain_float():
    # plain floats in the subnormal range still invert via their log
    x = q_inv(1e-310)
    assert abs(q(x).log_value - math.log(1e-310)) < 1e-6


def test_q_inv_rejects_out_of_range():
    for bad in [0.0, 1.0, -0.1, 1.1, float("nan")]:
        with pytest.raises(DomainError):
            q_inv(bad)


# ---------------------------------------------------------------------------
# Probability / Bracket containers


def test_probability_bounds():
    assert Probability(0.0) == 0.0
    assert Probability(1.0) == 1.0
    for bad in [-1e-12, 1.0 + 1e-12, float("nan")]:
        with pytest.raises(DomainError):
            Probability(bad)


def test_probability_is_float():
    p = Probability(0.25)
    assert p + 0.25 == 0.5
    assert p.value == 0.25
    assert abs(p.log_value - math.log(0.25)) < 1e-15


def test_probability_from_log():
    p = Probability.from_log(-2000.0)
    assert float(p) == 0.0
    assert p.log_value == -2000.0
    q_ = Probability.from_log(math.log(0.5))
    assert abs(float(q_) - 0.5) < 1e-15


def test_bracket_validation():
    b = Bracket(low=0.0, high=1.0)
    assert b.width == 1.0
    assert abs(b.golden_ratio - (math.sqrt(5.0) - 1.0) / 2.0) < 1e-15
    with pytest.raises(DomainError):
        Bracket(low=1.0, high=1.0)
    with pytest.raises(DomainError):
        Bracket(low=2.0, high=1.0)
    with pytest.raises(DomainError):
        Bracket(low=0.0, high=1.0, golden_ratio=0.6)


def test_golden_ratio_value():
    assert abs(GOLDEN_RATIO - 0.6180339887498949) < 1e-15
    assert abs(GOLDEN_RATIO * GOLDEN_RATIO + GOLDEN_RATIO - 1.0) < 1e-15


# ---------------------------------------------------------------------------
# golden_section_max


def test_golden_finds_quadratic_peak():
    res = golden_section_max(lambda t: -((t - 0.3) ** 2), Bracket(0.0, 1.0), iterations=20)
    assert isinstance(res, OptimizationResult)
    assert res.method is SearchMethod.GOLDEN_SECTION
    assert res.iterations == 20
    assert abs(res.tau_opt - 0.3) < 7e-5
    assert abs(res.value_opt - (-((res.tau_opt - 0.3) ** 2))) == 0.0


def test_golden_monotone_decreasing_pins_left_edge():
    res = golden_section_max(lambda t: -t, Bracket(0.0, 1.0), iterations=20)
    assert res.tau_opt < 7e-5


def test_golden_bracket_width_contraction():
    for k in [1, 5, 20, 40]:
        res = golden_section_max(lambda t: -((t - 0.5) ** 2), Bracket(0.0, 2.0), iterations=k)
        assert res.bracket_width == pytest.approx(2.0 * GOLDEN_RATIO**k, rel=1e-12)


def test_golden_one_new_evaluation_per_iteration():
    calls = []

    def f(t):
        calls.append(t)
        return -((t - 0.4) ** 2)

    golden_section_max(f, Bracket(0.0, 1.0), iterations=25)
    # two seed points, one fresh point per iteration, one final endpoint value
    assert len(calls) == 25 + 3


def test_golden_rejects_bad_iterations():
    with pytest.raises(DomainError):
        golden_section_max(lambda t: t, Bracket(0.0, 1.0), iterations=0)


def test_golden_non_finite_objective_names_tau():
    with pytest.raises(EvaluationError, match="tau"):
        golden_section_max(lambda t: float("nan"), Bracket(0.0, 1.0), iterations=5)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(
    peak=st.floats(0.05, 0.95),
    width=st.floats(0.1, 100.0),
    low=st.floats(-50.0, 50.0),
    curv=st.floats(0.01, 100.0),
)
def test_golden_concave_quadratic_property(peak, width, low, curv):
    high = low + width
    t_star = low + peak * width
    res = golden_section_max(
        lambda t: -curv * (t - t_star) ** 2, Bracket(low, high), iterations=40
    )
    assert low <= res.tau_opt <= high
    assert abs(res.tau_opt - t_star) < res.bracket_width + 1e-9 * width


# ---------------------------------------------------------------------------
# grid_max


def test_grid_exact_on_grid_peak():
    res = grid_max(lambda t: -((t - 0.25) ** 2), Bracket(0.0, 1.0), points=10001)
    assert res.method is SearchMethod.GRID
    assert res.tau_opt == 0.25
    assert res.iterations == 10001
    assert res.bracket_width == pytest.approx(1.0 / 10000.0, rel=1e-12)


def test_grid_sine_peak():
    res = grid_max(lambda t: math.sin(math.pi * t), Bracket(0.0, 1.0), points=100001)
    assert abs(res.tau_opt - 0.5) < 1e-5


def test_grid_tie_breaks_to_lowest():
    res = grid_max(lambda t: 1.0, Bracket(0.0, 1.0), points=101)
    assert res.tau_opt == 0.0


def test_grid_includes_endpoints():
    seen = {}

    def f(t):
        t = np.asarray(t, dtype=float)
        seen["taus"] = t.copy()
        return -((t - 2.0) ** 2)

    grid_max(f, Bracket(0.0, 1.0), points=11)
    assert seen["taus"][0] == 0.0 and seen["taus"][-1] == 1.0


def test_grid_accepts_scalar_only_objective():
    def f(t):
        if not isinstance(t, float):
            raise TypeError("scalar only")
        return -((t - 0.6) ** 2)

    res = grid_max(f, Bracket(0.0, 1.0), points=1001)
    assert abs(res.tau_opt - 0.6) < 1e-9


def test_grid_uses_vectorized_objective_when_available():
    calls = []

    def f(t):
        calls.append(np.size(t))
        return -((np.asarray(t) - 0.5) ** 2)

    grid_max(f, Bracket(0.0, 1.0), points=501)
    assert calls == [501]


def test_grid_rejects_too_few_points():
    with pytest.raises(DomainError):
        grid_max(lambda t: t, Bracket(0.0, 1.0), points=1)


def test_grid_non_finite_objective_names_tau():
    with pytest.raises(EvaluationError, match="tau"):
        grid_max(lambda t: float("inf"), Bracket(0.0, 1.0), points=11)


def test_golden_and_grid_agree_on_unimodal_objective():
    bracket = Bracket(0.1, 1.9)

    def f(t):
        t = np.asarray(t, dtype=float)
        out = np.sin(np.pi * t / 2.0) * np.exp(-t)
        return out if out.ndim else float(out)

    g = golden_section_max(f, bracket, iterations=40)
    gr = grid_max(f, bracket, points=100001)
    assert abs(g.tau_opt - gr.tau_opt) <= g.bracket_width + gr.bracket_width
    assert g.value_opt == pytest.approx(gr.value_opt, rel=1e-9)
