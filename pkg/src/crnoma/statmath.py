"""Gaussian tail kernels and bracketed univariate maximization.

This module supplies the two numerical primitives everything else is built
on: the standard Gaussian tail function ``q`` with its inverse ``q_inv``,
and two maximizers over a closed bracket, a golden-section search and a
brute-force grid search used as its oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np
from scipy import special as _special

from .errors import DomainError, EvaluationError

__all__ = [
    "GOLDEN_RATIO",
    "Probability",
    "Bracket",
    "SearchMethod",
    "OptimizationResult",
    "q",
    "q_inv",
    "golden_section_max",
    "grid_max",
]

#: Bracket shrink factor (sqrt(5) - 1) / 2 used by the golden-section search.
GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
# Below this value the plain float representation of a probability is too
# close to the underflow threshold for value-space root finding.
_TINY_P = 1e-250


class Probability(float):
    """A float constrained to [0, 1] that also carries its own logarithm.

    The log representation survives underflow: far Gaussian tails such as
    q(46) are smaller than the smallest positive double, yet operations
    that must invert them can still do so exactly through ``log_value``.
    Instances behave as ordinary floats in arithmetic.
    """

    __slots__ = ("_log",)

    def __new__(cls, value: float, *, _log: float | None = None):
        v = float(value)
        if math.isnan(v) or v < 0.0 or v > 1.0:
            raise DomainError(f"probability {value!r} outside [0, 1]")
        self = super().__new__(cls, v)
        if _log is None:
            _log = math.log(v) if v > 0.0 else -math.inf
        self._log = float(_log)
        return self

    @classmethod
    def from_log(cls, log_value: float) -> "Probability":
        """Build a probability from its natural logarithm.

        The float value may round to 0.0 when ``log_value`` is below the
        underflow threshold; the exact logarithm is retained either way.
        """
        lv = float(log_value)
        if math.isnan(lv) or lv > 0.0:
            raise DomainError(f"log-probability {log_value!r} above 0")
        return cls(math.exp(lv), _log=lv)

    @property
    def value(self) -> float:
        return float(self)

    @property
    def log_value(self) -> float:
        return self._log

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Probability({float.__repr__(self)})"


@dataclass(frozen=True)
class Bracket:
    """A search interval [low, high] in seconds with the golden ratio pinned.

    ``golden_ratio`` exists as a field so results can record the constant
    they were produced with; the constructor rejects any value that is not
    (sqrt(5) - 1) / 2 to machine precision.
    """

    low: float
    high: float
    golden_ratio: float = GOLDEN_RATIO

    def __post_init__(self):
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise DomainError("bracket endpoints must be finite")
        if not self.low < self.high:
            raise DomainError(
                f"bracket requires low < high, got [{self.low}, {self.high}]"
            )
        if abs(self.golden_ratio - GOLDEN_RATIO) > 4.0 * np.finfo(float).eps:
            raise DomainError("golden_ratio must equal (sqrt(5) - 1) / 2")

    @property
    def width(self) -> float:
        return self.high - self.low


class SearchMethod(Enum):
    GOLDEN_SECTION = "golden-section"
    GRID = "grid"


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a bracketed maximization.

    For the golden-section method ``iterations`` is the number of shrink
    steps and ``bracket_width`` the final bracket width. For the grid
    method ``iterations`` is the number of grid points evaluated and
    ``bracket_width`` the grid spacing (the resolution of the answer).
    """

    tau_opt: float
    value_opt: float
    iterations: int
    bracket_width: float
    method: SearchMethod


def q(x: Union[float, np.ndarray]) -> Union[Probability, np.ndarray]:
    """Gaussian tail probability Q(x) = P[N(0, 1) > x].

    Parameters
    ----------
    x : float or ndarray
        Finite argument(s).

    Returns
    -------
    Probability or ndarray
        Scalar input returns a :class:`Probability` carrying its log value;
        array input returns a plain float64 array (no wrapping).

    Notes
    -----
    Computed as 0.5 * erfc(x / sqrt(2)). The same erfc kernel serves the
    scalar and array paths so they agree bit for bit.
    """
    if isinstance(x, np.ndarray):
        if not np.isfinite(x).all():
            raise DomainError("q requires finite input")
        return 0.5 * _special.erfc(x / _SQRT2)
    xf = float(x)
    if not math.isfinite(xf):
        raise DomainError(f"q requires finite input, got {x!r}")
    value = 0.5 * float(_special.erfc(xf / _SQRT2))
    return Probability(value, _log=float(_special.log_ndtr(-xf)))


def _q_inv_log_space(log_p: float) -> float:
    """Invert log Q(z) = log_p for deep-tail probabilities (z > 0)."""
    # log Q(z) is strictly decreasing in z; bracket generously.
    lo = 0.0
    hi = math.sqrt(-2.0 * log_p) + 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(_special.log_ndtr(-mid)) > log_p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, lo):
            break
    z = 0.5 * (lo + hi)
    # Newton polish on g(z) = log Q(z) - log_p with g'(z) = -phi(z)/Q(z).
    for _ in range(3):
        log_q_z = float(_special.log_ndtr(-z))
        log_phi_z = -0.5 * z * z - _LOG_SQRT_2PI
        z += (log_q_z - log_p) * math.exp(log_q_z - log_phi_z)
    return z


def q_inv(p: Union[float, Probability]) -> float:
    """Inverse of :func:`q` on (0, 1).

    Accepts a plain float or a :class:`Probability`. A Probability whose
    float value has underflowed to zero but whose ``log_value`` is finite
    is treated as the strictly positive number it represents.

    Raises
    ------
    DomainError
        If p is not strictly inside (0, 1) (0 and 1 map to infinities).
    """
    pf = float(p)
    log_p = getattr(p, "log_value", None)
    if math.isnan(pf) or pf >= 1.0 or pf < 0.0:
        raise DomainError(f"q_inv requires 0 < p < 1, got {p!r}")
    if pf <= 0.0 and (log_p is None or log_p == -math.inf):
        raise DomainError(f"q_inv requires 0 < p < 1, got {p!r}")

    if pf > 0.5:
        # Invert through the complementary tail, where root finding is
        # well conditioned. A carried log recovers the tail with full
        # relative accuracy even when 1 - p has absorbed it into rounding;
        # for plain floats in [0.5, 1) the subtraction is exact anyway.
        if log_p is not None and log_p > -math.inf:
            tail = -math.expm1(log_p)
        else:
            tail = 1.0 - pf
        return -q_inv(Probability(tail))

    if pf < _TINY_P:
        if log_p is None:
            log_p = math.log(pf)  # pf > 0 here, possibly subnormal
        return _q_inv_log_space(float(log_p))

    # Value-space bisection on the same q kernel, then Newton polish.
    # 60 halvings take the 80-wide bracket to 7e-17, below the resolution
    # of the answer itself; Newton then removes the residual.
    lo, hi = -40.0, 40.0  # q(40) ~ 7e-350 brackets every double in range
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if float(q(mid)) > pf:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(3):
        phi = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
        if phi == 0.0:
            break
        z += (float(q(z)) - pf) / phi
    return z


ObjectiveFn = Callable[[float], float]


def _eval_finite(f: ObjectiveFn, tau: float) -> float:
    value = float(f(tau))
    if not math.isfinite(value):
        raise EvaluationError(
            f"objective returned non-finite value {value!r} at tau={tau!r}"
        )
    return value


def golden_section_max(
    f: ObjectiveFn, bracket: Bracket, iterations: int = 20
) -> OptimizationResult:
    """Maximize a unimodal function by golden-section bracket shrinking.

    Two interior points sit at distance g * (up - low) from each end of
    the bracket. Each iteration discards the side with the smaller
    interior value, reuses the surviving interior point, and evaluates the
    objective once at the fresh point. After the final iteration the
    retained upper endpoint and its objective value are returned.

    Parameters
    ----------
    f : callable
        Objective, evaluable on [bracket.low, bracket.high]. Assumed
        unimodal; this is not checked.
    bracket : Bracket
        Initial search interval.
    iterations : int, optional
        Number of shrink steps, 20 by default.

    Returns
    -------
    OptimizationResult
        With ``bracket_width`` equal to g**iterations times the initial
        width (up to roundoff).
    """
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    g = bracket.golden_ratio
    low, up = bracket.low, bracket.high
    d = g * (up - low)
    tau1 = low + d
    tau2 = up - d
    f1 = _eval_finite(f, tau1)
    f2 = _eval_finite(f, tau2)
    for _ in range(iterations):
        if f1 >= f2:
            low = tau2
            tau2, f2 = tau1, f1
            d = g * (up - low)
            tau1 = low + d
            f1 = _eval_finite(f, tau1)
        else:
            up = tau1
            tau1, f1 = tau2, f2
            d = g * (up - low)
            tau2 = up - d
            f2 = _eval_finite(f, tau2)
    return OptimizationResult(
        tau_opt=up,
        value_opt=_eval_finite(f, up),
        iterations=iterations,
        bracket_width=up - low,
        method=SearchMethod.GOLDEN_SECTION,
    )


def grid_max(f: ObjectiveFn, bracket: Bracket, points: int) -> OptimizationResult:
    """Maximize by exhaustive evaluation on an evenly spaced grid.

    Evaluates ``points`` abscissae including both endpoints and returns
    the first argmax (ties break toward the smaller tau). The objective is
    offered the whole grid as one array first; objectives that only accept
    scalars are evaluated point by point.
    """
    if points < 2:
        raise DomainError(f"grid_max requires points >= 2, got {points}")
    taus = np.linspace(bracket.low, bracket.high, points)
    values = None
    try:
        out = np.asarray(f(taus), dtype=float)
        if out.shape == taus.shape:
            values = out
    except Exception:
        values = None
    if values is None:
        values = np.array([float(f(t)) for t in taus])
    finite = np.isfinite(values)
    if not finite.all():
        bad = float(taus[int(np.argmin(finite))])
        raise EvaluationError(f"objective returned non-finite value at tau={bad!r}")
    i = int(np.argmax(values))
    return OptimizationResult(
        tau_opt=float(taus[i]),
        value_opt=float(values[i]),
        iterations=points,
        bracket_width=float(taus[1] - taus[0]),
        method=SearchMethod.GRID,
    )
