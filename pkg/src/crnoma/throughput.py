"""Licensed-user traffic model, interference probabilities, and the
sensing-throughput objectives.

All tau-dependent functions accept a scalar or an ndarray of sensing
times. Internally everything is computed on arrays through a single code
path, so a scalar call returns exactly the value found at the matching
position of an array call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from . import noma
from .errors import DomainError
from .noma import HarvestModel, NomaNetwork
from .sensing import SensingParams, pf_from_pd
from .statmath import Probability

__all__ = [
    "TrafficModel",
    "PowerPolicy",
    "ObjectiveKind",
    "ScenarioConfig",
    "interference_prob_perfect",
    "interference_prob_imperfect",
    "r0",
    "r0p",
    "r1",
    "r1pip",
    "objective_value",
]

TauLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class TrafficModel:
    """Licensed-user activity prior and exponential holding-time means.

    p_h0 is the probability the channel is idle during a frame; the busy
    prior is always derived as 1 - p_h0. alpha and beta are the mean
    holding times (seconds) driving the imperfect- and perfect-sensing
    interference probabilities respectively.
    """

    p_h0: Probability
    alpha: float
    beta: float

    def __post_init__(self):
        p = self.p_h0
        if not isinstance(p, Probability):
            try:
                p = Probability(p)
            except DomainError:
                raise DomainError(
                    f"p_h0 must lie strictly in (0, 1), got {self.p_h0!r}"
                ) from None
            object.__setattr__(self, "p_h0", p)
        if not 0.0 < float(p) < 1.0:
            raise DomainError(f"p_h0 must lie strictly in (0, 1), got {float(p)}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be > 0, got {self.alpha!r}")
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be > 0, got {self.beta!r}")

    @property
    def p_h1(self) -> float:
        return 1.0 - float(self.p_h0)


class PowerPolicy(Enum):
    """How per-user uplink powers are chosen."""

    UNIFORM_FROM_HARVEST = "uniform_from_harvest"
    EXPLICIT = "explicit"


class ObjectiveKind(Enum):
    """The four throughput objectives a sweep or optimizer can target."""

    OBTAINABLE = "obtainable"
    OBTAINABLE_PERFECT = "obtainable_perfect"
    STANDARD = "standard"
    STANDARD_WITH_INTERFERENCE = "standard_with_interference"


@dataclass(frozen=True)
class ScenarioConfig:
    """Single input record for sweeps, optimization, and validation."""

    sensing: SensingParams
    network: NomaNetwork
    harvest: HarvestModel
    traffic: TrafficModel
    power_policy: PowerPolicy = PowerPolicy.EXPLICIT

    def __post_init__(self):
        if not isinstance(self.power_policy, PowerPolicy):
            raise DomainError(
                f"power_policy must be a PowerPolicy, got {self.power_policy!r}"
            )

    @property
    def frame_duration(self) -> float:
        return self.sensing.frame_duration


def _as_array(tau: TauLike, frame_duration: float):
    """Validate tau in (0, T) elementwise; return (array, was_scalar)."""
    arr = np.asarray(tau, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.isfinite(arr).all() or (arr <= 0).any() or (arr >= frame_duration).any():
        raise DomainError(f"tau must lie in (0, {frame_duration}), got {tau!r}")
    return arr, scalar


def _interference_decay(gap, holding_time):
    """(holding/gap) * (1 - exp(-gap/holding)), computed stably."""
    ratio = gap / holding_time
    return -np.expm1(-ratio) / ratio


def interference_prob_perfect(
    tau: TauLike, frame_duration: float, beta: float
) -> Union[Probability, np.ndarray]:
    """Probability the license holder returns during the transmit slot.

    1 - (beta / (T - tau)) * (1 - exp(-(T - tau)/beta)): approaches 0 as
    tau grows toward T (shorter exposure) and 1 as the transmit slot gets
    long relative to the holding time beta.
    """
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be > 0, got {beta!r}")
    if not (math.isfinite(frame_duration) and frame_duration > 0):
        raise DomainError(f"frame_duration must be > 0, got {frame_duration!r}")
    arr, scalar = _as_array(tau, frame_duration)
    out = 1.0 - _interference_decay(frame_duration - arr, beta)
    out = np.clip(out, 0.0, 1.0)
    return Probability(float(out[0])) if scalar else out


def interference_prob_imperfect(
    tau: TauLike, frame_duration: float, alpha: float
) -> Union[Probability, np.ndarray]:
    """Probability a missed detection actually collides with the license
    holder, driven by the mean holding time alpha.

    (alpha / (T - tau)) * (1 - exp(-(T - tau)/alpha)): approaches 1 as
    tau grows toward T and 0 as the transmit slot gets long.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be > 0, got {alpha!r}")
    if not (math.isfinite(frame_duration) and frame_duration > 0):
        raise DomainError(f"frame_duration must be > 0, got {frame_duration!r}")
    arr, scalar = _as_array(tau, frame_duration)
    out = _interference_decay(frame_duration - arr, alpha)
    out = np.clip(out, 0.0, 1.0)
    return Probability(float(out[0])) if scalar else out


def _sum_rates(scenario: ScenarioConfig, tau_arr: np.ndarray):
    """K_n(tau) and K_ns(tau) as arrays (SIC sum rates, per-user form).

    Under the explicit policy both rates are tau-independent and come
    straight from the noma module; under uniform_from_harvest the
    harvested transmit power is split evenly, so the rates grow with tau.
    """
    net = scenario.network
    if scenario.power_policy is PowerPolicy.EXPLICIT:
        kn = noma.throughput_pu_absent(net)
        kns = noma.throughput_pu_present(net)
        return np.full_like(tau_arr, kn), np.full_like(tau_arr, kns)
    T = scenario.frame_duration
    denom = net.noise_density * net.bandwidth
    share = tau_arr * scenario.harvest.bs_power / (T - tau_arr) / net.n_users
    pg = [share * (u.channel_gain / denom) for u in net.users]
    ipu = net.pu_interference
    kn = np.zeros_like(tau_arr)
    kns = np.zeros_like(tau_arr)
    tail = np.zeros_like(tau_arr)
    for g in reversed(pg):
        kn = kn + np.log2(1.0 + g / (1.0 + tail))
        kns = kns + np.log2(1.0 + g / (1.0 + ipu + tail))
        tail = tail + g
    return net.bandwidth * kn, net.bandwidth * kns


def r0(tau: TauLike, scenario: ScenarioConfig) -> Union[float, np.ndarray]:
    """Idle-channel throughput component.

    ((T - tau)/T) * (1 - p_f(tau)) * P(idle) * K_n, with p_f tied to the
    scenario's detection target and K_n given by the power policy.
    """
    s = scenario.sensing
    arr, scalar = _as_array(tau, s.frame_duration)
    pf = pf_from_pd(s.target_pd, s.pu_snr, arr, s.sample_rate)
    kn, _ = _sum_rates(scenario, arr)
    out = (
        (s.frame_duration - arr)
        / s.frame_duration
        * (1.0 - pf)
        * float(scenario.traffic.p_h0)
        * kn
    )
    return float(out[0]) if scalar else out


def r0p(tau: TauLike, scenario: ScenarioConfig) -> Union[float, np.ndarray]:
    """Idle-channel throughput discounted by the probability the license
    holder returns mid-transmission: r0 * (1 - P_p)."""
    s = scenario.sensing
    arr, scalar = _as_array(tau, s.frame_duration)
    base = r0(arr, scenario)
    pp = interference_prob_perfect(arr, s.frame_duration, scenario.traffic.beta)
    out = base * (1.0 - pp)
    return float(out[0]) if scalar else out


def r1(tau: TauLike, scenario: ScenarioConfig) -> Union[float, np.ndarray]:
    """Missed-detection throughput component.

    ((T - tau)/T) * (1 - p_d) * P(busy) * K_ns with p_d held at the
    detection target and K_ns the interference-limited sum rate.
    """
    s = scenario.sensing
    arr, scalar = _as_array(tau, s.frame_duration)
    _, kns = _sum_rates(scenario, arr)
    out = (
        (s.frame_duration - arr)
        / s.frame_duration
        * (1.0 - float(s.target_pd))
        * scenario.traffic.p_h1
        * kns
    )
    return float(out[0]) if scalar else out


def r1pip(tau: TauLike, scenario: ScenarioConfig) -> Union[float, np.ndarray]:
    """Missed-detection throughput discounted by the collision probability
    under imperfect sensing: r1 * (1 - P_ip)."""
    s = scenario.sensing
    arr, scalar = _as_array(tau, s.frame_duration)
    base = r1(arr, scenario)
    pip = interference_prob_imperfect(arr, s.frame_duration, scenario.traffic.alpha)
    out = base * (1.0 - pip)
    return float(out[0]) if scalar else out


def objective_value(
    kind: ObjectiveKind, tau: TauLike, scenario: ScenarioConfig
) -> Union[float, np.ndarray]:
    """Evaluate one of the four composite objectives at tau.

    obtainable -> r0; obtainable_perfect -> r0p; standard -> r0 + r1;
    standard_with_interference -> r0p + r1pip. The sums are formed from
    the component values themselves, so additivity is exact.
    """
    if kind is ObjectiveKind.OBTAINABLE:
        return r0(tau, scenario)
    if kind is ObjectiveKind.OBTAINABLE_PERFECT:
        return r0p(tau, scenario)
    if kind is ObjectiveKind.STANDARD:
        s = scenario.sensing
        arr, scalar = _as_array(tau, s.frame_duration)
        out = r0(arr, scenario) + r1(arr, scenario)
        return float(out[0]) if scalar else out
    if kind is ObjectiveKind.STANDARD_WITH_INTERFERENCE:
        s = scenario.sensing
        arr, scalar = _as_array(tau, s.frame_duration)
        out = r0p(arr, scenario) + r1pip(arr, scenario)
        return float(out[0]) if scalar else out
    raise DomainError(f"unknown objective kind {kind!r}")
