"""Energy-detection analytics and a Monte-Carlo detector oracle.

The detector averages the squared magnitudes of M received samples and
compares the result against a threshold. Analytics use the Gaussian
approximation of that test statistic with the complex-signal variance
convention: the statistic has mean sigma_u^2 and variance sigma_u^4 / M
when only noise is present, and mean (1 + gamma) sigma_u^2 with variance
(1 + 2 gamma) sigma_u^4 / M when the licensed transmitter is active
(gamma is its SNR). Under this convention the threshold route and the
closed form linking the false-alarm rate to the detection target are the
same map, which the tests pin down.

Two routes coexist deliberately:

* threshold-based maps and the simulator use the integer sample count
  M = floor(tau * f_s);
* the closed forms ``pf_from_pd`` / ``pd_from_pf`` keep tau * f_s
  continuous so that sweep objectives stay smooth in tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .errors import DomainError
from .statmath import Probability, q, q_inv

__all__ = [
    "SensingParams",
    "DetectionOutcome",
    "num_samples",
    "pf_from_threshold",
    "pd_from_threshold",
    "threshold_from_pd",
    "pf_from_pd",
    "pd_from_pf",
    "test_statistic",
    "simulate_detection",
]


@dataclass(frozen=True)
class SensingParams:
    """Energy-detector configuration.

    Attributes
    ----------
    pu_snr : float
        Linear SNR gamma of the licensed transmitter at the detector, >= 0.
    noise_variance : float
        Noise power sigma_u^2 in watts, > 0.
    sample_rate : float
        Sampling frequency f_s in hertz, > 0.
    frame_duration : float
        Frame length T in seconds, > 0; sensing time must lie in (0, T).
    target_pd : Probability
        Detection probability the threshold is tuned to, strictly in (0, 1).
    """

    pu_snr: float
    noise_variance: float
    sample_rate: float
    frame_duration: float
    target_pd: Probability

    def __post_init__(self):
        for name in ("pu_snr", "noise_variance", "sample_rate", "frame_duration"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise DomainError(f"{name} must be a finite number, got {v!r}")
        if self.pu_snr < 0:
            raise DomainError(f"pu_snr must be >= 0, got {self.pu_snr}")
        if self.noise_variance <= 0:
            raise DomainError(
                f"noise_variance must be > 0, got {self.noise_variance}"
            )
        if self.sample_rate <= 0:
            raise DomainError(f"sample_rate must be > 0, got {self.sample_rate}")
        if self.frame_duration <= 0:
            raise DomainError(
                f"frame_duration must be > 0, got {self.frame_duration}"
            )
        pd = self.target_pd
        if not isinstance(pd, Probability):
            try:
                pd = Probability(pd)
            except DomainError:
                raise DomainError(
                    f"target_pd must lie strictly in (0, 1), got {self.target_pd!r}"
                ) from None
            object.__setattr__(self, "target_pd", pd)
        if not 0.0 < float(pd) < 1.0:
            raise DomainError(
                f"target_pd must lie strictly in (0, 1), got {float(pd)}"
            )


@dataclass(frozen=True)
class DetectionOutcome:
    """Empirical detector performance from a Monte-Carlo run."""

    empirical_pf: Probability
    empirical_pd: Probability
    trials: int
    samples_per_trial: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.samples_per_trial < 1:
            raise DomainError(
                f"samples_per_trial must be >= 1, got {self.samples_per_trial}"
            )


def num_samples(tau: float, sample_rate: float) -> int:
    """Number of detector samples M = floor(tau * f_s).

    The floor never claims unsampled time; no epsilon nudging is applied,
    so e.g. (0.3333, 1000) -> 333.
    """
    if not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"tau must be a positive finite number, got {tau!r}")
    if not (math.isfinite(sample_rate) and sample_rate > 0):
        raise DomainError(
            f"sample_rate must be a positive finite number, got {sample_rate!r}"
        )
    m = math.floor(tau * sample_rate)
    if m < 1:
        raise DomainError(
            f"sensing window shorter than one sample: tau*f_s = {tau * sample_rate}"
        )
    return int(m)


def _check_tau_in_frame(params: SensingParams, tau: float) -> None:
    if not (math.isfinite(tau) and 0.0 < tau < params.frame_duration):
        raise DomainError(
            f"tau must lie in (0, {params.frame_duration}), got {tau!r}"
        )


def pf_from_threshold(threshold: float, params: SensingParams, tau: float) -> Probability:
    """False-alarm probability of the detector at a given threshold.

    Q((Y_th - sigma_u^2) * sqrt(M) / sigma_u^2), decreasing in the
    threshold.
    """
    _check_tau_in_frame(params, tau)
    if not math.isfinite(threshold):
        raise DomainError(f"threshold must be finite, got {threshold!r}")
    m = num_samples(tau, params.sample_rate)
    sigma2 = params.noise_variance
    return q((threshold - sigma2) * math.sqrt(m) / sigma2)


def pd_from_threshold(threshold: float, params: SensingParams, tau: float) -> Probability:
    """Detection probability of the detector at a given threshold.

    Q((Y_th - (1 + gamma) sigma_u^2) / (sigma_u^2 sqrt((1 + 2 gamma)/M))),
    decreasing in the threshold and never below the false-alarm rate when
    gamma > 0.
    """
    _check_tau_in_frame(params, tau)
    if not math.isfinite(threshold):
        raise DomainError(f"threshold must be finite, got {threshold!r}")
    m = num_samples(tau, params.sample_rate)
    sigma2 = params.noise_variance
    gamma = params.pu_snr
    scale = sigma2 * math.sqrt((1.0 + 2.0 * gamma) / m)
    return q((threshold - (1.0 + gamma) * sigma2) / scale)


def threshold_from_pd(params: SensingParams, tau: float) -> float:
    """Decision threshold that attains the configured detection target."""
    _check_tau_in_frame(params, tau)
    m = num_samples(tau, params.sample_rate)
    sigma2 = params.noise_variance
    gamma = params.pu_snr
    z = q_inv(params.target_pd)
    return (1.0 + gamma) * sigma2 + sigma2 * math.sqrt((1.0 + 2.0 * gamma) / m) * z


def _validate_open_unit(p, name: str) -> None:
    pf = float(p)
    if math.isnan(pf) or not 0.0 < pf < 1.0:
        if not (pf == 0.0 and getattr(p, "log_value", -math.inf) > -math.inf):
            raise DomainError(f"{name} must lie strictly in (0, 1), got {p!r}")


def pf_from_pd(
    target_pd: Union[float, Probability],
    pu_snr: float,
    tau: Union[float, np.ndarray],
    sample_rate: float,
) -> Union[Probability, np.ndarray]:
    """False-alarm probability at the threshold meeting a detection target.

    Q(sqrt(1 + 2 gamma) * Q^{-1}(p_d) + gamma * sqrt(tau * f_s)) with
    tau * f_s kept continuous. Strictly decreasing in tau for gamma > 0.
    Scalar tau returns a Probability (carrying its log so extreme tails
    stay invertible); an ndarray of tau returns an ndarray.
    """
    _validate_open_unit(target_pd, "target_pd")
    if not (math.isfinite(pu_snr) and pu_snr >= 0):
        raise DomainError(f"pu_snr must be >= 0 and finite, got {pu_snr!r}")
    if not (math.isfinite(sample_rate) and sample_rate > 0):
        raise DomainError(f"sample_rate must be > 0, got {sample_rate!r}")
    z_d = q_inv(target_pd)
    root = math.sqrt(1.0 + 2.0 * pu_snr)
    if isinstance(tau, np.ndarray):
        if not (np.isfinite(tau).all() and (tau > 0).all()):
            raise DomainError("tau values must be positive and finite")
        return q(root * z_d + pu_snr * np.sqrt(tau * sample_rate))
    if not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"tau must be positive and finite, got {tau!r}")
    return q(root * z_d + pu_snr * math.sqrt(tau * sample_rate))


def pd_from_pf(
    target_pf: Union[float, Probability],
    pu_snr: float,
    tau: Union[float, np.ndarray],
    sample_rate: float,
) -> Union[Probability, np.ndarray]:
    """Detection probability at the threshold meeting a false-alarm target.

    Exact functional inverse of :func:`pf_from_pd` at fixed
    (gamma, tau, f_s): Q((Q^{-1}(p_f) - gamma sqrt(tau f_s)) / sqrt(1 + 2 gamma)).
    """
    _validate_open_unit(target_pf, "target_pf")
    if not (math.isfinite(pu_snr) and pu_snr >= 0):
        raise DomainError(f"pu_snr must be >= 0 and finite, got {pu_snr!r}")
    if not (math.isfinite(sample_rate) and sample_rate > 0):
        raise DomainError(f"sample_rate must be > 0, got {sample_rate!r}")
    z_f = q_inv(target_pf)
    root = math.sqrt(1.0 + 2.0 * pu_snr)
    if isinstance(tau, np.ndarray):
        if not (np.isfinite(tau).all() and (tau > 0).all()):
            raise DomainError("tau values must be positive and finite")
        return q((z_f - pu_snr * np.sqrt(tau * sample_rate)) / root)
    if not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"tau must be positive and finite, got {tau!r}")
    return q((z_f - pu_snr * math.sqrt(tau * sample_rate)) / root)


def test_statistic(samples: Sequence[float]) -> float:
    """Averaged sample energy (1/M) sum |y(n)|^2 of a received block."""
    arr = np.asarray(samples)
    if arr.size == 0:
        raise DomainError("test_statistic requires a non-empty sample block")
    return float(np.mean(np.abs(arr) ** 2))


def simulate_detection(
    params: SensingParams,
    tau: float,
    threshold: float,
    trials: int,
    seed: int,
) -> DetectionOutcome:
    """Monte-Carlo estimate of the detector's false-alarm and detection rates.

    Each trial draws M = floor(tau * f_s) received samples and compares
    their averaged energy with the threshold (deciding "occupied" only on
    strict exceedance, so exact ties count as idle). Noise is circularly
    symmetric complex Gaussian with total variance sigma_u^2; under the
    occupied hypothesis a real Gaussian signal of variance
    gamma * sigma_u^2 is added. The two hypotheses use disjoint
    deterministic substreams of ``seed``, and trial i is substream
    (seed, hypothesis, i), so any partitioning of trials reproduces the
    sequential result exactly.
    """
    _check_tau_in_frame(params, tau)
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    if not math.isfinite(threshold):
        raise DomainError(f"threshold must be finite, got {threshold!r}")
    if not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    m = num_samples(tau, params.sample_rate)
    sigma2 = params.noise_variance
    gamma = params.pu_snr
    kern = _kernels.active()
    half = 0.5 * sigma2
    e0 = kern.trial_energies(int(seed), 0, 0, int(trials), m, half, half)
    e1 = kern.trial_energies(
        int(seed), 1, 0, int(trials), m, sigma2 * (gamma + 0.5), half
    )
    n_f = int(np.count_nonzero(e0 > threshold))
    n_d = int(np.count_nonzero(e1 > threshold))
    return DetectionOutcome(
        empirical_pf=Probability(n_f / trials),
        empirical_pd=Probability(n_d / trials),
        trials=int(trials),
        samples_per_trial=m,
        seed=int(seed),
    )
