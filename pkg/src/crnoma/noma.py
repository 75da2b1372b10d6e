"""Harvest-then-transmit power model and uplink NOMA SIC throughput."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError

__all__ = [
    "NomaUser",
    "NomaNetwork",
    "HarvestModel",
    "harvested_energy",
    "uplink_transmit_power",
    "user_snr",
    "throughput_pu_absent",
    "throughput_pu_present",
]

ORDERING_RULE = "h_1 > h_2 > ... > h_n"


@dataclass(frozen=True)
class NomaUser:
    """One uplink user: channel power gain h_n and transmit power P_n."""

    channel_gain: float
    power: float

    def __post_init__(self):
        if not (math.isfinite(self.channel_gain) and self.channel_gain > 0):
            raise DomainError(f"channel_gain must be > 0, got {self.channel_gain!r}")
        if not (math.isfinite(self.power) and self.power >= 0):
            raise DomainError(f"power must be >= 0, got {self.power!r}")


@dataclass(frozen=True)
class NomaNetwork:
    """Ordered user set (strongest channel first) plus shared radio constants.

    Users are sorted by descending channel_gain on construction; equal
    gains are rejected because the SIC decoding order would be ambiguous.
    pu_interference is the already-normalized interference power the
    licensed transmitter adds at the receiver (same normalization as
    P_n * gamma_n).
    """

    users: tuple
    bandwidth: float
    noise_density: float
    pu_interference: float = 0.0

    def __post_init__(self):
        users = tuple(self.users)
        if len(users) < 1:
            raise DomainError("network requires at least one user")
        for u in users:
            if not isinstance(u, NomaUser):
                raise DomainError(f"users must be NomaUser, got {u!r}")
        ordered = tuple(sorted(users, key=lambda u: -u.channel_gain))
        gains = [u.channel_gain for u in ordered]
        if any(a <= b for a, b in zip(gains, gains[1:])):
            raise DomainError(
                f"channel gains must be strictly ordered {ORDERING_RULE}, got {gains}"
            )
        object.__setattr__(self, "users", ordered)
        if not (math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise DomainError(f"bandwidth must be > 0, got {self.bandwidth!r}")
        if not (math.isfinite(self.noise_density) and self.noise_density > 0):
            raise DomainError(f"noise_density must be > 0, got {self.noise_density!r}")
        if not (math.isfinite(self.pu_interference) and self.pu_interference >= 0):
            raise DomainError(
                f"pu_interference must be >= 0, got {self.pu_interference!r}"
            )

    @property
    def n_users(self) -> int:
        return len(self.users)

    def normalized_gain(self, n: int) -> float:
        """gamma_n = h_n / (N_0 W) for 1-based user index n."""
        if not 1 <= n <= len(self.users):
            raise DomainError(f"user index {n} out of range 1..{len(self.users)}")
        return self.users[n - 1].channel_gain / (self.noise_density * self.bandwidth)

    def weighted_powers(self) -> tuple:
        """P_n * gamma_n for every user, in decoding order."""
        d = self.noise_density * self.bandwidth
        return tuple(u.power * u.channel_gain / d for u in self.users)


@dataclass(frozen=True)
class HarvestModel:
    """Downlink energy source: base-station broadcast power P_bs in watts."""

    bs_power: float

    def __post_init__(self):
        if not (math.isfinite(self.bs_power) and self.bs_power > 0):
            raise DomainError(f"bs_power must be > 0, got {self.bs_power!r}")


def harvested_energy(model: HarvestModel, tau: float) -> float:
    """Energy collected during a harvest slot of length tau: tau * P_bs."""
    if not (math.isfinite(tau) and tau >= 0):
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    return tau * model.bs_power


def uplink_transmit_power(model: HarvestModel, tau: float, frame_duration: float) -> float:
    """Transmit power when the harvest tau*P_bs is spent over (T - tau).

    Diverges as tau approaches the frame duration.
    """
    if not (math.isfinite(frame_duration) and frame_duration > 0):
        raise DomainError(f"frame_duration must be > 0, got {frame_duration!r}")
    if not (math.isfinite(tau) and 0 <= tau < frame_duration):
        raise DomainError(f"tau must lie in [0, {frame_duration}), got {tau!r}")
    return tau * model.bs_power / (frame_duration - tau)


def user_snr(network: NomaNetwork, n: int) -> float:
    """Post-SIC SNR of 1-based user n.

    P_n gamma_n / (1 + sum_{j>n} P_j gamma_j): users decoded later appear
    as interference, the last user sees only noise.
    """
    pg = network.weighted_powers()
    if not 1 <= n <= len(pg):
        raise DomainError(f"user index {n} out of range 1..{len(pg)}")
    tail = sum(pg[n:])
    return pg[n - 1] / (1.0 + tail)


def throughput_pu_absent(network: NomaNetwork) -> float:
    """Sum rate K_n = W * sum_n log2(1 + SNR_n) with SIC decoding."""
    total = 0.0
    for n in range(1, network.n_users + 1):
        total += math.log2(1.0 + user_snr(network, n))
    return network.bandwidth * total


def throughput_pu_present(network: NomaNetwork) -> float:
    """Sum rate K_ns when the licensed transmitter interferes.

    Each denominator gains the normalized interference power on top of
    the unit noise term, so pu_interference = 0 reduces exactly to
    :func:`throughput_pu_absent`.
    """
    pg = network.weighted_powers()
    ipu = network.pu_interference
    total = 0.0
    for n in range(1, len(pg) + 1):
        tail = sum(pg[n:])
        total += math.log2(1.0 + pg[n - 1] / (1.0 + ipu + tail))
    return network.bandwidth * total
