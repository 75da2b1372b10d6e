import numpy as np
import pytest

from crnoma import (
    HarvestModel,
    NomaNetwork,
    NomaUser,
    PowerPolicy,
    ScenarioConfig,
    SensingParams,
    TrafficModel,
    default_scenario,
)


@pytest.fixture
def scenario():
    return default_scenario()


def random_scenario(rng: np.random.Generator) -> ScenarioConfig:
    """A randomized but well-formed scenario for property tests."""
    n_users = int(rng.integers(1, 5))
    gains = np.sort(rng.uniform(0.2, 5.0, n_users))[::-1]
    # nudge any accidental near-ties apart to keep the ordering strict
    for i in range(1, n_users):
        if gains[i] >= gains[i - 1]:
            gains[i] = gains[i - 1] * 0.9
    users = tuple(
        NomaUser(channel_gain=float(g), power=float(rng.uniform(0.1, 3.0)))
        for g in gains
    )
    T = float(rng.uniform(0.5, 2.0))
    policy = PowerPolicy.EXPLICIT if rng.random() < 0.5 else PowerPolicy.UNIFORM_FROM_HARVEST
    return ScenarioConfig(
        sensing=SensingParams(
            pu_snr=float(rng.uniform(0.01, 0.3)),
            noise_variance=float(rng.uniform(0.5, 2.0)),
            sample_rate=float(rng.uniform(200.0, 5000.0)),
            frame_duration=T,
            target_pd=float(rng.uniform(0.8, 0.99)),
        ),
        network=NomaNetwork(
            users=users,
            bandwidth=float(rng.uniform(0.5, 3.0)),
            noise_density=float(rng.uniform(0.5, 2.0)),
            pu_interference=float(rng.uniform(0.0, 2.0)),
        ),
        harvest=HarvestModel(bs_power=float(rng.uniform(0.5, 2.0))),
        traffic=TrafficModel(
            p_h0=float(rng.uniform(0.5, 0.95)),
            alpha=float(rng.uniform(0.05, 2.0)),
            beta=float(rng.uniform(0.05, 2.0)),
        ),
        power_policy=policy,
    )
