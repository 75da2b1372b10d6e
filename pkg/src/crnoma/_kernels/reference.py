"""Vectorized numpy implementation of the detection-trial kernel.

Random-stream contract (shared bit for bit with the compiled kernel):

    k0          = mix64(seed ^ SALT)
    k1          = mix64(k0 + G * (hyp + 1))
    base(trial) = mix64(k1 + G * (trial + 1))
    word(n)     = mix64(base + G * n)            n = 0, 1, ...
    uniform     = ((word >> 11) + 0.5) * 2**-53  in (0, 1)

where mix64 is the splitmix64 finalizer and G its golden-gamma constant.
Each received sample consumes exactly two words, turned into two normals
by the Box-Muller transform, so trial (seed, hyp, i) is a self-contained
substream: results are independent of chunking, execution order, and any
partitioning of trials across workers.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_SALT = np.uint64(0xD1B54A32D192ED03)
_SHIFT11 = np.uint64(11)
_TWO_NEG53 = 1.0 / 9007199254740992.0
_TWO_PI = 6.283185307179586

# Upper bound on words materialized per chunk (memory control only; the
# output is invariant to this value).
_CHUNK_WORDS = 2_000_000


def _mix64(z):
    """splitmix64 finalizer, elementwise on uint64 (wrapping arithmetic)."""
    z = z ^ (z >> np.uint64(30))
    z = z * _M1
    z = z ^ (z >> np.uint64(27))
    z = z * _M2
    return z ^ (z >> np.uint64(31))


def _stream_key(seed: int, hyp: int) -> np.uint64:
    with np.errstate(over="ignore"):
        k0 = _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) ^ _SALT)
        return _mix64(k0 + _GOLDEN * np.uint64(hyp + 1))


def words(seed: int, hyp: int, trial_index: int, count: int) -> np.ndarray:
    """Raw uint64 word stream of one trial substream (test hook)."""
    with np.errstate(over="ignore"):
        k1 = _stream_key(seed, hyp)
        base = _mix64(k1 + _GOLDEN * np.uint64(trial_index + 1))
        n = np.arange(count, dtype=np.uint64)
        return _mix64(base + _GOLDEN * n)


def trial_energies(
    seed: int,
    hyp: int,
    trial_start: int,
    n_trials: int,
    m: int,
    var_a: float,
    var_b: float,
) -> np.ndarray:
    """Per-trial averaged sample energies.

    Each trial draws m complex samples with independent real/imaginary
    parts of variance var_a and var_b and returns the mean of their
    squared magnitudes, i.e. mean(var_a*z0_j**2 + var_b*z1_j**2) over m
    standard-normal pairs (z0_j, z1_j).
    """
    if n_trials < 0 or m < 1:
        raise ValueError("n_trials must be >= 0 and m >= 1")
    out = np.empty(n_trials, dtype=np.float64)
    if n_trials == 0:
        return out
    with np.errstate(over="ignore"):
        k1 = _stream_key(seed, hyp)
        offsets = _GOLDEN * np.arange(2 * m, dtype=np.uint64)
        chunk = max(1, _CHUNK_WORDS // (2 * m))
        for s in range(0, n_trials, chunk):
            e = min(s + chunk, n_trials)
            idx = np.arange(trial_start + s, trial_start + e, dtype=np.uint64)
            bases = _mix64(k1 + _GOLDEN * (idx + np.uint64(1)))
            w = _mix64(bases[:, None] + offsets[None, :])
            u = ((w >> _SHIFT11).astype(np.float64) + 0.5) * _TWO_NEG53
            r = np.sqrt(-2.0 * np.log(u[:, 0::2]))
            c = _TWO_PI * u[:, 1::2]
            z0 = r * np.cos(c)
            z1 = r * np.sin(c)
            energy = var_a * z0 * z0 + var_b * z1 * z1
            out[s:e] = energy.sum(axis=1) / m
    return out
