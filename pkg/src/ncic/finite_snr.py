"""Finite-SNR achievable rates: expected-log terms and the training-based pipelines.

The rate formulas average ``log2`` of noise plus exponentially distributed
channel gains.  Sums of several independent gains are evaluated by
Monte-Carlo; the single-gain case also has an exact closed form through the
exponential integral E1, used to validate the sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel_model import (DEFAULT_CHUNK_SIZE, ChannelConfig, config_from_db, mmse_model,
                            unit_exponentials)
from .gdof_schemes import postfm_region, term_bounds
from .polytope import Region2D

EULER_GAMMA = 0.57721566490153286061
LOG2_E = 1.0 / math.log(2.0)
DEFAULT_SAMPLES = 10**6


@dataclass(frozen=True)
class ExpectedLogSpec:
    """``E[log2(offset + sum_i coef_i * mean_i * xi_i)]`` with ``xi_i`` iid unit exponentials."""

    offset: float
    components: tuple[tuple[float, float], ...]

    def __post_init__(self):
        comps = tuple((float(b), float(mu)) for b, mu in self.components)
        object.__setattr__(self, "components", comps)
        if not (math.isfinite(self.offset) and self.offset >= 0):
            raise ValueError(f"offset must be finite and >= 0, got {self.offset!r}")
        for b, mu in comps:
            if not (b >= 0 and mu >= 0 and math.isfinite(b) and math.isfinite(mu)):
                raise ValueError(f"component (coef={b!r}, mean={mu!r}) must be finite and >= 0")
        if self.offset == 0 and not any(b * mu > 0 for b, mu in comps):
            raise ValueError("offset 0 needs at least one component with coef*mean > 0")

    @property
    def scales(self) -> np.ndarray:
        return np.array([b * mu for b, mu in self.components], dtype=float)


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int
    seed: int


def _estimate(per_sample: np.ndarray, seed: int, factor: float = 1.0) -> McEstimate:
    n = per_sample.size
    stderr = float(per_sample.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McEstimate(factor * float(per_sample.mean()), abs(factor) * stderr, n, seed)


def _check_samples(samples: int) -> None:
    if int(samples) != samples or samples < 1000:
        raise ValueError(f"samples must be an integer >= 1000, got {samples!r}")


def expected_log_mc(spec: ExpectedLogSpec, samples: int = DEFAULT_SAMPLES, seed: int = 0, *,
                    chunk_size: int = DEFAULT_CHUNK_SIZE, workers: int = 1) -> McEstimate:
    """Monte-Carlo estimate of the expectation described by `spec`, in bits."""
    _check_samples(samples)
    if not spec.components:
        return McEstimate(math.log2(spec.offset), 0.0, samples, seed)
    xi = unit_exponentials(seed, samples, len(spec.components), chunk_size=chunk_size,
                           workers=workers)
    return _estimate(np.log2(spec.offset + xi @ spec.scales), seed)


def exp_integral_e1(x: float) -> float:
    """Exponential integral ``E1(x) = int_x^inf exp(-t)/t dt`` for ``x > 0``.

    Power series below 1, modified Lentz continued fraction above.
    """
    if not x > 0:
        raise ValueError(f"E1 needs x > 0, got {x!r}")
    if x <= 1.0:
        # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        total, term = 0.0, 1.0
        for k in range(1, 200):
            term *= -x / k
            contrib = term / k
            total += contrib
            if abs(contrib) < 1e-17 * abs(total):
                break
        return -EULER_GAMMA - math.log(x) - total
    # E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def expected_log_closed(a: float, b: float, mean: float) -> float:
    """Exact ``E[log2(a + b*xi)]`` for ``xi`` exponential with the given mean.

    Uses ``E[ln(a + s*xi')] = ln a + exp(a/s) E1(a/s)`` with ``s = b*mean``;
    at ``a = 0`` it reduces to ``log2(s) - gamma*log2(e)``.
    """
    if a < 0 or b < 0 or mean < 0:
        raise ValueError(f"inputs must be nonnegative, got a={a!r}, b={b!r}, mean={mean!r}")
    s = b * mean
    if s == 0:
        if a == 0:
            raise ValueError("a = 0 and b*mean = 0: log of zero")
        return math.log2(a)
    if a == 0:
        return math.log2(s) - EULER_GAMMA * LOG2_E
    z = a / s
    if z > 700:
        # exp(z) E1(z) ~ 1/z (1 - 1/z + 2/z^2 - ...), avoids overflow
        series = (1 - 1 / z + 2 / z**2 - 6 / z**3 + 24 / z**4) / z
        return (math.log(a) + series) * LOG2_E
    return (math.log(a) + math.exp(z) * exp_integral_e1(z)) * LOG2_E


def jensen_bracket(a: float, b: float, mean: float) -> tuple[float, float]:
    """Jensen bracket ``log2(a + b*mean) - gamma*log2(e) <= E[log2(a + b*xi)] <= log2(a + b*mean)``."""
    if a < 0 or not b * mean > 0:
        raise ValueError(f"need a >= 0 and b*mean > 0, got a={a!r}, b={b!r}, mean={mean!r}")
    hi = math.log2(a + b * mean)
    return hi - EULER_GAMMA * LOG2_E, hi


def rate_tdm(config: ChannelConfig, samples: int = DEFAULT_SAMPLES, seed: int = 0, *,
             chunk_size: int = DEFAULT_CHUNK_SIZE, workers: int = 1) -> McEstimate:
    """Per-user rate of time division with one pilot per block and MMSE estimation.

    ``R = (1/2)(1 - 1/T) E[log2(1 + |g11_hat|^2 / N_tdm)]``.
    """
    _check_samples(samples)
    m = mmse_model(config)
    xi = unit_exponentials(seed, samples, 1, chunk_size=chunk_size, workers=workers)[:, 0]
    per_sample = np.log2(1.0 + m.est_var_direct * xi / m.noise_tdm)
    return _estimate(per_sample, seed, 0.5 * (1 - 1 / config.coherence))


def training_rs_bounds(config: ChannelConfig, samples: int = DEFAULT_SAMPLES, seed: int = 0, *,
                       triple_bound: str = "consistent", chunk_size: int = DEFAULT_CHUNK_SIZE,
                       workers: int = 1) -> dict[str, McEstimate]:
    """Per-user symmetric-rate limits of the two-pilot rate-splitting scheme, before ``min``.

    Returns estimates for the four constraints, each already divided by its
    rate multiplicity and multiplied by ``(1 - 2/T)``:

    ``single``  ``R <= A - r'``
    ``sum_a``   ``2R <= E log(N + g11 + g21) + E log(N + l g11 + l g21) - 2r'``
    ``sum_b``   ``2R <= 2 (E log(N + l g11 + g21) - r')``
    ``triple``  ``3R <= Tr - 3r'``

    where ``g`` stands for MMSE-estimate gains, ``l`` for the private power
    fraction and ``r' = E log(N + l g21)``.  With
    ``triple_bound="consistent"`` (default) ``Tr`` is ``E log(N + g11 + g21) +
    E log(N + l g11 + l g21) + E log(N + l g11 + g21)``, matching the
    ``2R1 + R2`` row of the rate-splitting region term by term.  With
    ``"printed"`` the last term is replaced by a second
    ``E log(N + l g11 + l g21)``.

    All expectations share one set of draws per seed (common random numbers).
    """
    if triple_bound not in ("consistent", "printed"):
        raise ValueError(f"triple_bound must be 'consistent' or 'printed', got {triple_bound!r}")
    _check_samples(samples)
    m = mmse_model(config)
    lam = m.lambda_p
    xi = unit_exponentials(seed, samples, 2, chunk_size=chunk_size, workers=workers)
    g11 = m.est_var_direct * xi[:, 0]
    g21 = m.est_var_cross * xi[:, 1]
    N = m.noise_rs
    r_prime = np.log2(N + lam * g21)
    full = np.log2(N + g11 + g21)
    both_private = np.log2(N + lam * g11 + lam * g21)
    cross_common = np.log2(N + lam * g11 + g21)
    if triple_bound == "consistent":
        triple = full + both_private + cross_common - 3 * r_prime
    else:
        triple = full + 2 * both_private - 3 * r_prime
    f = 1 - 2 / config.coherence
    return {
        "single": _estimate(np.log2(N + g11 + lam * g21) - r_prime, seed, f),
        "sum_a": _estimate(full + both_private - 2 * r_prime, seed, f / 2),
        "sum_b": _estimate(cross_common - r_prime, seed, f),
        "triple": _estimate(triple, seed, f / 3),
    }


def rate_training_rs(config: ChannelConfig, samples: int = DEFAULT_SAMPLES, seed: int = 0, *,
                     triple_bound: str = "consistent", chunk_size: int = DEFAULT_CHUNK_SIZE,
                     workers: int = 1) -> McEstimate:
    """Symmetric rate of two-pilot training followed by coherent rate-splitting.

    The minimum of the four limits from `training_rs_bounds`; its standard
    error is that of the binding limit.  ``T = 2`` leaves no data symbols
    and gives exactly 0.
    """
    if config.coherence == 2:
        _check_samples(samples)
        return McEstimate(0.0, 0.0, samples, seed)
    limits = training_rs_bounds(config, samples, seed, triple_bound=triple_bound,
                                chunk_size=chunk_size, workers=workers)
    return min(limits.values(), key=lambda est: est.value)


def finite_snr_region_rs(config: ChannelConfig, feedback: bool, *,
                         split_bounds: bool = False) -> Region2D:
    """Noncoherent rate-splitting region in bits per symbol, from the closed-form term bounds."""
    bounds = term_bounds(config.snr, config.inr, config.coherence)
    return postfm_region(bounds, feedback, config.coherence, split_bounds=split_bounds)


def scale_region(region: Region2D, factor: float) -> Region2D:
    """``{factor * x : x in region}`` for ``factor > 0``."""
    if not factor > 0:
        raise ValueError(f"factor must be positive, got {factor!r}")
    return Region2D(tuple((a, b, c * factor) for a, b, c in region.rows), region.label)


def rate_table(snr_db_list: Sequence[float], alpha: float, coherence: int, link_gain: float,
               samples: int = DEFAULT_SAMPLES, seed: int = 0,
               schemes: Sequence[str] = ("train", "tdm")) -> list[tuple[float, str, McEstimate]]:
    """``(snr_db, scheme, estimate)`` rows for the training and TDM pipelines."""
    out = []
    for db in snr_db_list:
        cfg = config_from_db(db, alpha, coherence, link_gain)
        for scheme in schemes:
            if scheme == "tdm":
                est = rate_tdm(cfg, samples, seed)
            elif scheme == "train":
                est = rate_training_rs(cfg, samples, seed)
            else:
                raise ValueError(f"unknown rate scheme {scheme!r}; expected 'train' or 'tdm'")
            out.append((float(db), scheme, est))
    return out
