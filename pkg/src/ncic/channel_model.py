"""Channel parameterization for the symmetric 2-user block-fading interference channel.

Links are Rayleigh: ``g11, g22 ~ CN(0, snr)`` and ``g12, g21 ~ CN(0, inr)``,
constant over a block of ``coherence`` symbols and independent across blocks.
Neither end knows the realizations.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

#: Draws per RNG substream.  Part of the reproducibility contract: changing it
#: changes every Monte-Carlo result for a given seed.
DEFAULT_CHUNK_SIZE = 2**17


@dataclass(frozen=True)
class ChannelConfig:
    """Symmetric channel statistics.

    Attributes
    ----------
    snr : float
        Direct-link variance ``E|g11|^2 = E|g22|^2`` (linear).
    inr : float
        Cross-link variance ``E|g12|^2 = E|g21|^2`` (linear).
    alpha : float
        Interference level ``log(inr) / log(snr)``.
    coherence : int
        Symbols per fading block, ``T >= 2``.
    link_gain : float
        Multiplier already folded into ``snr`` and ``inr``; kept for reporting.
    """

    snr: float
    inr: float
    alpha: float
    coherence: int
    link_gain: float = 1.0

    def __post_init__(self):
        if int(self.coherence) != self.coherence or self.coherence < 2:
            raise ValueError(f"coherence must be an integer >= 2, got {self.coherence!r}")
        for name in ("snr", "inr"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        if not self.link_gain > 0:
            raise ValueError(f"link_gain must be positive, got {self.link_gain!r}")

    @classmethod
    def from_snr_alpha(cls, snr: float, alpha: float, coherence: int,
                       link_gain: float = 1.0) -> "ChannelConfig":
        """Build a config with ``inr = snr ** alpha``.

        ``alpha`` in {0, 1} is accepted for any positive ``snr``; otherwise
        ``snr > 1`` is required so the log-ratio defining ``alpha`` makes sense.
        """
        if not (math.isfinite(snr) and snr > 0):
            raise ValueError(f"snr must be finite and positive, got {snr!r}")
        if alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {alpha!r}")
        if alpha == 1:
            inr = snr
        elif alpha == 0:
            inr = 1.0
        else:
            if snr <= 1:
                raise ValueError(
                    f"snr must exceed 1 when alpha={alpha} (alpha = log inr / log snr), "
                    f"got snr={snr!r}")
            inr = snr**alpha
        return cls(snr=snr, inr=inr, alpha=alpha, coherence=coherence, link_gain=link_gain)


def config_from_db(snr_db: float, alpha: float, coherence: int,
                   link_gain: float = 1.0) -> ChannelConfig:
    """Config from a transmit SNR in dB.

    Every link variance is scaled by `link_gain`, so the effective direct-link
    SNR is ``link_gain * 10**(snr_db/10)`` and ``inr = snr**alpha``.

    >>> cfg = config_from_db(16, 1.0, 5, link_gain=0.1)
    >>> round(cfg.snr, 5), cfg.inr == cfg.snr
    (3.98107, True)
    """
    if int(coherence) != coherence or coherence < 2:
        raise ValueError(f"coherence must be an integer >= 2, got {coherence!r}")
    if not link_gain > 0:
        raise ValueError(f"link_gain must be positive, got {link_gain!r}")
    snr = link_gain * 10.0 ** (snr_db / 10.0)
    return ChannelConfig.from_snr_alpha(snr, alpha, coherence, link_gain=link_gain)


class Regime(enum.Enum):
    WEAK = "weak"
    MODERATE = "moderate"
    STRONG = "strong"


def regime_of(alpha: float) -> Regime:
    """Interference regime; both boundaries 1/2 and 1 belong to MODERATE."""
    if not alpha >= 0:
        raise ValueError(f"alpha must be >= 0, got {alpha!r}")
    if alpha < 0.5:
        return Regime.WEAK
    if alpha <= 1.0:
        return Regime.MODERATE
    return Regime.STRONG


@dataclass(frozen=True)
class MmseModel:
    """Single-pilot MMSE channel estimates and the resulting effective noise.

    Each link ``g ~ CN(0, v)`` is estimated from ``y = g + z`` as
    ``g_hat = v/(1+v) * y``, so ``g_hat ~ CN(0, v^2/(1+v))`` and the residual
    error has variance ``v/(1+v)``.
    """

    est_gain_direct: float
    est_gain_cross: float
    est_var_direct: float
    est_var_cross: float
    noise_rs: float
    noise_tdm: float
    lambda_p: float

    @property
    def lambda_c(self) -> float:
        return 1.0 - self.lambda_p

    @property
    def residual_var_direct(self) -> float:
        return self.est_gain_direct

    @property
    def residual_var_cross(self) -> float:
        return self.est_gain_cross


def mmse_model(config: ChannelConfig) -> MmseModel:
    snr, inr = config.snr, config.inr
    k_direct = snr / (1.0 + snr)
    k_cross = inr / (1.0 + inr)
    return MmseModel(
        est_gain_direct=k_direct,
        est_gain_cross=k_cross,
        est_var_direct=snr * k_direct,
        est_var_cross=inr * k_cross,
        # residual error of both incoming links adds to unit noise
        noise_rs=k_direct + k_cross + 1.0,
        noise_tdm=k_direct + 1.0,
        lambda_p=min(1.0 / inr, 1.0),
    )


@dataclass(frozen=True)
class LinkDraw:
    """Squared link magnitudes for a batch of independent fading blocks."""

    g11_sq: np.ndarray
    g21_sq: np.ndarray
    g22_sq: np.ndarray
    g12_sq: np.ndarray

    def __len__(self):
        return len(self.g11_sq)


def _chunk_generator(seed: int, index: int) -> np.random.Generator:
    # spawn_key makes chunk i's stream independent of how many chunks exist
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _chunk_sizes(n: int, chunk_size: int) -> list[int]:
    full, rest = divmod(n, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def unit_exponentials(seed: int, n: int, k: int, *, chunk_size: int = DEFAULT_CHUNK_SIZE,
                      workers: int = 1) -> np.ndarray:
    """``(n, k)`` array of unit-mean exponential draws.

    Row blocks of `chunk_size` come from independent substreams of `seed`, so
    the result depends only on ``(seed, n, k, chunk_size)``, never on `workers`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k!r}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size!r}")
    sizes = _chunk_sizes(n, chunk_size)

    def draw(i):
        return _chunk_generator(seed, i).standard_exponential((sizes[i], k))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(draw, range(len(sizes))))
    else:
        blocks = [draw(i) for i in range(len(sizes))]
    return np.concatenate(blocks, axis=0)


def sample_links(config: ChannelConfig, seed: int, n: int, *,
                 chunk_size: int = DEFAULT_CHUNK_SIZE) -> Iterator[LinkDraw]:
    """Yield `n` fading-block draws as `LinkDraw` batches of at most `chunk_size`."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    scale = np.array([config.snr, config.inr, config.snr, config.inr])
    for i, size in enumerate(_chunk_sizes(n, chunk_size)):
        xi = _chunk_generator(seed, i).standard_exponential((size, 4)) * scale
        yield LinkDraw(g11_sq=xi[:, 0], g21_sq=xi[:, 1], g22_sq=xi[:, 2], g12_sq=xi[:, 3])
