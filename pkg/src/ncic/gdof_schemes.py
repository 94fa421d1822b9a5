"""Achievable gDoF regions of the noncoherent 2-user interference channel.

Six schemes are covered: noncoherent rate-splitting with and without
feedback, treating interference as noise, time division, and a coherent
scheme that spends two pilot symbols per block (with and without feedback).

The rate-splitting regions come from mutual-information lower bounds that
are closed-form in (SNR, INR, T).  Those bounds are available here both as
finite-SNR values (`term_bound`) and as their high-SNR prelogs
(`prelog_expected`), together with the Han-Kobayashi inequality systems
before and after Fourier-Motzkin elimination.

All rates are per symbol: per-block mutual informations are divided by T.
"""

from __future__ import annotations

import enum
import math
from typing import Callable, Mapping, Sequence

import numpy as np

from .channel_model import Regime, regime_of
from .polytope import IneqSystem, Region2D, symmetric_max


class SchemeId(enum.Enum):
    RS_NOFB = "rs"
    RS_FB = "rs-fb"
    TIN = "tin"
    TDM = "tdm"
    TRAIN_NOFB = "train"
    TRAIN_FB = "train-fb"


class TermId(enum.Enum):
    """Mutual-information terms of the rate-splitting regions (user-1 view + mirrors)."""

    IX1U2_Y1_gU1 = "I(X1,U2;Y1|U1)"
    IX1_Y1_gU1U2 = "I(X1;Y1|U1,U2)"
    IX2U1_Y2 = "I(X2,U1;Y2)"
    IX1_Y1_gU2 = "I(X1;Y1|U2)"
    IX1U2_Y1 = "I(X1,U2;Y1)"
    IU2_Y1_gX1 = "I(U2;Y1|X1)"
    IX2U1_Y2_gU2 = "I(X2,U1;Y2|U2)"
    IX2_Y2_gU1U2 = "I(X2;Y2|U1,U2)"
    IX2_Y2_gU1 = "I(X2;Y2|U1)"
    IU1_Y2_gX2 = "I(U1;Y2|X2)"

    @property
    def mirror(self) -> "TermId":
        return _MIRROR[self]

    @property
    def canonical(self) -> "TermId":
        """The user-1 form of this term (symmetric statistics make them equal)."""
        return _CANONICAL[self]


_MIRROR = {
    TermId.IX1U2_Y1_gU1: TermId.IX2U1_Y2_gU2,
    TermId.IX1_Y1_gU1U2: TermId.IX2_Y2_gU1U2,
    TermId.IX2U1_Y2: TermId.IX1U2_Y1,
    TermId.IX1_Y1_gU2: TermId.IX2_Y2_gU1,
    TermId.IU2_Y1_gX1: TermId.IU1_Y2_gX2,
}
_MIRROR.update({v: k for k, v in list(_MIRROR.items())})

# IX2U1_Y2 is listed among the user-1 terms (it bounds the common rates seen
# at receiver 2 in the no-feedback system); its canonical form is IX1U2_Y1.
_CANONICAL = {t: t for t in (TermId.IX1U2_Y1_gU1, TermId.IX1_Y1_gU1U2, TermId.IX1_Y1_gU2,
                             TermId.IX1U2_Y1, TermId.IU2_Y1_gX1)}
_CANONICAL.update({_MIRROR[t]: t for t in list(_CANONICAL)})

#: map TermId -> bits per block of T symbols
TermBounds = Mapping[TermId, float]

NOFB_TERMS = (TermId.IX1U2_Y1, TermId.IX1_Y1_gU2, TermId.IX1_Y1_gU1U2, TermId.IX1U2_Y1_gU1,
              TermId.IX2U1_Y2, TermId.IX2_Y2_gU1, TermId.IX2_Y2_gU1U2, TermId.IX2U1_Y2_gU2)
FB_TERMS = (TermId.IU2_Y1_gX1, TermId.IX1_Y1_gU1U2, TermId.IX1U2_Y1,
            TermId.IU1_Y2_gX2, TermId.IX2_Y2_gU1U2, TermId.IX2U1_Y2)

RATE_VARS = ("Rc1", "Rp1", "Rc2", "Rp2", "R1", "R2")
SPLIT_VARS = ("Rc1", "Rp1", "Rc2", "Rp2")


def _check(alpha: float, T: int) -> None:
    if int(T) != T or T < 2:
        raise ValueError(f"coherence T must be an integer >= 2, got {T!r}")
    if not (math.isfinite(alpha) and alpha >= 0):
        raise ValueError(f"alpha must be finite and >= 0, got {alpha!r}")


def _region(rows, label: str) -> Region2D:
    # negative rhs with x >= 0 pins the region to the corresponding face
    return Region2D(tuple((a, b, max(c, 0.0)) for a, b, c in rows), label)


def _rs_nofb_rows(alpha: float, T: int, regime: Regime):
    if regime is Regime.WEAK:
        d = (1 - 1 / T) - alpha / T
        return [(1, 0, d), (0, 1, d), (1, 1, 2 * (1 - 1 / T) - 2 * alpha)]
    if regime is Regime.MODERATE:
        c3 = (2 - 3 / T) - alpha / T
        return [(1, 1, (2 - 3 / T) - alpha * (1 - 1 / T)),
                (1, 1, 2 * (1 - 2 / T) * alpha),
                (2, 1, c3), (1, 2, c3)]
    return [(1, 0, 1 - 2 / T), (0, 1, 1 - 2 / T), (1, 1, (1 - 1 / T) * alpha - 1 / T)]


def _rs_fb_rows(alpha: float, T: int, regime: Regime):
    if regime is Regime.WEAK:
        d = (1 - 1 / T) - 2 * alpha / T
        return [(1, 0, d), (0, 1, d), (1, 1, 2 * (1 - 1 / T) - alpha * (1 + 1 / T))]
    if regime is Regime.MODERATE:
        return [(1, 0, 1 - 2 / T), (0, 1, 1 - 2 / T),
                (1, 1, (2 - 3 / T) - alpha * (1 - 1 / T))]
    # only a sum constraint is stated for alpha >= 1
    return [(1, 1, (1 - 1 / T) * alpha - 1 / T)]


def _train_nofb_rows(alpha: float, T: int, regime: Regime):
    f = 1 - 2 / T
    top = max(1.0, alpha)
    weak = max(1 - alpha, 0.0)
    mid = max(1 - alpha, alpha)
    return [(1, 0, f), (0, 1, f),
            (1, 1, f * (top + weak)),
            (1, 1, 2 * f * mid),
            (2, 1, f * (top + mid + weak)),
            (1, 2, f * (top + mid + weak))]


def _train_fb_rows(alpha: float, T: int, regime: Regime):
    f = 1 - 2 / T
    top = max(1.0, alpha)
    return [(1, 0, f * top), (0, 1, f * top), (1, 1, f * (top + max(1 - alpha, 0.0)))]


def _tin_rows(alpha: float, T: int, regime: Regime):
    d = (1 - 1 / T) * (1 - alpha)
    return [(1, 0, d), (0, 1, d)]


def _tdm_rows(alpha: float, T: int, regime: Regime):
    d = 0.5 * (1 - 1 / T)
    return [(1, 0, d), (0, 1, d)]


_ROWS: dict[SchemeId, Callable] = {
    SchemeId.RS_NOFB: _rs_nofb_rows,
    SchemeId.RS_FB: _rs_fb_rows,
    SchemeId.TIN: _tin_rows,
    SchemeId.TDM: _tdm_rows,
    SchemeId.TRAIN_NOFB: _train_nofb_rows,
    SchemeId.TRAIN_FB: _train_fb_rows,
}


def region(scheme: SchemeId | str, alpha: float, T: int, *,
           regime: Regime | None = None) -> Region2D:
    """Achievable gDoF region ``{(d1, d2)}`` of `scheme` at interference level `alpha`.

    Right-hand sides are clamped below at 0, so a region that the formulas
    make infeasible (e.g. rate-splitting at ``T = 2``, TIN at ``alpha > 1``)
    comes back as the origin.  `regime` overrides the regime picked from
    `alpha` (only the rate-splitting schemes are piecewise); it is meant for
    evaluating one-sided limits at the regime boundaries.
    """
    scheme = SchemeId(scheme)
    _check(alpha, T)
    if regime is None:
        regime = regime_of(alpha)
    return _region(_ROWS[scheme](alpha, T, Regime(regime)), f"{scheme.value} alpha={alpha:g} T={T}")


def sym_gdof(scheme: SchemeId | str, alpha: float, T: int) -> float:
    """Symmetric gDoF: largest ``d`` with ``(d, d)`` achievable."""
    return symmetric_max(region(scheme, alpha, T))


def term_bound(term: TermId, snr: float, inr: float, T: int) -> float:
    """Closed-form lower bound on a mutual-information term, in bits per block.

    Parameters
    ----------
    term : TermId
        Which term.  Mirrored (user-2) terms use the same formula as their
        user-1 counterparts.
    snr, inr : float
        Direct and cross link variances (linear, positive).
    T : int
        Coherence time.

    Returns
    -------
    float
        The bound in bits.  It is a high-SNR statement: at low SNR it may be
        loose or even negative.
    """
    if not (snr > 0 and inr > 0 and math.isfinite(snr) and math.isfinite(inr)):
        raise ValueError(f"snr and inr must be finite and positive, got {snr!r}, {inr!r}")
    if int(T) != T or T < 2:
        raise ValueError(f"coherence T must be an integer >= 2, got {T!r}")
    lg = math.log2
    lmin = lg(min(snr, inr))
    t = term.canonical
    if t is TermId.IX1U2_Y1_gU1:
        return (T - 1) * lg(snr / inr + inr) - lmin
    if t is TermId.IX1_Y1_gU1U2:
        return lg(snr / inr + min(snr, inr)) + (T - 2) * lg(1 + snr / inr) - lmin
    if t is TermId.IX1U2_Y1:
        return (T - 1) * lg(snr + inr) - lmin
    if t is TermId.IX1_Y1_gU2:
        return (T - 1) * lg(snr) - lmin
    if t is TermId.IU2_Y1_gX1:
        return (T - 1) * lg(inr) - lmin
    raise AssertionError(t)


def term_bounds(snr: float, inr: float, T: int) -> dict[TermId, float]:
    """All term bounds (both users) at one operating point."""
    return {t: term_bound(t, snr, inr, T) for t in TermId}


# Prelog tables, one column per open interval of alpha: (weak, moderate, strong).
_PRELOG: dict[TermId, tuple[Callable[[float, int], float], ...]] = {
    TermId.IX1U2_Y1_gU1: (lambda a, T: (T - 1) * (1 - a) - a,
                          lambda a, T: (T - 2) * a,
                          lambda a, T: (T - 1) * a - 1),
    TermId.IX1_Y1_gU1U2: (lambda a, T: (T - 1) * (1 - a) - a,
                          lambda a, T: (T - 2) * (1 - a),
                          lambda a, T: 0.0),
    TermId.IX1U2_Y1: (lambda a, T: (T - 1) - a,
                      lambda a, T: (T - 1) - a,
                      lambda a, T: (T - 1) * a - 1),
    TermId.IX1_Y1_gU2: (lambda a, T: (T - 1) - a,
                        lambda a, T: (T - 1) - a,
                        lambda a, T: float(T - 2)),
    TermId.IU2_Y1_gX1: (lambda a, T: (T - 2) * a,
                        lambda a, T: (T - 2) * a,
                        lambda a, T: (T - 1) * a - 1),
}


def prelog_expected(term: TermId, alpha: float, T: int) -> float:
    """Tabulated prelog (gDoF per block) of `term_bound` at interference level `alpha`.

    The tables are continuous at alpha = 1/2 and 1, so either neighbouring
    column may be used there.
    """
    _check(alpha, T)
    col = {Regime.WEAK: 0, Regime.MODERATE: 1, Regime.STRONG: 2}[regime_of(alpha)]
    return float(_PRELOG[term.canonical][col](alpha, T))


def prelog_numeric(term: TermId, alpha: float, T: int,
                   snr_exponents: Sequence[float] = (8, 10, 12)) -> float:
    """Least-squares slope of `term_bound` against ``log2(snr)``.

    Evaluated at ``snr = 10**e`` and ``inr = snr**alpha`` for each exponent.
    """
    e = np.asarray(snr_exponents, dtype=float)
    if e.size < 2:
        raise ValueError("need at least two exponents")
    if np.any(np.diff(e) <= 0):
        raise ValueError("exponents must be strictly increasing")
    x = e * math.log2(10.0)
    y = np.array([term_bound(term, 10.0**ei, 10.0**(alpha * ei), T) for ei in e])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _require(bounds: TermBounds, needed: Sequence[TermId]) -> None:
    missing = [t.name for t in needed if t not in bounds]
    if missing:
        raise KeyError(f"missing term bounds: {missing}")


def prefm_system(bounds: TermBounds, feedback: bool, T: int) -> IneqSystem:
    """Han-Kobayashi decoding constraints over (Rc1, Rp1, Rc2, Rp2, R1, R2).

    Rows are per symbol (per-block bounds divided by T).  ``R1 = Rc1 + Rp1``
    and ``R2 = Rc2 + Rp2`` are encoded as opposing inequality pairs; the four
    split rates are declared nonnegative.
    """
    if int(T) != T or T < 2:
        raise ValueError(f"coherence T must be an integer >= 2, got {T!r}")
    I = TermId
    if feedback:
        _require(bounds, FB_TERMS)
        core = [
            ({"Rc2": 1}, bounds[I.IU2_Y1_gX1]),
            ({"Rp1": 1}, bounds[I.IX1_Y1_gU1U2]),
            ({"Rc1": 1, "Rc2": 1, "Rp1": 1}, bounds[I.IX1U2_Y1]),
            ({"Rc1": 1}, bounds[I.IU1_Y2_gX2]),
            ({"Rp2": 1}, bounds[I.IX2_Y2_gU1U2]),
            ({"Rc1": 1, "Rc2": 1, "Rp2": 1}, bounds[I.IX2U1_Y2]),
        ]
    else:
        _require(bounds, NOFB_TERMS)
        core = [
            ({"Rc1": 1, "Rc2": 1, "Rp1": 1}, bounds[I.IX1U2_Y1]),
            ({"Rp1": 1, "Rc1": 1}, bounds[I.IX1_Y1_gU2]),
            ({"Rp1": 1}, bounds[I.IX1_Y1_gU1U2]),
            ({"Rc2": 1, "Rp1": 1}, bounds[I.IX1U2_Y1_gU1]),
            ({"Rc1": 1, "Rc2": 1, "Rp2": 1}, bounds[I.IX2U1_Y2]),
            ({"Rp2": 1, "Rc2": 1}, bounds[I.IX2_Y2_gU1]),
            ({"Rp2": 1}, bounds[I.IX2_Y2_gU1U2]),
            ({"Rc1": 1, "Rp2": 1}, bounds[I.IX2U1_Y2_gU2]),
        ]
    rows = [(coefs, rhs / T) for coefs, rhs in core]
    rows += [
        ({"R1": 1, "Rc1": -1, "Rp1": -1}, 0.0),
        ({"R1": -1, "Rc1": 1, "Rp1": 1}, 0.0),
        ({"R2": 1, "Rc2": -1, "Rp2": -1}, 0.0),
        ({"R2": -1, "Rc2": 1, "Rp2": 1}, 0.0),
    ]
    return IneqSystem.from_rows(RATE_VARS, rows, nonneg=SPLIT_VARS)


def postfm_region(bounds: TermBounds, feedback: bool, T: int, *,
                  split_bounds: bool = False) -> Region2D:
    """Rate region in (R1, R2) after eliminating the split rates.

    Parameters
    ----------
    bounds : TermBounds
        Per-block term values.
    feedback : bool
        Select the feedback (six-row) or no-feedback (seven-row) region.
    T : int
        Coherence time; rows are divided by it.
    split_bounds : bool
        No-feedback only.  Adds ``R1 <= I(X1;Y1|U1,U2) + I(X2,U1;Y2|U2)`` and
        its mirror, which the exact projection of `prefm_system` keeps for a
        fixed input distribution.  Without them the seven-row region can be
        strictly larger than that projection when 1/2 < alpha < 1.
    """
    if int(T) != T or T < 2:
        raise ValueError(f"coherence T must be an integer >= 2, got {T!r}")
    I = TermId
    if feedback:
        _require(bounds, FB_TERMS)
        rows = [
            (1, 0, bounds[I.IX1U2_Y1]),
            (1, 0, bounds[I.IU1_Y2_gX2] + bounds[I.IX1_Y1_gU1U2]),
            (0, 1, bounds[I.IX2U1_Y2]),
            (0, 1, bounds[I.IU2_Y1_gX1] + bounds[I.IX2_Y2_gU1U2]),
            (1, 1, bounds[I.IX1_Y1_gU1U2] + bounds[I.IX2U1_Y2]),
            (1, 1, bounds[I.IX2_Y2_gU1U2] + bounds[I.IX1U2_Y1]),
        ]
        label = "rs-fb post-FM"
    else:
        _require(bounds, NOFB_TERMS)
        rows = [
            (1, 0, bounds[I.IX1_Y1_gU2]),
            (0, 1, bounds[I.IX2_Y2_gU1]),
            (1, 1, bounds[I.IX2U1_Y2] + bounds[I.IX1_Y1_gU1U2]),
            (1, 1, bounds[I.IX1U2_Y1] + bounds[I.IX2_Y2_gU1U2]),
            (1, 1, bounds[I.IX1U2_Y1_gU1] + bounds[I.IX2U1_Y2_gU2]),
            (2, 1, bounds[I.IX1U2_Y1] + bounds[I.IX1_Y1_gU1U2] + bounds[I.IX2U1_Y2_gU2]),
            (1, 2, bounds[I.IX2U1_Y2] + bounds[I.IX2_Y2_gU1U2] + bounds[I.IX1U2_Y1_gU1]),
        ]
        if split_bounds:
            rows += [
                (1, 0, bounds[I.IX1_Y1_gU1U2] + bounds[I.IX2U1_Y2_gU2]),
                (0, 1, bounds[I.IX2_Y2_gU1U2] + bounds[I.IX1U2_Y1_gU1]),
            ]
        label = "rs post-FM"
    return Region2D(tuple((a, b, c / T) for a, b, c in rows), label)
