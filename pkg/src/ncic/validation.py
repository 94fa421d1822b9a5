"""Self-checks of the library against closed forms, tables and independent oracles.

Each check returns one or more `CheckResult` lines.  The same functions back
``ncic validate`` and the acceptance tests, so the two cannot drift apart.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .channel_model import Regime
from .finite_snr import (DEFAULT_SAMPLES, ExpectedLogSpec, exp_integral_e1, expected_log_closed,
                         expected_log_mc, jensen_bracket, finite_snr_region_rs, rate_table,
                         scale_region)
from .channel_model import ChannelConfig
from .gdof_schemes import (SchemeId, TermId, postfm_region, prefm_system, prelog_expected,
                           prelog_numeric, region, sym_gdof, term_bounds)
from .polytope import hausdorff_distance, project, regions_equal, symmetric_max

# Reference rate table, 16..20 dB, alpha = 1, T = 5, link gain 0.1
TABLE_SNR_DB = (16, 17, 18, 19, 20)
TABLE_TDM = (0.50, 0.57, 0.66, 0.75, 0.84)
TABLE_TRAIN = (0.47, 0.54, 0.61, 0.69, 0.77)
TABLE_TOL = 0.02
FAST_SAMPLES = 200_000

FM_ALPHAS = (0.3, 0.6, 0.75, 1.2)
FM_COHERENCE = (3, 5, 8)
FM_EXPONENTS = (20, 40)

SLOPE_ALPHAS = (0.2, 0.6, 0.75, 1.2)
SLOPE_COHERENCE = (3, 5, 8)
SLOPE_EXPONENTS = (8, 10, 12)
SLOPE_TOL = 0.02

CONVERGENCE_ALPHAS = (0.3, 0.6, 0.75, 1.2)
CONVERGENCE_T = 5
CONVERGENCE_LIMITS = ((40, 0.05), (60, 0.02))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} {self.value:.6g} {self.tolerance:.6g}"
        return f"{text} ({self.detail})" if self.detail else text


def _alpha_grid(lo: float, hi: float, *, open_lo=False, open_hi=False, step=0.01) -> np.ndarray:
    n = int(round((hi - lo) / step))
    grid = lo + step * np.arange(n + 1)
    if open_lo:
        grid = grid[1:]
    if open_hi:
        grid = grid[:-1]
    return grid


# -- 1. rate table -------------------------------------------------------------

def check_rate_table(samples: int = DEFAULT_SAMPLES, seed: int = 0) -> list[CheckResult]:
    start = time.perf_counter()
    rows = rate_table(TABLE_SNR_DB, 1.0, 5, 0.1, samples, seed)
    elapsed = time.perf_counter() - start
    got = {(db, s): est.value for db, s, est in rows}
    out = []
    for scheme, ref in (("tdm", TABLE_TDM), ("train", TABLE_TRAIN)):
        errs = [abs(got[(float(db), scheme)] - r) for db, r in zip(TABLE_SNR_DB, ref)]
        worst = max(errs)
        values = ", ".join(f"{got[(float(db), scheme)]:.4f}" for db in TABLE_SNR_DB)
        out.append(CheckResult(f"rate_table_{scheme}", worst <= TABLE_TOL, worst, TABLE_TOL,
                               f"rates {values}"))
    out.append(CheckResult("rate_table_runtime_s", elapsed <= 60.0, elapsed, 60.0,
                           f"samples={samples}"))
    return out


# -- 2. spot values ------------------------------------------------------------

def check_spot_values() -> list[CheckResult]:
    rs_err = max(abs(sym_gdof("rs", 1.0, T) - 0.5 * (1 - 2 / T)) for T in range(3, 9))
    tdm_err = max(abs(sym_gdof("tdm", a, T) - 0.5 * (1 - 1 / T))
                  for T in range(3, 9) for a in (0.0, 0.2, 0.5, 1.0, 1.7))
    return [CheckResult("spot_rs_alpha1", rs_err <= 1e-12, rs_err, 1e-12),
            CheckResult("spot_tdm", tdm_err <= 1e-12, tdm_err, 1e-12)]


# -- 3. continuity -------------------------------------------------------------

def _one_sided_jump(scheme: SchemeId, alpha: float, T: int, left: Regime, right: Regime) -> float:
    lhs = symmetric_max(region(scheme, alpha, T, regime=left))
    rhs = symmetric_max(region(scheme, alpha, T, regime=right))
    return abs(lhs - rhs)


def check_continuity() -> list[CheckResult]:
    out = []
    for scheme in (SchemeId.RS_NOFB, SchemeId.RS_FB):
        worst = 0.0
        for T in range(2, 13):
            worst = max(worst,
                        _one_sided_jump(scheme, 0.5, T, Regime.WEAK, Regime.MODERATE),
                        _one_sided_jump(scheme, 1.0, T, Regime.MODERATE, Regime.STRONG))
        out.append(CheckResult(f"continuity_{scheme.value}", worst <= 1e-9, worst, 1e-9))
    return out


# -- 4. dominance --------------------------------------------------------------

def _min_margin(better: str, worse: str, alphas, Ts) -> tuple[float, float, int]:
    worst = (math.inf, math.nan, 0)
    for T in Ts:
        for a in alphas:
            m = sym_gdof(better, float(a), T) - sym_gdof(worse, float(a), T)
            if m < worst[0]:
                worst = (m, float(a), T)
    return worst


def _dominance(name: str, better: str, worse: str, alphas, Ts, slack=1e-12) -> CheckResult:
    margin, a, T = _min_margin(better, worse, alphas, Ts)
    return CheckResult(name, margin >= -slack, margin, slack,
                       f"min {better} - {worse} at alpha={a:g} T={T}")


def check_dominance() -> list[CheckResult]:
    weak = _alpha_grid(0.0, 0.5, open_lo=True, open_hi=True)
    unit = _alpha_grid(0.0, 1.0, open_lo=True, open_hi=True)
    full = _alpha_grid(0.0, 2.0)
    Ts = range(2, 13)
    out = [
        _dominance("dominance_a_tin_over_rs", "tin", "rs", weak, Ts),
        _dominance("dominance_a_tin_over_train", "tin", "train", weak, Ts),
        _dominance("dominance_b_tdm_over_rs_T4", "tdm", "rs", _alpha_grid(0.5, 1.5), [4]),
    ]
    gap = sym_gdof("rs", 2 / 3, 6) - sym_gdof("tdm", 2 / 3, 6)
    out.append(CheckResult("dominance_c_rs_over_tdm_T6", gap > 0, gap, 0.0,
                           "rs - tdm at alpha=2/3"))
    out.append(_dominance("dominance_d_rsfb_over_tin", "rs-fb", "tin", unit, range(3, 13)))
    out.append(_dominance("dominance_e_tin_over_rsfb_T2", "tin", "rs-fb", unit, [2]))
    out.append(_dominance("dominance_f_rsfb_over_rs", "rs-fb", "rs", full, Ts))
    return out


# -- 5. Fourier-Motzkin oracle -------------------------------------------------

def fm_mismatches(feedback: bool, *, split_bounds: bool = False) -> list[tuple[float, int, int]]:
    bad = []
    for a in FM_ALPHAS:
        for T in FM_COHERENCE:
            for e in FM_EXPONENTS:
                snr = 2.0**e
                b = term_bounds(snr, snr**a, T)
                proj = project(prefm_system(b, feedback, T), ["R1", "R2"])
                post = postfm_region(b, feedback, T, split_bounds=split_bounds)
                if not regions_equal(proj, post):
                    bad.append((a, T, e))
    return bad


def check_fm_oracle(*, include_split: bool = True) -> list[CheckResult]:
    n = len(FM_ALPHAS) * len(FM_COHERENCE) * len(FM_EXPONENTS)
    cases = [("fm_oracle_nofb", False, False), ("fm_oracle_fb", True, False)]
    if include_split:
        cases.append(("fm_oracle_nofb_split_bounds", False, True))
    out = []
    for name, fb, split in cases:
        bad = fm_mismatches(fb, split_bounds=split)
        detail = f"{n - len(bad)}/{n} combos equal"
        if bad:
            detail += "; first mismatch alpha={:g} T={} snr=2^{}".format(*bad[0])
        out.append(CheckResult(name, not bad, float(len(bad)), 0.0, detail))
    return out


# -- 6. prelog slopes ----------------------------------------------------------

PRELOG_TERMS = (TermId.IX1U2_Y1_gU1, TermId.IX1_Y1_gU1U2, TermId.IX1U2_Y1,
                TermId.IX1_Y1_gU2, TermId.IU2_Y1_gX1)


def check_prelog_slopes() -> list[CheckResult]:
    worst, where = 0.0, ""
    for term in PRELOG_TERMS:
        for a in SLOPE_ALPHAS:
            for T in SLOPE_COHERENCE:
                d = abs(prelog_numeric(term, a, T, SLOPE_EXPONENTS) - prelog_expected(term, a, T))
                if d > worst:
                    worst, where = d, f"{term.name} alpha={a:g} T={T}"
    return [CheckResult("prelog_slopes", worst <= SLOPE_TOL, worst, SLOPE_TOL,
                        f"worst at {where}")]


# -- 7. expected-log closed form -----------------------------------------------

def e1_quadrature(x: float) -> float:
    """Independent E1 by adaptive quadrature after ``t = x exp(u)``."""
    top = math.log(800.0 / x)
    value, _ = quad(lambda u: math.exp(-x * math.exp(u)), 0.0, top,
                    epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def check_expected_log(samples: int = DEFAULT_SAMPLES, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(12345)
    worst_out = 0.0
    for _ in range(200):
        a, b, mu = 10.0 ** rng.uniform(-3, 3, size=3)
        v = expected_log_closed(a, b, mu)
        lo, hi = jensen_bracket(a, b, mu)
        worst_out = max(worst_out, lo - v, v - hi)
    out = [CheckResult("jensen_bracket", worst_out <= 1e-12, max(worst_out, 0.0), 1e-12)]

    worst_z = 0.0
    for a, b, mu in ((1.0, 1.0, 1.0), (1.0, 3.0, 10.0), (5.0, 0.2, 2.0), (2.5, 100.0, 1.0)):
        est = expected_log_mc(ExpectedLogSpec(a, ((b, mu),)), samples, seed)
        worst_z = max(worst_z, abs(est.value - expected_log_closed(a, b, mu)) / est.stderr)
    out.append(CheckResult("mc_vs_closed_sigma", worst_z <= 3.0, worst_z, 3.0,
                           f"samples={samples}"))

    worst_rel = max(abs(exp_integral_e1(x) - e1_quadrature(x)) / e1_quadrature(x)
                    for x in np.geomspace(1e-4, 50, 60))
    out.append(CheckResult("e1_vs_quadrature", worst_rel <= 1e-10, worst_rel, 1e-10))
    return out


# -- 8. asymptotic convergence -------------------------------------------------

def convergence_error(alpha: float, exponent: int, feedback: bool, T: int = CONVERGENCE_T):
    """``(hausdorff, |sym difference|)`` of the normalized finite-SNR region vs its limit."""
    snr = 2.0**exponent
    cfg = ChannelConfig.from_snr_alpha(snr, alpha, T)
    finite = scale_region(finite_snr_region_rs(cfg, feedback), 1.0 / exponent)
    limit = region(SchemeId.RS_FB if feedback else SchemeId.RS_NOFB, alpha, T)
    return hausdorff_distance(finite, limit), abs(symmetric_max(finite) - symmetric_max(limit))


def check_convergence() -> list[CheckResult]:
    out = []
    for exponent, tol in CONVERGENCE_LIMITS:
        worst, where = 0.0, ""
        for fb in (False, True):
            for a in CONVERGENCE_ALPHAS:
                err = max(convergence_error(a, exponent, fb))
                if err > worst:
                    worst, where = err, f"{'fb' if fb else 'nofb'} alpha={a:g}"
        out.append(CheckResult(f"convergence_snr_2^{exponent}", worst <= tol, worst, tol,
                               f"worst at {where}"))
    return out


def all_checks(full: bool = False, seed: int = 0) -> list[tuple[str, Callable[[], list]]]:
    """``(criterion, thunk)`` pairs in criterion order."""
    samples = DEFAULT_SAMPLES if full else FAST_SAMPLES
    return [
        ("rate_table", lambda: check_rate_table(samples, seed)),
        ("spot_values", check_spot_values),
        ("continuity", check_continuity),
        ("dominance", check_dominance),
        ("fm_oracle", check_fm_oracle),
        ("prelog_slopes", check_prelog_slopes),
        ("expected_log", lambda: check_expected_log(samples, seed)),
        ("convergence", check_convergence),
    ]


def run_all(full: bool = False, seed: int = 0) -> list[CheckResult]:
    results = []
    for _, thunk in all_checks(full, seed):
        results.extend(thunk())
    return results
