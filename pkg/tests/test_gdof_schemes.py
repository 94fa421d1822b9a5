import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from ncic.channel_model import Regime
from ncic.gdof_schemes import (FB_TERMS, NOFB_TERMS, SchemeId, TermId, postfm_region,
                               prefm_system, prelog_expected, prelog_numeric, region, sym_gdof,
                               term_bound, term_bounds)
from ncic.polytope import contains, is_null, project, regions_equal, symmetric_max, vertices_2d


# -- spot values -----------------------------------------------------------------

@pytest.mark.parametrize("T", range(3, 9))
def test_rs_at_alpha_one_behaves_like_two_pilot_tdm(T):
    assert sym_gdof("rs", 1.0, T) == pytest.approx(0.5 * (1 - 2 / T), abs=1e-12)


@pytest.mark.parametrize("T", range(2, 9))
@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0, 2.5])
def test_tdm_is_flat(T, alpha):
    assert sym_gdof("tdm", alpha, T) == pytest.approx(0.5 * (1 - 1 / T), abs=1e-12)


def test_rs_beats_tdm_at_two_thirds_T6():
    assert sym_gdof("rs", 2 / 3, 6) == pytest.approx(4 / 9, abs=1e-12)
    assert sym_gdof("tdm", 2 / 3, 6) == pytest.approx(5 / 12, abs=1e-12)


# frozen from hand evaluation of the region rows
@pytest.mark.parametrize("scheme, alpha, T, expected", [
    ("rs", 1.0, 5, 0.3),
    ("rs", 0.75, 2, 0.0),
    ("rs", 0.25, 4, 0.5),          # min(3/4 - 1/16, 3/4 - 1/4)
    ("rs", 1.5, 4, 0.4375),        # ((3/4)(3/2) - 1/4) / 2
    ("rs-fb", 2 / 3, 5, 0.4333333333333333),
    ("rs-fb", 0.2, 5, 0.68),       # min(4/5 - 2/25, (8/5 - 0.24)/2)
    ("tin", 0.25, 4, 0.5625),
    ("tin", 1.3, 4, 0.0),
    ("train", 1.0, 5, 0.3),
    ("train-fb", 1.0, 5, 0.3),
    ("train", 0.3, 5, 0.42),       # (3/5)(1.7)/2 vs (3/5)(0.7)
])
def test_sym_gdof_frozen(scheme, alpha, T, expected):
    assert sym_gdof(scheme, alpha, T) == pytest.approx(expected, abs=1e-12)


def test_rs_at_T2_is_null():
    reg = region("rs", 0.7, 2)
    assert is_null(reg)
    assert vertices_2d(reg) == [(0.0, 0.0)]


def test_region_validation():
    with pytest.raises(ValueError, match="coherence"):
        region("rs", 0.5, 1)
    with pytest.raises(ValueError, match="alpha"):
        region("rs", -0.1, 4)
    with pytest.raises(ValueError):
        region("nope", 0.5, 4)


def test_regime_override_only_changes_piecewise_schemes():
    a, T = 0.5, 6
    assert region("tdm", a, T, regime=Regime.STRONG) == region("tdm", a, T)
    weak = symmetric_max(region("rs", a, T, regime=Regime.WEAK))
    moderate = symmetric_max(region("rs", a, T, regime="moderate"))
    assert weak == pytest.approx(moderate, abs=1e-12)


@pytest.mark.parametrize("scheme", ["rs", "rs-fb"])
@pytest.mark.parametrize("T", range(2, 13))
def test_boundary_one_sided_limits_agree(scheme, T):
    for a, left, right in ((0.5, Regime.WEAK, Regime.MODERATE),
                           (1.0, Regime.MODERATE, Regime.STRONG)):
        lhs = symmetric_max(region(scheme, a, T, regime=left))
        rhs = symmetric_max(region(scheme, a, T, regime=right))
        assert abs(lhs - rhs) <= 1e-9


def test_tdm_beats_rs_at_T4_only_up_to_four_thirds():
    # the strong-regime sum row gives ((3/4) alpha - 1/4) / 2, crossing 3/8 at 4/3
    for a in np.arange(0.5, 4 / 3, 0.01):
        assert sym_gdof("tdm", a, 4) >= sym_gdof("rs", a, 4) - 1e-12
    assert sym_gdof("rs", 4 / 3, 4) == pytest.approx(0.375, abs=1e-12)
    for a in (1.34, 1.4, 1.5):
        assert sym_gdof("rs", a, 4) > sym_gdof("tdm", a, 4)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 3.0), st.integers(2, 12))
def test_feedback_never_hurts(alpha, T):
    assert sym_gdof("rs-fb", alpha, T) >= sym_gdof("rs", alpha, T) - 1e-12
    assert sym_gdof("train-fb", alpha, T) >= sym_gdof("train", alpha, T) - 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 3.0), st.integers(2, 12), st.sampled_from([s.value for s in SchemeId]))
def test_regions_are_bounded_with_nonnegative_sym(alpha, T, scheme):
    reg = region(scheme, alpha, T)
    d = symmetric_max(reg)
    assert d >= 0
    assert contains(reg, (d, d))
    assert len(vertices_2d(reg)) >= 1


# -- term bounds and prelogs -----------------------------------------------------

def test_mirror_and_canonical():
    for t in TermId:
        assert t.mirror.mirror is t
        assert t.canonical.canonical is t.canonical
    assert TermId.IX2U1_Y2.canonical is TermId.IX1U2_Y1
    assert TermId.IX2_Y2_gU1.canonical is TermId.IX1_Y1_gU2


def test_term_bound_hand_values():
    # snr = inr = 2^10, T = 5
    s = 2.0**10
    assert term_bound(TermId.IX1U2_Y1, s, s, 5) == pytest.approx(4 * 11 - 10)
    assert term_bound(TermId.IX1_Y1_gU2, s, s, 5) == pytest.approx(4 * 10 - 10)
    assert term_bound(TermId.IU2_Y1_gX1, s, s, 5) == pytest.approx(4 * 10 - 10)
    assert term_bound(TermId.IX1_Y1_gU1U2, s, s, 5) == pytest.approx(
        math.log2(1 + s) + 3 - 10)


def test_mirrored_terms_share_values():
    b = term_bounds(1e6, 1e3, 6)
    for t in TermId:
        assert b[t] == b[t.mirror]


def test_term_bound_validation():
    with pytest.raises(ValueError):
        term_bound(TermId.IX1U2_Y1, 0.0, 1.0, 5)
    with pytest.raises(ValueError):
        term_bound(TermId.IX1U2_Y1, 10.0, 1.0, 1)


@pytest.mark.parametrize("term", [TermId.IX1U2_Y1_gU1, TermId.IX1_Y1_gU1U2, TermId.IX1U2_Y1,
                                  TermId.IX1_Y1_gU2, TermId.IU2_Y1_gX1])
@pytest.mark.parametrize("alpha", [0.2, 0.4, 0.6, 0.75, 1.2, 1.8])
@pytest.mark.parametrize("T", [3, 5, 8])
def test_prelog_numeric_matches_table(term, alpha, T):
    assert prelog_numeric(term, alpha, T, (8, 10, 12)) == pytest.approx(
        prelog_expected(term, alpha, T), abs=0.02)


def test_prelog_exponent_validation():
    with pytest.raises(ValueError):
        prelog_numeric(TermId.IX1U2_Y1, 0.5, 4, (8,))
    with pytest.raises(ValueError):
        prelog_numeric(TermId.IX1U2_Y1, 0.5, 4, (10, 8))


@pytest.mark.parametrize("term", list(TermId))
@pytest.mark.parametrize("T", [2, 4, 9])
def test_prelog_table_continuous_at_boundaries(term, T):
    for a in (0.5, 1.0):
        lo = prelog_expected(term, a - 1e-9, T)
        hi = prelog_expected(term, a + 1e-9, T)
        assert abs(lo - hi) <= 1e-7


def _prelog_bounds(alpha, T):
    return {t: prelog_expected(t, alpha, T) for t in TermId}


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.45, 0.55, 0.7, 0.9, 1.1, 1.6])
@pytest.mark.parametrize("T", [3, 4, 6, 10])
@pytest.mark.parametrize("feedback, scheme", [(False, "rs"), (True, "rs-fb")])
def test_prelog_region_equals_closed_form_region(alpha, T, feedback, scheme):
    post = postfm_region(_prelog_bounds(alpha, T), feedback, T)
    assert regions_equal(post, region(scheme, alpha, T), tol=1e-9)


# -- Fourier-Motzkin oracle ------------------------------------------------------

def _lp_support(system, direction):
    n = len(system.vars)
    c = np.zeros(n)
    c[system.vars.index("R1")] = -direction[0]
    c[system.vars.index("R2")] = -direction[1]
    bounds = [(0, None) if v in system.nonneg else (None, None) for v in system.vars]
    res = linprog(c, A_ub=system.A, b_ub=system.b, bounds=bounds, method="highs")
    assert res.status == 0
    return -res.fun


def _region_support(reg, direction):
    return max(np.dot(v, direction) for v in vertices_2d(reg))


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.75, 1.2])
@pytest.mark.parametrize("T", [3, 5, 8])
def test_projection_agrees_with_linprog(alpha, T):
    b = term_bounds(2.0**30, 2.0**(30 * alpha), T)
    for fb in (False, True):
        system = prefm_system(b, fb, T)
        proj = project(system, ["R1", "R2"])
        for theta in np.linspace(0, np.pi / 2, 9):
            d = (math.cos(theta), math.sin(theta))
            assert _region_support(proj, d) == pytest.approx(_lp_support(system, d), abs=1e-7)


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.75, 1.2])
@pytest.mark.parametrize("T", [3, 5, 8])
@pytest.mark.parametrize("exponent", [20, 40])
def test_feedback_postfm_equals_projection(alpha, T, exponent):
    b = term_bounds(2.0**exponent, 2.0**(exponent * alpha), T)
    assert regions_equal(project(prefm_system(b, True, T), ["R1", "R2"]),
                         postfm_region(b, True, T))


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.75, 1.2])
@pytest.mark.parametrize("T", [3, 5, 8])
@pytest.mark.parametrize("exponent", [20, 40])
def test_nofb_postfm_with_split_bounds_equals_projection(alpha, T, exponent):
    b = term_bounds(2.0**exponent, 2.0**(exponent * alpha), T)
    proj = project(prefm_system(b, False, T), ["R1", "R2"])
    assert regions_equal(proj, postfm_region(b, False, T, split_bounds=True))
    # the seven-row region always contains the projection
    for v in vertices_2d(proj):
        assert contains(postfm_region(b, False, T), v, tol=1e-9)


def test_nofb_seven_row_region_overshoots_projection():
    # alpha = 0.6, T = 3: R1 is limited by I(X1;Y1|U1,U2) + I(X2,U1;Y2|U2),
    # a bound the seven listed rows do not imply
    T = 3
    b = term_bounds(2.0**20, 2.0**12, T)
    proj = project(prefm_system(b, False, T), ["R1", "R2"])
    seven = postfm_region(b, False, T)
    assert not regions_equal(proj, seven)
    r1_proj = max(x for x, _ in vertices_2d(proj))
    r1_seven = max(x for x, _ in vertices_2d(seven))
    split = (b[TermId.IX1_Y1_gU1U2] + b[TermId.IX2U1_Y2_gU2]) / T
    assert r1_proj == pytest.approx(split)
    assert r1_seven > r1_proj + 1.0


def test_prefm_shapes():
    b = term_bounds(1e6, 1e4, 5)
    assert len(prefm_system(b, False, 5)) == 12
    assert len(prefm_system(b, True, 5)) == 10
    assert len(postfm_region(b, False, 5).rows) == 7
    assert len(postfm_region(b, False, 5, split_bounds=True).rows) == 9
    assert len(postfm_region(b, True, 5).rows) == 6


def test_missing_terms_reported():
    b = {t: 1.0 for t in NOFB_TERMS}
    with pytest.raises(KeyError, match="IU2_Y1_gX1"):
        prefm_system(b, True, 4)
    b = {t: 1.0 for t in FB_TERMS}
    with pytest.raises(KeyError):
        postfm_region(b, False, 4)
