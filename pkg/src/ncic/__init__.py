"""gDoF regions and finite-SNR rates for the noncoherent 2-user interference channel."""

from .channel_model import (ChannelConfig, MmseModel, Regime, config_from_db, mmse_model,
                            regime_of, sample_links, unit_exponentials)
from .finite_snr import (ExpectedLogSpec, McEstimate, exp_integral_e1, expected_log_closed,
                         expected_log_mc, jensen_bracket, finite_snr_region_rs, rate_table,
                         rate_tdm, rate_training_rs, training_rs_bounds)
from .gdof_schemes import (SchemeId, TermId, postfm_region, prefm_system, prelog_expected,
                           prelog_numeric, region, sym_gdof, term_bound, term_bounds)
from .polytope import (IneqSystem, Region2D, UnboundedRegionError, contains, fm_eliminate,
                       hausdorff_distance, is_empty, is_null, lift, project, regions_equal,
                       remove_redundant, symmetric_max, vertices_2d)

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig", "MmseModel", "Regime", "config_from_db", "mmse_model", "regime_of",
    "sample_links", "unit_exponentials",
    "ExpectedLogSpec", "McEstimate", "exp_integral_e1", "expected_log_closed", "expected_log_mc",
    "jensen_bracket", "finite_snr_region_rs", "rate_table", "rate_tdm", "rate_training_rs",
    "training_rs_bounds",
    "SchemeId", "TermId", "postfm_region", "prefm_system", "prelog_expected", "prelog_numeric",
    "region", "sym_gdof", "term_bound", "term_bounds",
    "IneqSystem", "Region2D", "UnboundedRegionError", "contains", "fm_eliminate",
    "hausdorff_distance", "is_empty", "is_null", "lift", "project", "regions_equal",
    "remove_redundant", "symmetric_max", "vertices_2d",
]
