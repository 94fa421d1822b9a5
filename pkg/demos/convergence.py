"""Normalised finite-SNR regions approach the gDoF region as SNR grows.

Run with ``python3 demos/convergence.py``.  For each SNR = 2^e the region is
built from numerically evaluated bounds, scaled by 1/e and compared with the
closed-form gDoF region.
"""

from ncic import ChannelConfig, SchemeId, region
from ncic.finite_snr import finite_snr_region_rs, scale_region
from ncic.polytope import hausdorff_distance

T = 5


def main():
    print("alpha  feedback  " + "  ".join(f"e={e:<5}" for e in (10, 20, 40, 60)))
    for alpha in (0.3, 0.6, 1.2):
        for feedback in (False, True):
            limit = region(SchemeId.RS_FB if feedback else SchemeId.RS_NOFB, alpha, T)
            errs = []
            for e in (10, 20, 40, 60):
                cfg = ChannelConfig.from_snr_alpha(2.0**e, alpha, T)
                scaled = scale_region(finite_snr_region_rs(cfg, feedback), 1 / e)
                errs.append(hausdorff_distance(scaled, limit))
            print(f"{alpha:5.2f}  {str(feedback):8}  " + "  ".join(f"{d:7.4f}" for d in errs))


if __name__ == "__main__":
    main()
