"""Project the split-rate achievable region with Fourier-Motzkin elimination.

Run with ``python3 demos/projection_check.py``.  The script builds the
inequalities on (Rc1, Rp1, Rc2, Rp2, R1, R2) from numerically evaluated
mutual-information bounds, eliminates the split rates, and compares the
result with the closed-form region on the same bounds.

Without feedback the closed-form region can be strictly larger than the exact
projection.  Adding the two split bounds closes the gap, which the last
column shows.
"""

from ncic import ChannelConfig
from ncic.gdof_schemes import postfm_region, prefm_system, term_bounds
from ncic.polytope import hausdorff_distance, project, regions_equal, symmetric_max

T = 5


def main():
    print("alpha  feedback  equal  equal(split)  hausdorff  sym(projection)")
    for alpha in (0.3, 0.6, 0.75, 1.2):
        cfg = ChannelConfig.from_snr_alpha(2.0**30, alpha, T)
        bounds = term_bounds(cfg.snr, cfg.inr, T)
        for feedback in (False, True):
            exact = project(prefm_system(bounds, feedback, T), ["R1", "R2"])
            closed = postfm_region(bounds, feedback, T)
            split = postfm_region(bounds, feedback, T, split_bounds=True)
            print(f"{alpha:5.2f}  {str(feedback):8}  {str(regions_equal(exact, closed)):5}  "
                  f"{str(regions_equal(exact, split)):12}  {hausdorff_distance(exact, closed):9.3f}"
                  f"  {symmetric_max(exact):.3f}")


if __name__ == "__main__":
    main()
