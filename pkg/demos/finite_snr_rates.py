"""Finite-SNR rates of the training scheme and time division.

Run with ``python3 demos/finite_snr_rates.py``.  Both rates are Monte-Carlo
estimates over Rayleigh block fading with a 0.1 link gain, alpha = 1 and a
coherence time of 5 symbols.  At these SNRs time division is ahead, because
training for four links costs more than it buys.
"""

from ncic import rate_table

SNR_DB = (16, 17, 18, 19, 20)


def main():
    rows = rate_table(SNR_DB, alpha=1.0, coherence=5, link_gain=0.1, seed=0)
    by_db = {}
    for db, scheme, est in rows:
        by_db.setdefault(db, {})[scheme] = est
    print("snr_db   train    tdm     (stderr)")
    for db, est in by_db.items():
        tr, td = est["train"], est["tdm"]
        print(f"{db:6.0f}  {tr.value:.4f}  {td.value:.4f}  ({max(tr.stderr, td.stderr):.1e})")


if __name__ == "__main__":
    main()
