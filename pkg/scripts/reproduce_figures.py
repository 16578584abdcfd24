"""Write the data behind the channel-gain, transmit-power and EE figures, plus headline numbers.

    python scripts/reproduce_figures.py --out results/
"""

import argparse
from pathlib import Path

from irsdf.config import ScenarioConfig
from irsdf.linkmath import LinkGains
from irsdf.powerctl import min_elements_low_snr_limit, min_elements_to_beat_df, power_df
from irsdf.sweep import FIGURES, SweepSpec, SweepVariable, figure_table, solve_crossovers


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    cfg = ScenarioConfig()
    for fig in FIGURES:
        path = out / f"fig{fig}.csv"
        path.write_text(figure_table(fig, cfg).to_csv())
        print(f"wrote {path}")

    low = min_elements_low_snr_limit(LinkGains.from_db(-110, -80, -60), 1.0)
    print(f"low-SNR threshold (-110/-80/-60 dB, alpha=1): N > {low.value:.2f}")
    for r_bar in (4.0, 6.0):
        g = cfg.gains(80.0)
        th = min_elements_to_beat_df(power_df(r_bar, g, cfg.sigma2), g, cfg.alpha, cfg.sigma2)
        print(f"d1=80 m, R={r_bar:g}: N > {th.value:.2f} (smallest winning N = {th.min_integer_n})")

    spec = SweepSpec(SweepVariable.RATE, 0.1, 12.0, 0.05, cfg)
    for c in solve_crossovers(spec):
        value = "none" if c.r_bar is None else f"{c.r_bar:.3f} bit/s/Hz"
        print(f"d1={cfg.d1_m:g} m crossover {c.pair}: {value}")


if __name__ == "__main__":
    main()
