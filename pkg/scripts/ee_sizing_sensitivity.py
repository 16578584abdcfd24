"""How the EE crossovers move when the IRS is sized with a different amplifier efficiency.

The EE of each scheme is always evaluated with the scenario's nu; only the
element-count rule changes. ``sizing nu = scenario nu`` is the true optimum.
"""

import argparse

import numpy as np
from scipy.optimize import brentq

from irsdf.config import ScenarioConfig
from irsdf.energy import energy_efficiency, optimal_n_ee, total_power_df, total_power_irs


def crossovers(cfg: ScenarioConfig, sizing_nu: float):
    g = cfg.gains()
    pm = cfg.power_model()

    def n_opt(r):
        return optimal_n_ee(r, pm.sigma2, cfg.alpha, g, cfg.p_elem, nu=sizing_nu)

    def ee_irs(r):
        return energy_efficiency(cfg.bandwidth_hz, r, total_power_irs(r, pm, g, cfg.irs(n_opt(r).n_int)))

    def ee_df(r):
        return energy_efficiency(cfg.bandwidth_hz, r, total_power_df(r, pm, g))

    df_irs = brentq(lambda r: ee_df(r) - ee_irs(r), 6.0, 12.0, xtol=1e-6)
    onset = brentq(lambda r: n_opt(r).n_real, 0.5, 12.0, xtol=1e-6)
    return df_irs, onset


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--d1", type=float, default=70.0)
    args = parser.parse_args()
    cfg = ScenarioConfig(d1_m=args.d1)
    print(f"scenario nu = {cfg.nu}")
    print("sizing_nu  DF/IRS crossover  N_opt>0 onset")
    for nu in np.unique([cfg.nu, 0.25, 0.5, 1.0]):
        df_irs, onset = crossovers(cfg, float(nu))
        print(f"{nu:9.2f}  {df_irs:16.3f}  {onset:13.3f}")


if __name__ == "__main__":
    main()
