#!/usr/bin/env python3
"""Map the window where the electric and magnetic responses are negative
at the same time, and the refractive index inside it.

Example:
    python3 scripts/negative_band.py --zeta 2 --omega-min 0.05 --omega-max 0.12
"""

import argparse
import math
from dataclasses import dataclass

from relplasma import (ThermoState, negative_index_scan, plasmon_frequency,
                       RootNotBracketed)


@dataclass(frozen=True)
class ScanConfig:
    t: float = 0.0
    zeta: float = 2.0
    omega_min: float = 0.05
    omega_max: float = 0.12
    n_points: int = 41
    tol: float = 1e-9


def run(cfg: ScanConfig) -> None:
    state = ThermoState(t=cfg.t, zeta=cfg.zeta)
    report = negative_index_scan(state, cfg.omega_min, cfg.omega_max,
                                 cfg.n_points, tol=cfg.tol)

    print(f"state: t={cfg.t:g} zeta={cfg.zeta:g}")
    try:
        omega_e, omega_root = plasmon_frequency(state, tol=cfg.tol)
        print(f"collective scale 2*sqrt(ae2): {omega_e:.6e}")
        print(f"permittivity zero:            {omega_root:.6e}")
    except RootNotBracketed:
        print("no collective mode at this state")
    if report.negativeBand is None:
        print("no simultaneous-negativity window in the scanned range")
    else:
        lo, hi = report.negativeBand
        print(f"both-negative window:         [{lo:.6e}, {hi:.6e}]")

    print(f"\n{'omega':>12} {'eps':>14} {'muInv':>14} {'nIndex':>12}  inBand")
    for i, w in enumerate(report.omegaGrid):
        eps = report.epsVals[i]
        mu_inv = report.muInvVals[i]
        ratio = eps / mu_inv if mu_inv != 0.0 else math.inf
        n_text = f"{math.sqrt(ratio):12.6f}" if 0.0 < ratio < math.inf \
            else f"{'-':>12}"
        in_band = eps < 0.0 and mu_inv < 0.0
        print(f"{w:12.6f} {eps:14.6f} {mu_inv:14.6f} {n_text}  "
              f"{'yes' if in_band else 'no'}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=float, default=0.0)
    ap.add_argument("--zeta", type=float, default=2.0)
    ap.add_argument("--omega-min", type=float, default=0.05)
    ap.add_argument("--omega-max", type=float, default=0.12)
    ap.add_argument("--n-points", type=int, default=41)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    run(ScanConfig(t=args.t, zeta=args.zeta, omega_min=args.omega_min,
                   omega_max=args.omega_max, n_points=args.n_points,
                   tol=args.tol))


if __name__ == "__main__":
    main()
