#!/usr/bin/env python3
"""Compare the exact-kinematics scalars against the small-wavevector
expansion over a grid of states and frequencies.

The transverse scalar tracks the expansion everywhere.  The longitudinal
one emerges from a near-cancellation of much larger terms, so the
next-order wavevector correction enters amplified by (b/a^2)^2: the table
makes the expansion's validity frontier visible at the low-frequency end.

Example:
    python3 scripts/route_equivalence.py --b 1e-4
"""

import argparse
from dataclasses import dataclass, field

from relplasma import Regime, ThermoState, make_kinematics, scalar_triple


@dataclass(frozen=True)
class GridConfig:
    zetas: tuple = (1.5, 2.0, 5.0)
    halves: tuple = (0.01, 0.05, 0.1)   # half-frequencies a = omega/2
    b: float = 1e-4                     # half-wavevector
    tol: float = 1e-11
    amplification: tuple = field(init=False, default=())


def rel_gap(x: float, ref: float) -> float:
    if x == ref:
        return 0.0
    return abs(x - ref) / max(abs(x), abs(ref))


def run(cfg: GridConfig) -> None:
    print(f"half-wavevector b = {cfg.b:g}, quadrature tol = {cfg.tol:g}\n")
    print(f"{'zeta':>6} {'a':>6} {'(b/a^2)^2':>10} "
          f"{'longitudinal gap':>17} {'transverse gap':>15}")
    for zeta in cfg.zetas:
        state = ThermoState(t=0.0, zeta=zeta)
        for a in cfg.halves:
            kin = make_kinematics(2.0 * a, 2.0 * cfg.b)
            full = scalar_triple(kin, state, regime=Regime.FullKinematics,
                                 tol=cfg.tol)
            lw = scalar_triple(kin, state, regime=Regime.LongWavelength,
                               tol=cfg.tol)
            amp = (cfg.b / (a * a)) ** 2
            da = rel_gap(full.aStar, lw.aStar)
            db = rel_gap(full.bStar, lw.bStar)
            print(f"{zeta:6.2f} {a:6.3f} {amp:10.3e} {da:17.3e} {db:15.3e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b", type=float, default=1e-4,
                    help="half-wavevector held fixed across the grid")
    ap.add_argument("--tol", type=float, default=1e-11)
    args = ap.parse_args()
    run(GridConfig(b=args.b, tol=args.tol))


if __name__ == "__main__":
    main()
