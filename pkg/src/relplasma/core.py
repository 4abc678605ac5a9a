"""Shared unit conventions, domain types, and the thermal occupation factor.

Everything is expressed in electron-mass units (hbar = c = m = 1): temperatures
and chemical potentials are divided by m, frequencies and wavevectors by m, and
squared masses by m^2.  The coupling e2 is dimensionless.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

E2_DEFAULT = 4.0 * math.pi / 137.0


class Regime(enum.Enum):
    """Which evaluation route produced a set of scalar functions."""

    FullKinematics = "full"
    LongWavelength = "longwave"
    Stationary = "stationary"
    Vacuum = "vacuum"


@dataclass(frozen=True)
class ThermoState:
    """Temperature t = T/m, chemical potential zeta = xi/m, coupling e2."""

    t: float
    zeta: float
    e2: float = E2_DEFAULT

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and self.t >= 0.0):
            raise ValueError(f"temperature t must be finite and >= 0, got {self.t}")
        if not (math.isfinite(self.zeta) and self.zeta >= 0.0):
            raise ValueError(f"chemical potential zeta must be finite and >= 0, got {self.zeta}")
        if not (math.isfinite(self.e2) and self.e2 > 0.0):
            raise ValueError(f"coupling e2 must be finite and > 0, got {self.e2}")


@dataclass(frozen=True)
class Kinematics:
    """Probe frequency and wavevector, with halved variables and the invariant.

    a and b are omega/2 and qmag/2; qm2 is the Minkowski square omega^2 - qmag^2.
    All three are derived, never set independently.
    """

    omega: float
    qmag: float
    a: float = field(init=False)
    b: float = field(init=False)
    qm2: float = field(init=False)

    def __post_init__(self) -> None:
        for name, v in (("omega", self.omega), ("qmag", self.qmag)):
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
        object.__setattr__(self, "a", self.omega / 2.0)
        object.__setattr__(self, "b", self.qmag / 2.0)
        object.__setattr__(self, "qm2", self.omega**2 - self.qmag**2)


def make_kinematics(omega: float, qmag: float) -> Kinematics:
    """Build a Kinematics value, validating both inputs."""
    return Kinematics(float(omega), float(qmag))


@dataclass(frozen=True)
class ScalarTriple:
    """The three response scalars (plus the derived fourth) at one kinematic point.

    cStarRatio stores cStar/qm2, which stays finite through the light cone and
    is the quantity the response assembly actually needs.  longwaveW is set only
    on the long-wavelength route: it is the (a^2/b^2)-rescaled transverse medium
    scalar, finite as b -> 0 while bStar itself vanishes like b^2.
    """

    aStar: float
    bStar: float
    cStar: float
    dStar: float
    errEst: float = 0.0
    regime: Regime = Regime.FullKinematics
    cStarRatio: float = 0.0
    longwaveW: float | None = None


@dataclass(frozen=True)
class ResponseSet:
    """The six constitutive coefficients, plus an optional vacuum-only baseline."""

    eps: float
    muInv: float
    epsPrime: float
    muPrimeInv: float
    tau: float
    sigma: float
    vacuum: "ResponseSet | None" = None


@dataclass(frozen=True)
class Susceptibilities:
    """Medium susceptibilities: full response minus the vacuum-only baseline."""

    chiE: float
    chiEPrime: float
    chiEM: float
    chiM: float
    chiMPrime: float
    chiME: float


def fermi_occupation(x, state: ThermoState):
    """Thermal occupation at energy x = omega_p/m >= 1: particle plus antiparticle term.

    Returns a value in [0, 2].  At t = 0 this is the exact step Theta(zeta - x),
    with 1/2 on the surface.  Accepts scalars or numpy arrays.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 1.0):
        raise ValueError("energy x = omega_p/m must be >= 1")
    if state.t == 0.0:
        out = np.where(arr < state.zeta, 1.0, np.where(arr > state.zeta, 0.0, 0.5))
    else:
        out = _stable_fermi(arr - state.zeta, state.t) + _stable_fermi(arr + state.zeta, state.t)
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return float(out)
    return out


def _stable_fermi(delta, t):
    # 1/(exp(delta/t)+1) without overflow for |delta|/t large
    u = delta / t
    eu = np.exp(-np.abs(u))
    return np.where(u >= 0.0, eu / (1.0 + eu), 1.0 / (1.0 + eu))
