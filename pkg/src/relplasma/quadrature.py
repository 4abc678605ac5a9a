"""Adaptive panel quadrature for Fermi-weighted integrands with log singularities.

The integration variable is x = omega_p/m on [1, X_cut].  Panels are refined by
bisecting whichever panel carries the largest error estimate; panel edges are
placed on every known zero of a logarithmic argument so the open Gauss-Kronrod
nodes never touch a singular point.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .core import Kinematics, ThermoState

PANEL_BUDGET = 10_000
DEFAULT_TOL = 1e-9

# 7-point Gauss / 15-point Kronrod pair on [-1, 1]; all nodes strictly interior.
_XK_HALF = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
])
_WK_HALF = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
])
_WG_HALF = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])

_XK = np.concatenate([-_XK_HALF[:-1], _XK_HALF[::-1]])
_WK = np.concatenate([_WK_HALF[:-1], _WK_HALF[::-1]])
_WG = np.zeros_like(_WK)
_WG[1:-1:2] = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])


@dataclass(frozen=True)
class IntegralResult:
    value: float
    errEst: float
    panels: int
    converged: bool


@dataclass(frozen=True)
class Breakpoints:
    """Sorted x-locations >= 1 where an integrand's log argument vanishes."""

    points: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(p < 1.0 for p in pts):
            raise ValueError("breakpoints must lie in the integration domain x >= 1")
        if any(q <= p for p, q in zip(pts, pts[1:])):
            raise ValueError("breakpoints must be strictly increasing")


class NonConvergence(RuntimeError):
    """Panel budget exhausted; .result holds the best available estimate."""

    def __init__(self, result: IntegralResult, message: str) -> None:
        super().__init__(message)
        self.result = result


def _panel(f, lo: float, hi: float) -> tuple[float, float]:
    """One Gauss-Kronrod pass: returns (kronrod value, error estimate)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    fv = np.asarray(f(mid + half * _XK), dtype=float)
    k = half * float(np.dot(_WK, fv))
    g = half * float(np.dot(_WG, fv))
    if not math.isfinite(k):
        return k, math.inf
    return k, abs(k - g)


def adaptive_panels(f, edges, tol: float = DEFAULT_TOL,
                    budget: int = PANEL_BUDGET) -> IntegralResult:
    """Integrate f over [edges[0], edges[-1]] with initial splits at every edge.

    f must accept a numpy array of abscissae.  Raises NonConvergence when the
    panel budget runs out before the summed error estimate drops below tol.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    edges = sorted(set(float(e) for e in edges))
    heap: list[tuple[float, int, float, float, float]] = []
    frozen: list[tuple[float, float]] = []  # (value, err) of panels at machine width
    serial = 0
    live_err = 0.0
    for lo, hi in zip(edges, edges[1:]):
        if hi <= lo:
            continue
        val, err = _panel(f, lo, hi)
        heapq.heappush(heap, (-err, serial, lo, hi, val))
        live_err += err
        serial += 1
    if not heap and not frozen:
        return IntegralResult(0.0, 0.0, 0, True)

    def totals() -> tuple[float, float, int]:
        value = sum(item[4] for item in heap) + sum(v for v, _ in frozen)
        err = -sum(item[0] for item in heap) + sum(e for _, e in frozen)
        return value, err, len(heap) + len(frozen)

    frozen_err = 0.0
    while heap and live_err + frozen_err > tol:
        if len(heap) + len(frozen) >= budget:
            value, err, n = totals()
            raise NonConvergence(
                IntegralResult(value, err, n, False),
                f"budget of {budget} panels exhausted, errEst {err:.3e} > tol {tol:.3e}",
            )
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        live_err += neg_err
        mid = 0.5 * (lo + hi)
        # stop well above machine width: thinner panels would let rounding push
        # open-rule nodes onto a singular edge
        if hi - lo < 1e-13 * max(1.0, abs(lo), abs(hi)):
            frozen.append((val, -neg_err))
            frozen_err += -neg_err
            continue
        for plo, phi in ((lo, mid), (mid, hi)):
            pval, perr = _panel(f, plo, phi)
            heapq.heappush(heap, (-perr, serial, plo, phi, pval))
            live_err += perr
            serial += 1

    value, err, n = totals()
    if err > tol:
        raise NonConvergence(
            IntegralResult(value, err, n, False),
            f"all panels at machine width, errEst {err:.3e} > tol {tol:.3e}",
        )
    return IntegralResult(value, err, n, True)


def fermi_x_cut(state: ThermoState, tol: float) -> float:
    """Upper integration limit: exact Fermi edge at t = 0, padded tail otherwise."""
    if state.t == 0.0:
        return state.zeta
    pad = max(50.0, math.log(10.0 / tol) + 3.0 * math.log(2.0 + state.zeta + 50.0 * state.t) + 10.0)
    return max(state.zeta, 1.0) + state.t * pad


def integrate_semi_infinite(f, state: ThermoState, breaks: Breakpoints,
                            tol: float = DEFAULT_TOL, budget: int = PANEL_BUDGET,
                            x_cut_scale: float = 1.0) -> IntegralResult:
    """Integrate an already-Fermi-weighted integrand f over x in [1, infinity).

    The state fixes the effective cutoff X_cut; breaks become panel edges.
    x_cut_scale stretches the cutoff (testing hook for tail-truncation checks).
    """
    x_cut = fermi_x_cut(state, tol)
    if x_cut_scale != 1.0 and state.t > 0.0:
        x_cut = max(state.zeta, 1.0) + (x_cut - max(state.zeta, 1.0)) * x_cut_scale
    if x_cut <= 1.0:
        return IntegralResult(0.0, 0.0, 0, True)
    edges = [1.0, x_cut]
    edges += [p for p in breaks.points if 1.0 < p < x_cut]
    if state.t > 0.0 and 1.0 < state.zeta < x_cut:
        # seed the Fermi surface so sharp low-t transitions start resolved
        edges.append(state.zeta)
    return adaptive_panels(f, edges, tol=tol, budget=budget)


def locate_log_singularities(kin: Kinematics, x_max: float | None = None) -> Breakpoints:
    """Zeros in x >= 1 of the eight log arguments alpha*x + beta*sqrt(x^2-1) + gamma.

    gamma runs over {a^2 - b^2, a^2}, (alpha, beta) over (+-a, +-b).  Squaring
    gives (b^2 - a^2) x^2 - 2 alpha gamma x - (b^2 + gamma^2) = 0; every
    candidate is verified against the unsquared argument before acceptance.
    Only roots strictly inside (1, x_max] are reported.
    """
    if kin.qmag <= 0.0:
        raise ValueError("locate_log_singularities requires qmag > 0")
    a, b = kin.a, kin.b
    found: list[float] = []
    for gamma in (a * a - b * b, a * a):
        for alpha in (a, -a):
            acoef = b * b - alpha * alpha
            bcoef = -2.0 * alpha * gamma
            ccoef = -(b * b + gamma * gamma)
            roots: list[float] = []
            if acoef == 0.0:
                if bcoef != 0.0:
                    roots.append(-ccoef / bcoef)
            else:
                disc = bcoef * bcoef - 4.0 * acoef * ccoef
                if disc >= 0.0:
                    sq = math.sqrt(disc)
                    qq = -0.5 * (bcoef + math.copysign(sq, bcoef)) if bcoef != 0.0 else 0.5 * sq
                    if qq != 0.0:
                        roots += [qq / acoef, ccoef / qq]
                    else:
                        roots.append(0.0)
            for x in roots:
                if not (x > 1.0 and math.isfinite(x)):
                    continue
                s = math.sqrt(x * x - 1.0)
                for beta in (b, -b):
                    resid = alpha * x + beta * s + gamma
                    scale = max(1.0, abs(alpha) * x + abs(beta) * s + abs(gamma))
                    if abs(resid) <= 1e-12 * scale:
                        found.append(x)
                        break
    found.sort()
    unique: list[float] = []
    for x in found:
        if x_max is not None and x > x_max:
            continue
        if unique and math.isclose(x, unique[-1], rel_tol=1e-12):
            continue
        unique.append(x)
    return Breakpoints(tuple(unique))
