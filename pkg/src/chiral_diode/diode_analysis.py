"""Working areas of the two-photon optical diode.

A working area is the locus in the (coupling asymmetry, photon separation)
plane where the transmitted two-photon density vanishes for one incidence
direction while staying finite for the other.  Two closed-form cases are
covered:

* single-photon resonance (both photons at the cavity frequency), where
  the curve ``|x| = (2/(kappa+Gamma)) ln[4 gamma1^2 / (Gamma+kappa-2
  gamma1)^2]`` becomes exact in the strong-Kerr limit and holds on
  ``(kappa+Gamma)/4 <= gamma1 <= Gamma``;
* two-photon resonance (one photon at the cavity frequency, the other
  shifted by twice the Kerr constant), where exact zeros at finite Kerr
  strength require simultaneously ``|x| = (2/(kappa+Gamma)) ln[2 gamma1^2
  / ((2 gamma1 - kappa - Gamma)(kappa + Gamma))]`` and ``tan(U |x|) =
  (Gamma + kappa - 2 gamma1)/(4U)``, solved per tangent branch on
  ``gamma1 > (kappa+Gamma)/2``.

A direct numerical scan of the density minima provides the
independent cross-check, and a scalar contrast summarizes the
transmitted-density asymmetry between the two incidence directions.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .io_utils import write_csv
from .model import Direction, ModelParams, TwoPhotonIn
from .two_photon import TwoPhotonField

__all__ = [
    "WorkingAreaCase",
    "WorkingAreaPoint",
    "WorkingAreaCurve",
    "ZeroScanResult",
    "working_area_single_res",
    "working_area_two_res",
    "numeric_zero_scan",
    "nonreciprocity_contrast",
    "write_working_area_csv",
    "WORKING_AREA_HEADER",
]

# free two-photon density scale: |symmetrized plane wave|^2 at coincidence
FREE_PAIR_DENSITY = 1.0 / (2.0 * np.pi**2)

_DIVERGE_TOL = 1e-12


class WorkingAreaCase(enum.Enum):
    """Incident-pair tuning for which a working area is computed."""

    SINGLE_PHOTON_RESONANCE = "single-photon-resonance"
    TWO_PHOTON_RESONANCE = "two-photon-resonance"


@dataclass(frozen=True)
class WorkingAreaPoint:
    """One point of a working-area curve, in reduced units.

    ``branch`` is the tangent-branch index for the two-photon-resonance
    solver and 0 for the closed-form single-photon-resonance curve.
    ``diverges`` marks couplings where the separation grows without bound;
    there ``Gamma_abs_x`` is ``inf``.
    """

    gamma1_over_Gamma: float
    Gamma_abs_x: float
    branch: int = 0
    diverges: bool = False


@dataclass(frozen=True)
class WorkingAreaCurve:
    """A working-area locus with the parameters that produced it."""

    case: WorkingAreaCase
    params: ModelParams
    points: tuple[WorkingAreaPoint, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def _single_res_gx(params: ModelParams, g1: float) -> float:
    """Gamma*|x| of the strong-Kerr single-photon-resonance curve."""
    s = params.kappa + params.Gamma
    return (2.0 * params.Gamma / s) * math.log(4.0 * g1**2 / (s - 2.0 * g1) ** 2)


def working_area_single_res(params: ModelParams, gamma1_grid: Sequence[float]) -> WorkingAreaCurve:
    """Tabulate the strong-Kerr working area at single-photon resonance.

    ``gamma1_grid`` holds absolute gamma1 values; gamma2 is implied by the
    fixed total coupling of ``params``.  Grid values outside
    ``[(kappa+Gamma)/4, Gamma]`` are omitted; at the pole ``gamma1 =
    (kappa+Gamma)/2`` the point is kept with the ``diverges`` flag set.
    """
    G = params.Gamma
    s = params.kappa + G
    lo = 0.25 * s
    pts = []
    for g1 in gamma1_grid:
        g1 = float(g1)
        if g1 < lo - 1e-12 * G or g1 > G + 1e-12 * G:
            continue
        if abs(s - 2.0 * g1) < _DIVERGE_TOL * G:
            pts.append(WorkingAreaPoint(g1 / G, math.inf, 0, True))
            continue
        gx = _single_res_gx(params, g1)
        if gx < 0.0:
            # only possible from rounding right at the lower edge
            gx = 0.0
        pts.append(WorkingAreaPoint(g1 / G, gx, 0, False))
    return WorkingAreaCurve(WorkingAreaCase.SINGLE_PHOTON_RESONANCE, params, tuple(pts))


def _two_res_x(params: ModelParams, g1: float) -> float:
    """|x|(gamma1) of the two-photon-resonance separation condition."""
    s = params.kappa + params.Gamma
    return (2.0 / s) * math.log(2.0 * g1**2 / ((2.0 * g1 - s) * s))


def _two_res_g1_at_x(params: ModelParams, x: float) -> float:
    """Inverse of :func:`_two_res_x` on the branch gamma1 in (s/2, s)."""
    s = params.kappa + params.Gamma
    E = math.exp(0.5 * s * x)
    return 0.5 * s * (E - math.sqrt(E * (E - 2.0)))


def working_area_two_res(
    params: ModelParams,
    gx_ceiling: float = 20.0,
    scan_points: int = 80,
    tol: float = 1e-10,
) -> WorkingAreaCurve:
    """Exact finite-Kerr working area at two-photon resonance.

    Substitutes the separation condition into the tangent condition and
    root-finds the mismatch over gamma1, one tangent branch ``n`` at a
    time (``U |x|`` restricted to ``(n pi - pi/2, n pi + pi/2)``), up to
    separations ``Gamma |x| <= gx_ceiling``.  Roots are refined to an
    absolute tolerance ``tol`` in gamma1/Gamma by bracketed root finding.
    The returned points are exact zeros of the transmitted density, sorted
    by (branch, gamma1).

    The curve is empty when the domain ``(kappa+Gamma)/2 < gamma1 <=
    Gamma`` is empty (kappa >= Gamma) or when no branch meets it below the
    ceiling.
    """
    G = params.Gamma
    s = params.kappa + G
    U = params.U
    pts: list[WorkingAreaPoint] = []
    if s >= 2.0 * G or U == 0.0:
        return WorkingAreaCurve(WorkingAreaCase.TWO_PHOTON_RESONANCE, params, ())
    x_cap = gx_ceiling / G

    def mismatch(n: int) -> Callable[[float], float]:
        def f(g1: float) -> float:
            x = _two_res_x(params, g1)
            return U * x - n * math.pi - math.atan((s - 2.0 * g1) / (4.0 * U))

        return f

    n = 0
    while n * math.pi - 0.5 * math.pi <= U * x_cap:
        # gamma1 window where the separation lies in this branch's interval
        x_hi = min((n * math.pi + 0.5 * math.pi + 0.5) / U, x_cap)
        x_lo = max((n * math.pi - 0.5 * math.pi - 0.5) / U, _two_res_x(params, G))
        if x_hi > x_lo:
            g_lo = _two_res_g1_at_x(params, x_hi)
            g_hi = min(_two_res_g1_at_x(params, x_lo), G)
            if g_hi > g_lo:
                f = mismatch(n)
                grid = np.linspace(g_lo, g_hi, scan_points)
                vals = np.array([f(g) for g in grid])
                for i in range(len(grid) - 1):
                    if vals[i] == 0.0:
                        root = grid[i]
                    elif vals[i] * vals[i + 1] < 0.0:
                        root = brentq(f, grid[i], grid[i + 1], xtol=tol * G)
                    else:
                        continue
                    gx = G * _two_res_x(params, float(root))
                    if gx <= gx_ceiling + 1e-9:
                        pts.append(WorkingAreaPoint(float(root) / G, gx, n, False))
        n += 1
    pts.sort(key=lambda p: (p.branch, p.gamma1_over_Gamma))
    return WorkingAreaCurve(WorkingAreaCase.TWO_PHOTON_RESONANCE, params, tuple(pts))


@dataclass(frozen=True)
class ZeroScanResult:
    """Minima of the transmitted pair density found by direct scanning.

    ``points`` holds (gamma1/Gamma, Gamma*|x|) for every refined local
    minimum whose density is below ``threshold`` times the free pair
    density.  ``degenerate_gamma1`` lists couplings at which the
    transmitted amplitude vanishes identically (linear cavity with the
    plane part nulled), where minima are meaningless.
    """

    points: tuple[tuple[float, float], ...]
    threshold: float
    degenerate_gamma1: tuple[float, ...] = field(default=())

    @property
    def degenerate_full_null(self) -> bool:
        return bool(self.degenerate_gamma1)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def numeric_zero_scan(
    params: ModelParams,
    incoming: TwoPhotonIn,
    gamma1_grid: Sequence[float],
    x_grid: Sequence[float],
    threshold: float = 1e-8,
) -> ZeroScanResult:
    """Locate near-zeros of |psi_tt|^2 by grid scan plus local refinement.

    For each absolute gamma1 value (gamma2 keeps the total coupling of
    ``params`` fixed) the density is sampled at pair center zero over the
    separations in ``x_grid``, interior local minima are refined by
    golden-section search, and minima below ``threshold`` times the free
    pair density 1/(2 pi^2) are reported in reduced units.

    ``threshold`` is relative to the free pair density so the criterion
    does not depend on the wavefunction normalization convention.
    """
    G = params.Gamma
    xs = np.asarray(sorted(float(v) for v in x_grid))
    if xs.size < 3:
        raise ValueError("x_grid needs at least 3 points for minimum bracketing")
    cutoff = threshold * FREE_PAIR_DENSITY
    pts: list[tuple[float, float]] = []
    degenerate: list[float] = []
    for g1 in gamma1_grid:
        g1 = float(g1)
        if not 0.0 <= g1 <= G:
            raise ValueError(f"gamma1 grid value {g1} outside [0, Gamma={G}]")
        p = ModelParams(params.omega_a, params.kappa, params.U, g1, G - g1)
        fld = TwoPhotonField(p, incoming)
        if abs(fld.coeffs.D) == 0.0 and abs(fld.t_k1 * fld.t_k2) < 1e-14:
            degenerate.append(g1 / G)
            continue

        def dens(x: float) -> float:
            return float(np.abs(fld.psi_tt(-0.5 * x, 0.5 * x)) ** 2)

        vals = np.array([dens(x) for x in xs])
        for i in range(1, len(xs) - 1):
            if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
                res = minimize_scalar(
                    dens, bracket=(xs[i - 1], xs[i], xs[i + 1]), method="golden",
                    options={"xtol": 1e-12},
                )
                if res.fun < cutoff:
                    pts.append((g1 / G, G * float(res.x)))
    return ZeroScanResult(tuple(pts), threshold, tuple(degenerate))


def nonreciprocity_contrast(
    params: ModelParams,
    omega_k1: float,
    omega_k2: float,
    x1: float,
    x2: float,
) -> float:
    """Directional contrast of the transmitted pair density at one point.

    Returns ``(|psi_tt|^2 - |psi~_tt|^2) / (|psi_tt|^2 + |psi~_tt|^2)``
    comparing left and right incidence at the same coordinates (the
    transmitted density depends only on the photon separation, so mirrored
    and identical coordinates give the same value).  A vanishing
    denominator yields 0.  Ranges over [-1, 1]; -1 means the left-incident
    pair is fully blocked while the right-incident one passes.
    """
    left = TwoPhotonField(params, TwoPhotonIn(Direction.LEFT_INCIDENT, omega_k1, omega_k2))
    right = TwoPhotonField(params, TwoPhotonIn(Direction.RIGHT_INCIDENT, omega_k1, omega_k2))
    a = float(np.abs(left.psi_tt(x1, x2)) ** 2)
    b = float(np.abs(right.psi_tt(x1, x2)) ** 2)
    if a + b == 0.0:
        return 0.0
    return (a - b) / (a + b)


WORKING_AREA_HEADER = ("gamma1_over_Gamma", "Gamma_abs_x", "branch", "diverges")


def write_working_area_csv(path: str | os.PathLike, curve: WorkingAreaCurve) -> None:
    """Emit a working-area curve as CSV rows gamma1/Gamma, Gamma|x|,
    branch, diverges (0/1); diverging points carry ``inf``."""
    rows: Iterable = (
        (p.gamma1_over_Gamma, p.Gamma_abs_x, p.branch, int(p.diverges)) for p in curve
    )
    write_csv(path, WORKING_AREA_HEADER, rows)
