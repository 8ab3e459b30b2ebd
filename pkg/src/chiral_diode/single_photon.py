"""Closed-form single-photon scattering through the chirally coupled cavity.

A photon incident from the left (right-moving) sees transmission amplitude

    t_left(omega_k) = (Delta + i (kappa - (gamma1 - gamma2))/2)
                      / (Delta + i (kappa + Gamma)/2),

with ``Delta = omega_k - omega_a``; from the right the sign of
``gamma1 - gamma2`` flips.  Both directions share the reflection amplitude

    r(omega_k) = -i sqrt(gamma1 gamma2) / (Delta + i (kappa + Gamma)/2).

On resonance the transmission vanishes exactly when the dissipation matches
the coupling asymmetry, ``kappa = |gamma1 - gamma2| != 0``, which is the
single-photon diode condition: one incidence direction is blocked while the
other still transmits.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .io_utils import write_csv
from .model import Direction, ModelParams, PhotonIn

__all__ = [
    "ScatterCoeffs",
    "DiodeClass",
    "even_mode_t",
    "chiral_coeffs",
    "diode_condition",
    "sweep_single",
    "write_sweep_csv",
]

# Tolerance for classifying the resonant transmission null, relative to Gamma.
DIODE_TOL = 1e-12


@dataclass(frozen=True)
class ScatterCoeffs:
    """Complex amplitudes and probabilities for one photon.

    ``T + R <= 1`` whenever ``kappa >= 0``; the deficit ``loss`` is the
    probability of dissipation into the cavity environment and is computed
    here, once, as ``1 - T - R``.
    """

    t: complex
    r: complex
    T: float
    R: float
    loss: float

    @classmethod
    def from_amplitudes(cls, t: complex, r: complex) -> "ScatterCoeffs":
        T = abs(t) ** 2
        R = abs(r) ** 2
        return cls(t=t, r=r, T=T, R=R, loss=1.0 - T - R)


class DiodeClass(enum.Enum):
    """Resonant transmission-null classification."""

    BLOCKS_LEFT_INCIDENT = "blocks-left-incident"
    BLOCKS_RIGHT_INCIDENT = "blocks-right-incident"
    NO_BLOCK = "no-block"


def even_mode_t(params: ModelParams, omega_k) -> complex:
    """Transmission amplitude of the even (coupled) waveguide mode.

    Supports scalar or array ``omega_k``.
    """
    delta = np.asarray(omega_k, dtype=float) - params.omega_a
    t = (delta + 0.5j * (params.kappa - params.Gamma)) / (
        delta + 0.5j * (params.kappa + params.Gamma)
    )
    return complex(t) if np.ndim(omega_k) == 0 else t


def transmission_amplitude(params: ModelParams, omega_k, direction: Direction) -> complex:
    """Direction-resolved transmission amplitude (array friendly)."""
    delta = np.asarray(omega_k, dtype=float) - params.omega_a
    asym = params.gamma1 - params.gamma2
    if direction is Direction.RIGHT_INCIDENT:
        asym = -asym
    t = (delta + 0.5j * (params.kappa - asym)) / (
        delta + 0.5j * (params.kappa + params.Gamma)
    )
    return complex(t) if np.ndim(omega_k) == 0 else t


def reflection_amplitude(params: ModelParams, omega_k) -> complex:
    """Reflection amplitude, identical for both incidence directions."""
    delta = np.asarray(omega_k, dtype=float) - params.omega_a
    r = -1j * np.sqrt(params.gamma1 * params.gamma2) / (
        delta + 0.5j * (params.kappa + params.Gamma)
    )
    return complex(r) if np.ndim(omega_k) == 0 else r


def chiral_coeffs(params: ModelParams, photon: PhotonIn) -> ScatterCoeffs:
    """Transmission/reflection amplitudes and probabilities for one photon."""
    t = transmission_amplitude(params, photon.omega_k, photon.direction)
    r = reflection_amplitude(params, photon.omega_k)
    return ScatterCoeffs.from_amplitudes(t, r)


def diode_condition(params: ModelParams) -> DiodeClass:
    """Classify the on-resonance (omega_k = omega_a) transmission null.

    The left-incident photon is blocked iff ``kappa = gamma1 - gamma2 != 0``
    and the right-incident one iff ``kappa = gamma2 - gamma1 != 0``, each
    tested to an absolute tolerance of ``1e-12 * Gamma``.
    """
    asym = params.gamma1 - params.gamma2
    tol = DIODE_TOL * params.Gamma
    if abs(asym) <= tol:
        return DiodeClass.NO_BLOCK
    if abs(params.kappa - asym) <= tol:
        return DiodeClass.BLOCKS_LEFT_INCIDENT
    if abs(params.kappa + asym) <= tol:
        return DiodeClass.BLOCKS_RIGHT_INCIDENT
    return DiodeClass.NO_BLOCK


def sweep_single(
    params: ModelParams,
    detuning_grid: Sequence[float],
    gamma1_grid: Sequence[float],
    direction: Direction = Direction.LEFT_INCIDENT,
) -> np.ndarray:
    """Tabulate (Delta/Gamma, gamma1/Gamma, T, R, loss) over a product grid.

    ``gamma1_grid`` holds absolute gamma1 values; for each one gamma2 is
    chosen to keep the total coupling Gamma of ``params`` fixed, matching
    the convention of sweeping the asymmetry at constant Gamma.  Rows are
    ordered with detuning as the outer loop and gamma1 as the inner loop.

    Returns
    -------
    numpy.ndarray
        Shape (len(detuning_grid) * len(gamma1_grid), 5).
    """
    G = params.Gamma
    rows = np.empty((len(detuning_grid) * len(gamma1_grid), 5))
    i = 0
    for delta in detuning_grid:
        omega_k = params.omega_a + delta
        for g1 in gamma1_grid:
            if not 0.0 <= g1 <= G:
                raise ValueError(f"gamma1 grid value {g1} outside [0, Gamma={G}]")
            p = ModelParams(params.omega_a, params.kappa, params.U, g1, G - g1)
            c = chiral_coeffs(p, PhotonIn(direction, omega_k))
            rows[i] = (delta / G, g1 / G, c.T, c.R, c.loss)
            i += 1
    return rows


SWEEP_HEADER = ("detuning_over_Gamma", "gamma1_over_Gamma", "T", "R", "loss")


def write_sweep_csv(path: str | os.PathLike, rows: Iterable[Sequence[float]]) -> None:
    """Emit a sweep table with the canonical header and digit-exact floats."""
    write_csv(path, SWEEP_HEADER, rows)
