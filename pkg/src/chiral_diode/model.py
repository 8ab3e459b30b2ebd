"""Parameter records and unit conventions shared by all other modules.

The physical system is a one-dimensional waveguide whose right-moving and
left-moving photons couple with strengths ``gamma1`` and ``gamma2`` to a
single lossy cavity mode (frequency ``omega_a``, decay rate ``kappa``) that
carries a Kerr photon-photon interaction of strength ``U``.

Conventions
-----------
* The group velocity ``v_c`` is fixed to 1, so frequencies and wavenumbers
  coincide and positions carry units of inverse rate.
* All rates are plain floats in one common unit; the natural normalization
  is the total coupling ``Gamma = gamma1 + gamma2``, and tabulated outputs
  report ``gamma1/Gamma``, ``Gamma*x`` and detunings divided by ``Gamma``.
* Only detunings ``omega_k - omega_a`` enter any observable, so ``omega_a``
  may be set to 0 without loss of generality.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass

__all__ = [
    "Direction",
    "ModelParams",
    "PhotonIn",
    "TwoPhotonIn",
    "make_params",
    "load_config",
    "resolve_thread_count",
]


class Direction(enum.Enum):
    """Side from which the photons enter the waveguide."""

    LEFT_INCIDENT = "left"  # photons travel to the right (+x)
    RIGHT_INCIDENT = "right"  # photons travel to the left (-x)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Validated, immutable set of system parameters.

    Attributes
    ----------
    omega_a : float
        Cavity resonance frequency.
    kappa : float
        Cavity dissipation rate, must be >= 0.
    U : float
        Kerr interaction strength (any sign).
    gamma1 : float
        Coupling rate of right-moving photons, must be >= 0.
    gamma2 : float
        Coupling rate of left-moving photons, must be >= 0.
    v_c : float
        Group velocity; retained for documentation but pinned to 1.
    """

    omega_a: float
    kappa: float
    U: float
    gamma1: float
    gamma2: float
    v_c: float = 1.0

    def __post_init__(self) -> None:
        for name in ("omega_a", "kappa", "U", "gamma1", "gamma2", "v_c"):
            _require_finite(name, getattr(self, name))
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.gamma1 < 0:
            raise ValueError(f"gamma1 must be >= 0, got {self.gamma1}")
        if self.gamma2 < 0:
            raise ValueError(f"gamma2 must be >= 0, got {self.gamma2}")
        if self.gamma1 + self.gamma2 <= 0:
            raise ValueError(
                "gamma1 + gamma2 must be > 0 so the coupling unit Gamma "
                f"is well defined, got gamma1={self.gamma1}, gamma2={self.gamma2}"
            )
        if self.v_c != 1.0:
            raise ValueError(f"v_c is fixed to 1 by convention, got {self.v_c}")

    @property
    def Gamma(self) -> float:
        """Total coupling rate ``gamma1 + gamma2``."""
        return self.gamma1 + self.gamma2

    def swapped(self) -> "ModelParams":
        """Same parameters with the two chiral couplings interchanged."""
        return ModelParams(self.omega_a, self.kappa, self.U, self.gamma2, self.gamma1)


@dataclass(frozen=True)
class PhotonIn:
    """Single incident photon: direction of incidence and frequency."""

    direction: Direction
    omega_k: float

    def __post_init__(self) -> None:
        if not isinstance(self.direction, Direction):
            raise ValueError(f"direction must be a Direction, got {self.direction!r}")
        _require_finite("omega_k", self.omega_k)


@dataclass(frozen=True)
class TwoPhotonIn:
    """Two incident photons from the same side.

    The two frequencies are stored canonically with ``omega_k1 <= omega_k2``;
    every scattering amplitude is symmetric under their exchange.
    """

    direction: Direction
    omega_k1: float
    omega_k2: float

    def __post_init__(self) -> None:
        if not isinstance(self.direction, Direction):
            raise ValueError(f"direction must be a Direction, got {self.direction!r}")
        w1 = _require_finite("omega_k1", self.omega_k1)
        w2 = _require_finite("omega_k2", self.omega_k2)
        if w1 > w2:
            w1, w2 = w2, w1
        object.__setattr__(self, "omega_k1", w1)
        object.__setattr__(self, "omega_k2", w2)

    @property
    def omega(self) -> float:
        """Total frequency of the photon pair."""
        return self.omega_k1 + self.omega_k2


def make_params(
    omega_a: float,
    kappa: float,
    U: float,
    gamma1: float,
    gamma2: float,
) -> ModelParams:
    """Build a validated :class:`ModelParams`.

    Raises
    ------
    ValueError
        If a rate is negative, a value is not finite, or both couplings
        vanish (the coupling unit Gamma would be undefined).
    """
    return ModelParams(omega_a, kappa, U, gamma1, gamma2)


_CONFIG_KEYS = ("omega_a", "kappa", "U", "gamma1", "gamma2")


def load_config(source) -> ModelParams:
    """Read parameters from a JSON object, file path, or mapping.

    The object must use exactly the keys ``omega_a, kappa, U, gamma1,
    gamma2``; an optional ``gamma_scale`` (default 1) multiplies every rate
    and frequency, so values may be written in units of Gamma and rescaled
    in one place.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    elif isinstance(source, dict):
        data = dict(source)
    else:
        raise ValueError(f"config source must be a path or mapping, got {type(source)!r}")

    if not isinstance(data, dict):
        raise ValueError("config root must be a JSON object")

    unknown = set(data) - set(_CONFIG_KEYS) - {"gamma_scale"}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    missing = [k for k in _CONFIG_KEYS if k not in data]
    if missing:
        raise ValueError(f"missing config keys: {missing}")

    scale = float(data.get("gamma_scale", 1.0))
    if not math.isfinite(scale) or scale <= 0:
        raise ValueError(f"gamma_scale must be a positive finite number, got {scale!r}")

    vals = {}
    for key in _CONFIG_KEYS:
        raw = data[key]
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise ValueError(f"config key {key} must be a number, got {raw!r}")
        vals[key] = float(raw) * scale
    return make_params(**vals)


def resolve_thread_count(env: dict | None = None) -> int:
    """Worker cap from the ``CHIRAL_DIODE_THREADS`` environment variable.

    Unset or invalid values resolve to 1 (serial execution stays the
    deterministic default); explicit values are clamped to at least 1.
    """
    env = os.environ if env is None else env
    raw = env.get("CHIRAL_DIODE_THREADS", "")
    try:
        n = int(raw)
    except (TypeError, ValueError):
        return 1
    return max(1, n)
