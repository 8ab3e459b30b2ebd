"""Two-photon scattering state of the chirally coupled Kerr cavity.

The outgoing two-photon state splits into three channels: both photons
transmitted (``psi_tt``), both reflected (``psi_rr``), and one of each
(``psi_rt``).  Every channel is the sum of

* a plane-wave part built from products of single-photon amplitudes, and
* a bound part ``D * exp(i omega x_c) * exp([i(omega - 2 omega_a) -
  (kappa + Gamma)] |x| / 2)`` that decays exponentially in the photon
  separation ``x = x2 - x1`` (for ``psi_rt`` the roles of the separation
  and the pair center ``x_c = (x1 + x2)/2`` are interchanged), weighted by
  direction-dependent coupling ratios.

Coordinates are physical positions with the cavity at the origin.  For
``psi_rt`` the first argument is the photon leaving on the right of the
cavity (moving in +x) and the second the photon leaving on the left; which
of the two is the transmitted one depends on the incidence direction.

The bound part originates from the two photons jointly occupying the
nonlinear cavity; its strength ``D`` is proportional to the Kerr constant
``U`` and vanishes for a linear cavity.

The same state expressed in the even/odd mode basis (the combination of
right- and left-movers that does or does not couple to the cavity) is
available through :func:`even_odd_amplitudes`; those amplitudes are
piecewise exponentials with known jump relations at the coupling point and
feed the independent residual checks in :mod:`chiral_diode.verification`.

Two conventions are provided for the mixed channel ``psi_rt``:

* ``"printed"`` (default): plane part written as ``1/(4 pi)`` times the
  symmetrized incident envelope, with transmission and reflection factors
  averaged over both pairings;
* ``"reconstructed"``: plane part obtained by transforming the even/odd
  solution back to the chiral basis, ``1/(2 pi)`` times the two momentum
  pairings each carrying its own amplitude product.

The two differ (the first is not consistent with the even/odd solution);
verification reports both.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .io_utils import write_csv
from .model import Direction, ModelParams, TwoPhotonIn
from .single_photon import even_mode_t, reflection_amplitude, transmission_amplitude

__all__ = [
    "BoundStateCoeffs",
    "TwoPhotonField",
    "EvenOddAmplitudes",
    "bound_coeffs",
    "even_odd_amplitudes",
    "bound_asymptote",
    "map_two_photon",
    "write_map_csv",
    "write_map_binary",
    "read_map_binary",
    "MAP_MAGIC",
]


def _step(x):
    """Unit step with the midpoint value 1/2 at the discontinuity."""
    x = np.asarray(x)
    return np.where(x > 0, 1.0, np.where(x < 0, 0.0, 0.5))


@dataclass(frozen=True)
class BoundStateCoeffs:
    """Constants governing the cavity-mediated two-photon bound state.

    ``m_a1``/``m_a2`` weigh the incoming waveguide-plus-cavity amplitude,
    ``beta_ki = m_ai * t_ki`` the outgoing one, ``chi`` the extra outgoing
    wave at the complex momentum ``rho = omega - omega_a + i(kappa+Gamma)/2``
    generated by the Kerr interaction, and ``D = sqrt(Gamma/2) chi / i`` the
    resulting bound-state strength in the waveguide channels.  ``phi_aa`` is
    the doubly occupied cavity amplitude and ``sigma_ki = m_ai / sqrt(2)``
    the odd-mode-plus-cavity weights.
    """

    m_a1: complex
    m_a2: complex
    chi: complex
    rho: complex
    D: complex
    beta_k1: complex
    beta_k2: complex
    sigma_k1: complex
    sigma_k2: complex
    phi_aa: complex


def bound_coeffs(params: ModelParams, incoming: TwoPhotonIn) -> BoundStateCoeffs:
    """Evaluate the bound-state constants for one incident photon pair.

    All denominators carry the strictly positive imaginary part
    ``(kappa + Gamma)/2``, so every field is finite.  ``chi`` and ``D`` are
    proportional to ``U`` and vanish exactly for a linear cavity.
    """
    G = params.Gamma
    eta = 0.5 * (params.kappa + G)
    w1, w2 = incoming.omega_k1, incoming.omega_k2
    omega = incoming.omega

    # each m pairs with the opposite photon's detuning
    m_a1 = np.sqrt(G) / (2.0 * np.pi * (w2 - params.omega_a + 1j * eta))
    m_a2 = np.sqrt(G) / (2.0 * np.pi * (w1 - params.omega_a + 1j * eta))
    pair_pole = params.omega_a - 0.5 * omega + params.U - 1j * eta
    chi = 1j * 4.0 * np.pi * np.sqrt(G) * params.U * m_a1 * m_a2 / pair_pole
    rho = omega - params.omega_a + 1j * eta
    D = np.sqrt(G / 2.0) * chi / 1j
    t1 = even_mode_t(params, w1)
    t2 = even_mode_t(params, w2)
    phi_aa = -np.sqrt(G) * (m_a1 + m_a2) / (np.sqrt(2.0) * pair_pole)
    return BoundStateCoeffs(
        m_a1=complex(m_a1),
        m_a2=complex(m_a2),
        chi=complex(chi),
        rho=complex(rho),
        D=complex(D),
        beta_k1=complex(m_a1 * t1),
        beta_k2=complex(m_a2 * t2),
        sigma_k1=complex(m_a1 / np.sqrt(2.0)),
        sigma_k2=complex(m_a2 / np.sqrt(2.0)),
        phi_aa=complex(phi_aa),
    )


class TwoPhotonField:
    """Evaluator of the outgoing two-photon wavefunctions.

    Immutable after construction; all point evaluations are pure, accept
    scalars or numpy arrays, and broadcast.  Amplitude products and the
    bound-state constants are cached once per (params, incoming) pair so
    dense maps cost one vectorized expression per channel.
    """

    def __init__(self, params: ModelParams, incoming: TwoPhotonIn):
        self.params = params
        self.incoming = incoming
        self.coeffs = bound_coeffs(params, incoming)

        G = params.Gamma
        w1, w2 = incoming.omega_k1, incoming.omega_k2
        d = incoming.direction
        self._k1, self._k2 = w1, w2
        self._omega = incoming.omega
        self._decay = 1j * (self._omega - 2.0 * params.omega_a) - (params.kappa + G)
        self.t_k1 = transmission_amplitude(params, w1, d)
        self.t_k2 = transmission_amplitude(params, w2, d)
        self.r_k1 = reflection_amplitude(params, w1)
        self.r_k2 = reflection_amplitude(params, w2)

        g_near = params.gamma1 if d is Direction.LEFT_INCIDENT else params.gamma2
        g_far = params.gamma2 if d is Direction.LEFT_INCIDENT else params.gamma1
        self._w_tt = g_near**2 / G**2
        self._w_rr = params.gamma1 * params.gamma2 / G**2
        self._w_rt = np.sqrt(2.0 * g_near**3 * g_far) / G**2
        # incident photons move in +x (left incidence) or -x direction
        self._sgn = 1.0 if d is Direction.LEFT_INCIDENT else -1.0
        # mixed channel: amplitude products for photon 1 resp. photon 2
        # exiting on the right of the cavity
        if d is Direction.LEFT_INCIDENT:
            self._pair_1 = self.t_k1 * self.r_k2
            self._pair_2 = self.t_k2 * self.r_k1
        else:
            self._pair_1 = self.r_k1 * self.t_k2
            self._pair_2 = self.r_k2 * self.t_k1

    # -- building blocks -------------------------------------------------

    def incident_envelope(self, x1, x2):
        """Symmetrized free two-photon plane wave, norm 1/(2 sqrt2 pi)."""
        k1, k2 = self._k1, self._k2
        return (np.exp(1j * (k1 * x1 + k2 * x2)) + np.exp(1j * (k1 * x2 + k2 * x1))) / (
            2.0 * np.sqrt(2.0) * np.pi
        )

    def _bound_separation(self, x1, x2):
        """Bound factor decaying in the separation |x2 - x1|."""
        xc = 0.5 * (np.asarray(x1) + np.asarray(x2))
        sep = np.abs(np.asarray(x2) - np.asarray(x1))
        return self.coeffs.D * np.exp(1j * self._sgn * self._omega * xc) * np.exp(
            0.5 * self._decay * sep
        )

    # -- channels --------------------------------------------------------

    def psi_tt(self, x1, x2):
        """Both photons transmitted."""
        s = self._sgn
        plane = self.incident_envelope(s * np.asarray(x1), s * np.asarray(x2))
        return plane * self.t_k1 * self.t_k2 + self._w_tt * self._bound_separation(x1, x2)

    def psi_rr(self, x1, x2):
        """Both photons reflected."""
        s = self._sgn
        plane = self.incident_envelope(-s * np.asarray(x1), -s * np.asarray(x2))
        return plane * self.r_k1 * self.r_k2 + self._w_rr * self._bound_separation(-np.asarray(x1), -np.asarray(x2))

    def psi_rt(self, x1, x2, convention: str = "printed"):
        """One photon exits right of the cavity (at ``x1``, moving in +x),
        the other exits left (at ``x2``, moving in -x).

        For left incidence the right-exit photon is the transmitted one,
        for right incidence the reflected one.  The bound factor decays in
        the pair center here because the two photons leave the cavity in
        opposite directions.  See the module docstring for the two
        plane-part conventions.
        """
        x1 = np.asarray(x1)
        x2 = np.asarray(x2)
        k1, k2 = self._k1, self._k2
        if convention == "printed":
            plane = (
                self.incident_envelope(x1, -x2)
                * (self._pair_1 + self._pair_2)
                / (4.0 * np.pi)
            )
        elif convention == "reconstructed":
            plane = (
                self._pair_1 * np.exp(1j * (k1 * x1 - k2 * x2))
                + self._pair_2 * np.exp(1j * (k2 * x1 - k1 * x2))
            ) / (2.0 * np.pi)
        else:
            raise ValueError(f"unknown psi_rt convention {convention!r}")
        xc = 0.5 * (x1 + x2)
        bound = self.coeffs.D * np.exp(0.5j * self._omega * (x1 - x2)) * np.exp(
            self._decay * np.abs(xc)
        )
        return plane + self._w_rt * bound

    def densities(self, x1, x2, channels=("tt",), convention: str = "printed"):
        """|psi|^2 for the requested channels, as a dict keyed by channel."""
        out = {}
        for ch in channels:
            if ch == "tt":
                out[ch] = np.abs(self.psi_tt(x1, x2)) ** 2
            elif ch == "rr":
                out[ch] = np.abs(self.psi_rr(x1, x2)) ** 2
            elif ch == "rt":
                out[ch] = np.abs(self.psi_rt(x1, x2, convention)) ** 2
            else:
                raise ValueError(f"unknown channel {ch!r}")
        return out


# -- even/odd mode basis -------------------------------------------------


@dataclass(frozen=True)
class EvenOddAmplitudes:
    """All even/odd-basis amplitudes at one coordinate pair.

    ``phi_ee``/``phi_oe``/``phi_eo``/``phi_oo`` are the waveguide pair
    amplitudes (subscripts name the mode of each photon), ``phi_ae`` and
    ``phi_oa`` the one-photon-in-cavity amplitudes evaluated at the first
    and second coordinate respectively, and ``phi_aa`` the doubly occupied
    cavity amplitude.
    """

    phi_ee: complex
    phi_ae: complex
    phi_oe: complex
    phi_eo: complex
    phi_oo: complex
    phi_oa: complex
    phi_aa: complex


class EvenOddField:
    """Region-resolved evaluators for the even/odd-basis amplitudes.

    Every amplitude is a piecewise sum of exponentials; each evaluator
    takes optional side arguments (+1 or -1) that select the closed form of
    the region approached from that side, which gives exact one-sided
    limits on the discontinuity lines and exact analytic derivatives off
    them.  With sides omitted, step functions use the midpoint rule.

    ``coeffs`` may be injected to probe sensitivity of downstream checks;
    by default they are computed from (params, incoming).
    """

    def __init__(
        self,
        params: ModelParams,
        incoming: TwoPhotonIn,
        coeffs: BoundStateCoeffs | None = None,
        t_k: tuple[complex, complex] | None = None,
    ):
        if incoming.direction is not Direction.LEFT_INCIDENT:
            raise ValueError(
                "even/odd amplitudes are defined for left incidence; mirror "
                "the problem (swap gamma1/gamma2, negate coordinates) for "
                "right incidence"
            )
        self.params = params
        self.incoming = incoming
        self.coeffs = bound_coeffs(params, incoming) if coeffs is None else coeffs
        w1, w2 = incoming.omega_k1, incoming.omega_k2
        if t_k is None:
            t_k = (even_mode_t(params, w1), even_mode_t(params, w2))
        self.t_k1, self.t_k2 = t_k
        self._k = (w1, w2)
        self._omega = incoming.omega
        self._decay = 1j * (self._omega - 2.0 * params.omega_a) - (
            params.kappa + params.Gamma
        )

    # single-photon even/odd mode functions ------------------------------

    def mode_even(self, ki: int, x, side=None):
        """phi_e for photon ki: incident plus transmitted plane wave."""
        k = self._k[ki - 1]
        t = self.t_k1 if ki == 1 else self.t_k2
        x = np.asarray(x, dtype=float)
        pos = _step(x) if side is None else _step(np.sign(x) + np.asarray(side) * (x == 0))
        return ((1.0 - pos) + t * pos) * np.exp(1j * k * x) / np.sqrt(2.0 * np.pi)

    def mode_odd(self, ki: int, x):
        """phi_o for photon ki: free plane wave."""
        k = self._k[ki - 1]
        return np.exp(1j * k * np.asarray(x, dtype=float)) / np.sqrt(2.0 * np.pi)

    # pair amplitudes ----------------------------------------------------

    def _bound_support(self, x1, x2, side1=None, side2=None):
        """Indicator of the doubly transmitted region, midpoint valued.

        The bound term lives where both photons have passed the cavity:
        theta(x2 - x1) theta(x1) + theta(x1 - x2) theta(x2).
        """
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        s1 = _step(x1) if side1 is None else _step(np.sign(x1) + np.asarray(side1) * (x1 == 0))
        s2 = _step(x2) if side2 is None else _step(np.sign(x2) + np.asarray(side2) * (x2 == 0))
        return _step(x2 - x1) * s1 + _step(x1 - x2) * s2

    def bound_term(self, x1, x2, side1=None, side2=None):
        """Kerr-induced bound contribution to phi_ee."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        xc = 0.5 * (x1 + x2)
        sep = np.abs(x2 - x1)
        return (
            self._bound_support(x1, x2, side1, side2)
            * self.coeffs.D
            * np.exp(1j * self._omega * xc)
            * np.exp(0.5 * self._decay * sep)
        )

    def phi_ee(self, x1, x2, side1=None, side2=None):
        """Even-even pair amplitude: symmetrized product plus bound term."""
        fact = (
            self.mode_even(1, x1, side1) * self.mode_even(2, x2, side2)
            + self.mode_even(1, x2, side2) * self.mode_even(2, x1, side1)
        ) / np.sqrt(2.0)
        return fact + self.bound_term(x1, x2, side1, side2)

    def d_phi_ee(self, x1, x2):
        """(d/dx1 + d/dx2) phi_ee, analytic; valid off the lines x1=0, x2=0,
        x1=x2 (every term is an exponential with total momentum omega)."""
        return 1j * self._omega * self.phi_ee(x1, x2)

    def phi_ae(self, x, side=None):
        """One photon in the cavity, one even photon at x."""
        c = self.coeffs
        k1, k2 = self._k
        x = np.asarray(x, dtype=float)
        pos = _step(x) if side is None else _step(np.sign(x) + np.asarray(side) * (x == 0))
        before = c.m_a1 * np.exp(1j * k1 * x) + c.m_a2 * np.exp(1j * k2 * x)
        after = (
            c.beta_k1 * np.exp(1j * k1 * x)
            + c.beta_k2 * np.exp(1j * k2 * x)
            + c.chi * np.exp(1j * c.rho * x)
        )
        return (1.0 - pos) * before + pos * after

    def d_phi_ae(self, x):
        """d/dx phi_ae, analytic, valid off x = 0."""
        c = self.coeffs
        k1, k2 = self._k
        x = np.asarray(x, dtype=float)
        pos = _step(x)
        before = 1j * (k1 * c.m_a1 * np.exp(1j * k1 * x) + k2 * c.m_a2 * np.exp(1j * k2 * x))
        after = 1j * (
            k1 * c.beta_k1 * np.exp(1j * k1 * x)
            + k2 * c.beta_k2 * np.exp(1j * k2 * x)
            + c.rho * c.chi * np.exp(1j * c.rho * x)
        )
        return (1.0 - pos) * before + pos * after

    def phi_oe(self, x1, x2, side2=None):
        """Odd photon at x1, even photon at x2."""
        return (
            self.mode_odd(1, x1) * self.mode_even(2, x2, side2)
            + self.mode_even(1, x2, side2) * self.mode_odd(2, x1)
        ) / np.sqrt(2.0)

    def d_phi_oe(self, x1, x2):
        """(d/dx1 + d/dx2) phi_oe, analytic, valid off x2 = 0."""
        return 1j * self._omega * self.phi_oe(x1, x2)

    def phi_oo(self, x1, x2):
        """Both photons odd: symmetrized free product."""
        return (
            self.mode_odd(1, x1) * self.mode_odd(2, x2)
            + self.mode_odd(1, x2) * self.mode_odd(2, x1)
        ) / np.sqrt(2.0)

    def d_phi_oo(self, x1, x2):
        """(d/dx1 + d/dx2) phi_oo, analytic, exact everywhere."""
        return 1j * self._omega * self.phi_oo(x1, x2)

    def phi_oa(self, x):
        """One photon in the cavity, one odd photon at x (shared by the
        odd-even and even-odd sectors)."""
        c = self.coeffs
        k1, k2 = self._k
        x = np.asarray(x, dtype=float)
        return c.sigma_k1 * np.exp(1j * k1 * x) + c.sigma_k2 * np.exp(1j * k2 * x)

    def d_phi_oa(self, x):
        """d/dx phi_oa, analytic, exact everywhere."""
        c = self.coeffs
        k1, k2 = self._k
        x = np.asarray(x, dtype=float)
        return 1j * (
            k1 * c.sigma_k1 * np.exp(1j * k1 * x) + k2 * c.sigma_k2 * np.exp(1j * k2 * x)
        )

    # chiral reconstruction ----------------------------------------------

    def reconstruct_tt(self, x1, x2):
        """psi_tt from the even/odd amplitudes (valid at all coordinates;
        equals the closed form of :class:`TwoPhotonField` where both
        coordinates are downstream of the cavity)."""
        g1, g2 = self.params.gamma1, self.params.gamma2
        G = self.params.Gamma
        return (
            g1**2 * self.phi_ee(x1, x2)
            + g2**2 * self.phi_oo(x1, x2)
            + g1 * g2 * (self.phi_oe(x1, x2) + self.phi_oe(x2, x1))
        ) / G**2

    def reconstruct_rr(self, x1, x2):
        """psi_rr from the even/odd amplitudes."""
        g1, g2 = self.params.gamma1, self.params.gamma2
        G = self.params.Gamma
        return (
            g1
            * g2
            * (
                self.phi_ee(-np.asarray(x1), -np.asarray(x2))
                + self.phi_oo(-np.asarray(x1), -np.asarray(x2))
                - self.phi_oe(-np.asarray(x1), -np.asarray(x2))
                - self.phi_oe(-np.asarray(x2), -np.asarray(x1))
            )
            / G**2
        )

    def reconstruct_rt(self, x1, x2):
        """psi_rt from the even/odd amplitudes (transmitted photon at x1,
        reflected at x2)."""
        g1, g2 = self.params.gamma1, self.params.gamma2
        G = self.params.Gamma
        x1 = np.asarray(x1)
        x2 = np.asarray(x2)
        return (
            np.sqrt(2.0 * g1**3 * g2) * self.phi_ee(x1, -x2)
            - np.sqrt(2.0 * g1 * g2**3) * self.phi_oo(x1, -x2)
            + np.sqrt(2.0 * g1 * g2) * (g2 * self.phi_oe(x1, -x2) - g1 * self.phi_oe(-x2, x1))
        ) / G**2


def even_odd_amplitudes(
    params: ModelParams, incoming: TwoPhotonIn, x1: float, x2: float
) -> EvenOddAmplitudes:
    """All even/odd-basis amplitudes at (x1, x2), midpoint step convention.

    ``phi_ae`` and ``phi_oa`` are one-coordinate functions; they are
    returned at ``x1`` and ``x2`` respectively.
    """
    f = EvenOddField(params, incoming)
    return EvenOddAmplitudes(
        phi_ee=complex(f.phi_ee(x1, x2)),
        phi_ae=complex(f.phi_ae(x1)),
        phi_oe=complex(f.phi_oe(x1, x2)),
        phi_eo=complex(f.phi_oe(x2, x1)),
        phi_oo=complex(f.phi_oo(x1, x2)),
        phi_oa=complex(f.phi_oa(x2)),
        phi_aa=f.coeffs.phi_aa,
    )


# -- asymptotics ---------------------------------------------------------


@dataclass(frozen=True)
class BoundAsymptote:
    """Closed-form transmitted-pair density when only the bound state
    contributes: ``density(x) = amplitude_sq * exp(-decay_rate |x|)``."""

    amplitude_sq: float
    decay_rate: float

    def density(self, x):
        return self.amplitude_sq * np.exp(-self.decay_rate * np.abs(x))


def bound_asymptote(params: ModelParams, case: str) -> BoundAsymptote:
    """Bound-state density profile at full chiral coupling gamma1 = Gamma.

    ``case`` selects the incident pair: ``"single-photon-resonance"`` puts
    both photons at the cavity frequency, ``"two-photon-resonance"`` puts
    one at the cavity frequency and one shifted by twice the Kerr constant,
    which makes the pair resonant with the doubly occupied cavity.  In both
    cases the plane-wave part of ``psi_tt`` vanishes when additionally
    kappa = Gamma, leaving this profile as the full transmitted density.

    Only valid at gamma1 = Gamma (gamma2 = 0); other couplings are
    rejected.
    """
    G = params.Gamma
    if abs(params.gamma1 - G) > 1e-12 * G:
        raise ValueError(
            f"bound asymptote requires gamma1 = Gamma (gamma2 = 0), got "
            f"gamma1={params.gamma1}, Gamma={G}"
        )
    s = params.kappa + G
    U = params.U
    if case == "single-photon-resonance":
        amp = 32.0 * G**4 * U**2 / (np.pi**2 * s**4 * (4.0 * U**2 + s**2))
    elif case == "two-photon-resonance":
        amp = 32.0 * G**4 * U**2 / (np.pi**2 * s**4 * (16.0 * U**2 + s**2))
    else:
        raise ValueError(f"unknown asymptote case {case!r}")
    return BoundAsymptote(amplitude_sq=float(amp), decay_rate=float(s))


# -- dense maps ----------------------------------------------------------


def map_two_photon(
    field: TwoPhotonField,
    x_grid,
    channels=("tt",),
    convention: str = "printed",
    workers: int = 1,
):
    """Densities |psi|^2 on the square grid x_grid x x_grid.

    Returns a dict of channel -> matrix with rows indexed by x1 and columns
    by x2.  ``workers`` > 1 splits the rows into contiguous blocks that are
    evaluated concurrently and reassembled in order, so the result does not
    depend on scheduling.
    """
    x = np.asarray(x_grid, dtype=float)
    x1 = x[:, None]
    x2 = x[None, :]
    if workers <= 1 or x.size < 64:
        return field.densities(x1, x2, channels, convention)

    from concurrent.futures import ThreadPoolExecutor

    blocks = np.array_split(np.arange(x.size), workers)
    out = {ch: np.empty((x.size, x.size)) for ch in channels}

    def fill(idx):
        part = field.densities(x[idx][:, None], x2, channels, convention)
        for ch in channels:
            out[ch][idx] = part[ch]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(fill, blocks))
    return out


MAP_HEADER_BASE = ("x1", "x2")
MAP_MAGIC = b"CDMAP001"


def write_map_csv(path: str | os.PathLike, x_grid, maps: dict) -> None:
    """Emit a map as rows x1, x2, one density column per channel.

    Column order follows the channel order of ``maps`` (tt, then rr, then
    rt when present), named ``psi_<ch>_sq``.
    """
    x = np.asarray(x_grid, dtype=float)
    channels = list(maps)
    header = list(MAP_HEADER_BASE) + [f"psi_{ch}_sq" for ch in channels]

    def rows() -> Iterable:
        for i, a in enumerate(x):
            for j, b in enumerate(x):
                yield [a, b] + [maps[ch][i, j] for ch in channels]

    write_csv(path, header, rows())


def write_map_binary(path: str | os.PathLike, x_grid, matrix: np.ndarray) -> None:
    """Binary map format: 32-byte header then row-major float64 payload.

    Header layout (little endian): 8-byte magic ``CDMAP001``, uint32 rows,
    uint32 cols, float32 x1_min, x1_max, x2_min, x2_max.
    """
    x = np.asarray(x_grid, dtype=float)
    m = np.ascontiguousarray(matrix, dtype="<f8")
    header = MAP_MAGIC + struct.pack(
        "<II4f", m.shape[0], m.shape[1], x[0], x[-1], x[0], x[-1]
    )
    assert len(header) == 32
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(m.tobytes())


def read_map_binary(path: str | os.PathLike):
    """Inverse of :func:`write_map_binary`; returns (matrix, x_range)."""
    with open(path, "rb") as fh:
        header = fh.read(32)
        if header[:8] != MAP_MAGIC:
            raise ValueError(f"not a map file: bad magic {header[:8]!r}")
        rows, cols, x1_min, x1_max, x2_min, x2_max = struct.unpack("<II4f", header[8:])
        data = np.frombuffer(fh.read(), dtype="<f8").reshape(rows, cols)
    return data, (x1_min, x1_max, x2_min, x2_max)
