"""Concurrence of 4-dimensional states: numeric spectrum path and closed forms.

The numeric path follows the standard two-qubit construction: with the
spin-flipped state rho_tilde = U rho* U for U = sigma_y x sigma_y, the
concurrence is

    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))

where l1 >= ... >= l4 are the eigenvalues of R = rho U rho* U.  R is not
Hermitian, so its spectrum is computed as that of the positive-semidefinite
matrix sqrt(rho) rho_tilde sqrt(rho), which shares R's eigenvalues.

For pure inputs evolved through each channel this module also provides the
closed-form spectra, so every analytic value can be cross-checked against
the numeric path.  Both paths share one spectrum-assembly convention:
descending order, a clamp for negative rounding, and an absolute floor
(SPECTRUM_ZERO_FLOOR) below which an eigenvalue is indistinguishable from
the rounding noise of the matrix products and is treated as an exact zero.
R's eigenvalues are bounded by 1 for unit-trace states, so the floor is a
few times machine epsilon; without it, sqrt of an O(eps) spurious
eigenvalue would inject ~1e-8 of fake concurrence into every rank-deficient
case.  Quadratic small roots are evaluated through exact product
identities (l_small = product / l_large) rather than subtraction, which
keeps them accurate enough for the shared floor to act consistently on the
analytic and numeric sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotPSD, ParamOutOfRange
from .states import DensityMatrix4, PolarParams, PureState4, real_amplitudes

#: Eigenvalues of R below this are rounding noise and become exact zeros.
SPECTRUM_ZERO_FLOOR = 16.0 * np.finfo(float).eps

#: Negative eigenvalues above this magnitude are genuine invariant violations.
NEG_EIG_TOL = linalg.PSD_EIG_TOL

SPIN_FLIP = linalg.tensor2x2(linalg.SIGMA_Y, linalg.SIGMA_Y)
SPIN_FLIP.setflags(write=False)


@dataclass(frozen=True)
class RSpectrum:
    """The four eigenvalues of R, descending and clamped nonnegative."""

    lambdas: tuple[float, float, float, float]


@dataclass(frozen=True)
class ADIntraParts:
    """Intermediate quantities S, T with C^2 = S - T under intraparticle AD."""

    s: float
    t: float


def _assemble_spectrum(values) -> RSpectrum:
    lam = np.sort(np.asarray(values, dtype=float))[::-1]
    if lam[-1] < -NEG_EIG_TOL:
        raise NotPSD(f"R eigenvalue {lam[-1]:.3e} below -{NEG_EIG_TOL}")
    lam = np.where(lam < SPECTRUM_ZERO_FLOOR, 0.0, lam)
    return RSpectrum(tuple(float(x) for x in lam))


def concurrence_from_spectrum(spectrum: RSpectrum) -> float:
    s = np.sqrt(spectrum.lambdas)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def spin_flip(rho_mat: np.ndarray) -> np.ndarray:
    """rho_tilde = (sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    return SPIN_FLIP @ rho_mat.conj() @ SPIN_FLIP


def r_matrix(rho: DensityMatrix4) -> np.ndarray:
    """R = rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y); not Hermitian."""
    return rho.m @ spin_flip(rho.m)


def r_spectrum(rho: DensityMatrix4) -> RSpectrum:
    """Eigenvalues of R via the Hermitian product sqrt(rho) rho_tilde sqrt(rho)."""
    root = linalg.psd_sqrt(rho.m)
    h = root @ spin_flip(rho.m) @ root
    return _assemble_spectrum(np.linalg.eigvalsh(h))


def concurrence_numeric(rho: DensityMatrix4) -> float:
    """Concurrence from the numeric spectrum of R; always in [0, 1]."""
    return concurrence_from_spectrum(r_spectrum(rho))


def _concurrence_numeric_grid(rhos: np.ndarray) -> np.ndarray:
    """Vectorized numeric concurrence for an (N, 4, 4) stack of states.

    Same arithmetic as concurrence_numeric per slice, batched through the
    stacked eigensolvers.
    """
    w, v = np.linalg.eigh(rhos)
    root = (v * np.sqrt(np.clip(w, 0.0, None))[..., None, :]) @ np.conj(
        np.swapaxes(v, -1, -2)
    )
    tilde = SPIN_FLIP @ rhos.conj() @ SPIN_FLIP
    lam = np.linalg.eigvalsh(root @ tilde @ root)[..., ::-1]
    lam = np.where(lam < SPECTRUM_ZERO_FLOOR, 0.0, lam)
    s = np.sqrt(lam)
    return np.maximum(0.0, s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3])


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ParamOutOfRange(f"channel parameter {p!r} outside [0, 1]")
    return p


def _two_level_spectrum(s_val: float, t_val: float) -> RSpectrum:
    """Spectrum {l+, l-, 0, 0} from the S, T pair of a rank-2 output.

    l+- = (S +- sqrt(S^2 - T^2)) / 2; the small root uses l+ l- = T^2 / 4
    and the discriminant is factored as (S-T)(S+T) to avoid cancellation.
    """
    s_val = max(s_val, 0.0)
    diff = max(s_val - t_val, 0.0)
    lam_plus = 0.5 * (s_val + math.sqrt(diff) * math.sqrt(s_val + t_val))
    lam_minus = (t_val * t_val) / (4.0 * lam_plus) if lam_plus > 0.0 else 0.0
    return _assemble_spectrum((lam_plus, lam_minus, 0.0, 0.0))


# --- intraparticle amplitude damping -----------------------------------------

def ad_intra_parts(s: PureState4, p: float) -> ADIntraParts:
    """The S and T combinations whose difference is the squared concurrence.

    The two nonzero eigenvalues of R are (S +- sqrt(S^2 - T^2)) / 2, and
    C = sqrt(l+) - sqrt(l-) collapses to sqrt(S - T) = 2|bc sqrt(1-P) - ad|
    sqrt(1-P).
    """
    p = _check_p(p)
    a, b, c, d = s.amplitudes
    q = 1.0 - p
    cross = 2.0 * (a * d * (b * c).conjugate()).real
    s_val = (
        4.0 * abs(b) ** 2 * abs(c) ** 2 * q * q
        - 4.0 * q ** 1.5 * cross
        + 2.0 * abs(d) ** 2 * q * (p + (2.0 - p) * abs(a) ** 2)
    )
    t_val = 2.0 * p * q * (1.0 - abs(a) ** 2) * abs(d) ** 2
    return ADIntraParts(s=s_val, t=t_val)


def ad_intra_spectrum(s: PureState4, p: float) -> RSpectrum:
    """Closed-form spectrum of R for a pure state under intraparticle AD.

    The evolved state has rank <= 2, so two eigenvalues vanish identically
    and the other two follow from the S, T pair.
    """
    parts = ad_intra_parts(s, p)
    return _two_level_spectrum(parts.s, parts.t)


def concurrence_ad_intra(s: PureState4, p: float) -> float:
    """Exact concurrence of a pure state after intraparticle amplitude damping.

    Evaluates 2 |bc sqrt(1-P) - ad| sqrt(1-P) through the closed-form
    spectrum, i.e. with the same zero-floor convention as the numeric path;
    equivalent to damping b, c, d by sqrt(1-P) while the ground-level
    amplitude a is protected.
    """
    return concurrence_from_spectrum(ad_intra_spectrum(s, p))


def concurrence_ad_intra_polar(pp: PolarParams, p: float) -> float:
    """Polar form of the intraparticle-AD concurrence.

    C = 2 sqrt(1-P) * | V1 - V2 | for planar vectors of lengths
    |b||c| sqrt(1-P) and |a||d| separated by delta_theta; only the phase
    combination delta_theta enters, not the individual phases.
    """
    p = _check_p(p)
    q = 1.0 - p
    bc = pp.mag_b * pp.mag_c
    ad = pp.mag_a * pp.mag_d
    gap = (
        bc * bc * q
        + ad * ad
        - 2.0 * ad * bc * math.sqrt(q) * math.cos(pp.delta_theta)
    )
    diff = 4.0 * q * max(gap, 0.0)  # S - T, the squared concurrence
    t_val = 2.0 * p * q * (1.0 - pp.mag_a ** 2) * pp.mag_d ** 2
    return concurrence_from_spectrum(_two_level_spectrum(diff + t_val, t_val))


# --- interparticle amplitude damping ------------------------------------------

def ad_inter_spectrum(s: PureState4, p: float) -> RSpectrum:
    """Closed-form spectrum of R for a real pure state under interparticle AD.

    The spectrum is {l+, mu, mu, mu^2 / l+} with mu = (d^2 P (1-P))^2 and
    l+ = 2 x^2 (1-P)^2 + mu + 2 (1-P)^2 |x| sqrt(x^2 + d^4 P^2), x = ad - bc;
    the degenerate pair mu and the product identity l+ l- = mu^2 match what
    the numeric spectrum exhibits.
    """
    p = _check_p(p)
    a, b, c, d = real_amplitudes(s, require_nonnegative=True)
    q = 1.0 - p
    x = a * d - b * c
    mu_root = d * d * p * q
    mu = mu_root * mu_root
    lam_plus = (
        2.0 * x * x * q * q
        + mu
        + 2.0 * q * q * abs(x) * math.sqrt(x * x + d ** 4 * p * p)
    )
    lam_minus = (mu * mu) / lam_plus if lam_plus > 0.0 else 0.0
    return _assemble_spectrum((lam_plus, mu, mu, lam_minus))


def concurrence_ad_inter(s: PureState4, p: float) -> float:
    """Closed-form concurrence of a real pure state under interparticle AD.

    max(0, sqrt(l+) - sqrt(l-) - 2 d^2 P (1-P)); raises
    ComplexStateUnsupported unless all amplitudes are real and nonnegative.
    """
    return concurrence_from_spectrum(ad_inter_spectrum(s, p))


# --- intraparticle phase damping ----------------------------------------------

def pd_intra_spectrum(s: PureState4, p: float) -> RSpectrum:
    """Closed-form spectrum of R for a pure state under intraparticle PD.

    l3 = |ad|^2 P^2 and l4 = |bc|^2 P^2; the l1, l2 pair solves a quadratic
    with sum |ad - bc|^2 (2-P)^2 + 2 Re(ad (bc)*) P (4-3P) and product
    (|a||b||c||d| P (4-3P))^2.  For real amplitudes the coefficients reduce
    to the plain products (ad - bc)^2 and (abcd)^2, so one expression covers
    the phase-free and complex cases alike.
    """
    p = _check_p(p)
    a, b, c, d = s.amplitudes
    ad = a * d
    bc = b * c
    y = (ad * bc.conjugate()).real * p * (4.0 - 3.0 * p)
    alpha = abs(ad - bc) ** 2 * (2.0 - p) ** 2 + 2.0 * y
    y_sq = (abs(a) * abs(b) * abs(c) * abs(d) * p * (4.0 - 3.0 * p)) ** 2
    l3 = (abs(ad) * p) ** 2
    l4 = (abs(bc) * p) ** 2
    disc = max(alpha * alpha - 4.0 * y_sq, 0.0)
    l1 = 0.5 * (alpha + math.sqrt(disc))
    l2 = y_sq / l1 if l1 > 0.0 else 0.0
    return _assemble_spectrum((l1, l2, l3, l4))


def concurrence_pd_intra(s: PureState4, p: float) -> float:
    """Closed-form concurrence of a pure state under intraparticle PD."""
    return concurrence_from_spectrum(pd_intra_spectrum(s, p))


# --- intraparticle depolarizing -----------------------------------------------

def dp_intra_spectrum(s: PureState4, p: float) -> RSpectrum:
    """Closed-form spectrum of R for a pure state under intraparticle DP.

    l3 = l4 = P^2/16 independent of the state; l1, l2 depend on the state
    only through |ad - bc| (the modulus covers real and complex amplitudes
    alike) with product l1 l2 = phi^2 for phi = (P/4)(1 - 3P/4).
    """
    p = _check_p(p)
    a, b, c, d = s.amplitudes
    m = abs(a * d - b * c)
    q = 1.0 - p
    phi = (p / 4.0) * (1.0 - 0.75 * p)
    l1 = 2.0 * m * m * q * q + phi + 2.0 * m * q * math.sqrt(m * m * q * q + phi)
    l2 = (phi * phi) / l1 if l1 > 0.0 else 0.0
    return _assemble_spectrum((l1, l2, p * p / 16.0, p * p / 16.0))


def concurrence_dp_intra(s: PureState4, p: float) -> float:
    """Closed-form concurrence of a pure state under intraparticle DP."""
    return concurrence_from_spectrum(dp_intra_spectrum(s, p))
