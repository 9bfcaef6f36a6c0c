"""Pure states of a four-level system, their polar form, and density matrices.

A pure state is a normalized complex amplitude vector (a, b, c, d) over the
basis |a1 b1>, |a1 b2>, |a2 b1>, |a2 b2>.  The polar form keeps magnitudes
and phases separately; the phase combination

    delta_theta = theta_b + theta_c - theta_a - theta_d

controls the interference between the |a||d| and |b||c| contributions to the
concurrence under intraparticle amplitude damping, and is reported in the
interval (-2*pi, 2*pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    ComplexStateUnsupported,
    NotHermitian,
    NotNormalized,
    NotPSD,
    TraceNotOne,
    ZeroVector,
)

NORM_TOL = 1e-10    # |norm^2 - 1| accepted as normalized
TRACE_TOL = 1e-10   # |trace - 1| accepted for density matrices

_TWO_PI = 2.0 * math.pi


def _reduce_delta(x: float) -> float:
    """Map a raw phase combination from (-4*pi, 4*pi) into (-2*pi, 2*pi]."""
    if x > _TWO_PI:
        x -= 2.0 * _TWO_PI
    elif x <= -_TWO_PI:
        x += 2.0 * _TWO_PI
    return x


def _phase(z: complex) -> float:
    """Phase of z in [0, 2*pi); the phase of an exact zero is zero."""
    if z == 0:
        return 0.0
    return cmath.phase(z) % _TWO_PI


@dataclass(frozen=True)
class PureState4:
    """Normalized pure state with complex amplitudes a, b, c, d."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for z in (self.a, self.b, self.c, self.d):
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("amplitudes must be finite")
        norm_sq = sum(abs(z) ** 2 for z in self.amplitudes)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(f"|amplitudes|^2 sums to {norm_sq!r}, not 1")

    @property
    def amplitudes(self) -> tuple[complex, complex, complex, complex]:
        return (complex(self.a), complex(self.b), complex(self.c), complex(self.d))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)


def state_from_cartesian(a, b, c, d, normalize: bool = False) -> PureState4:
    """Build a state from four complex amplitudes.

    With `normalize` the amplitudes are divided by their norm; otherwise the
    norm must already be 1 within NORM_TOL.  Raises ZeroVector when all four
    amplitudes vanish.
    """
    amps = [complex(a), complex(b), complex(c), complex(d)]
    norm = math.sqrt(sum(abs(z) ** 2 for z in amps))
    if norm == 0.0:
        raise ZeroVector("all four amplitudes are zero")
    if normalize:
        amps = [z / norm for z in amps]
    return PureState4(*amps)


@dataclass(frozen=True)
class PolarParams:
    """Magnitudes in [0, 1] and phases in [0, 2*pi) of the four amplitudes."""

    mag_a: float
    mag_b: float
    mag_c: float
    mag_d: float
    theta_a: float
    theta_b: float
    theta_c: float
    theta_d: float

    def __post_init__(self):
        mags = (self.mag_a, self.mag_b, self.mag_c, self.mag_d)
        if any(not math.isfinite(m) or m < 0.0 for m in mags):
            raise ValueError("magnitudes must be finite and nonnegative")
        norm_sq = sum(m * m for m in mags)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(f"magnitudes^2 sum to {norm_sq!r}, not 1")
        for name in ("theta_a", "theta_b", "theta_c", "theta_d"):
            theta = getattr(self, name)
            if not math.isfinite(theta):
                raise ValueError("phases must be finite")
            object.__setattr__(self, name, theta % _TWO_PI)

    @property
    def delta_theta(self) -> float:
        """theta_b + theta_c - theta_a - theta_d, reduced to (-2*pi, 2*pi]."""
        return _reduce_delta(self.theta_b + self.theta_c - self.theta_a - self.theta_d)


def state_from_polar(p: PolarParams) -> PureState4:
    """Cartesian amplitudes |x| * exp(i*theta_x) from polar parameters."""
    return PureState4(
        p.mag_a * cmath.exp(1j * p.theta_a),
        p.mag_b * cmath.exp(1j * p.theta_b),
        p.mag_c * cmath.exp(1j * p.theta_c),
        p.mag_d * cmath.exp(1j * p.theta_d),
    )


def to_polar(s: PureState4) -> PolarParams:
    a, b, c, d = s.amplitudes
    return PolarParams(
        abs(a), abs(b), abs(c), abs(d),
        _phase(a), _phase(b), _phase(c), _phase(d),
    )


def delta_theta(s: PureState4) -> float:
    """Phase combination theta_b + theta_c - theta_a - theta_d in (-2*pi, 2*pi].

    Amplitudes that are exactly zero contribute phase zero.
    """
    a, b, c, d = s.amplitudes
    return _reduce_delta(_phase(b) + _phase(c) - _phase(a) - _phase(d))


def delta_theta_defined(s: PureState4) -> bool:
    """True when both |a||d| and |b||c| are nonzero, so delta_theta matters."""
    a, b, c, d = s.amplitudes
    return abs(a) * abs(d) > 0.0 and abs(b) * abs(c) > 0.0


#: Amplitudes within this distance of the real axis count as real.
REAL_AMPLITUDE_TOL = 1e-12


def real_amplitudes(s: PureState4, require_nonnegative: bool = False) -> tuple[float, float, float, float]:
    """The four amplitudes as reals, for closed forms that assume them.

    Raises ComplexStateUnsupported when any amplitude has an imaginary part
    beyond REAL_AMPLITUDE_TOL (or, with `require_nonnegative`, a negative
    real part); such states must go through the numeric path instead.
    """
    amps = s.amplitudes
    if any(abs(z.imag) > REAL_AMPLITUDE_TOL for z in amps):
        raise ComplexStateUnsupported(
            "closed form requires real amplitudes; use the numeric path"
        )
    if require_nonnegative:
        if any(z.real < -REAL_AMPLITUDE_TOL for z in amps):
            raise ComplexStateUnsupported(
                "closed form requires nonnegative amplitudes; use the numeric path"
            )
        return tuple(max(z.real, 0.0) for z in amps)
    return tuple(z.real for z in amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated 4x4 density matrix: Hermitian, unit trace, PSD."""

    m: np.ndarray

    def __post_init__(self):
        mat = linalg.as_cmat4(self.m)
        mat.setflags(write=False)
        object.__setattr__(self, "m", mat)


def density_violations(m) -> list[str]:
    """Names of the density-matrix invariants violated by `m`.

    Checked in order: "hermitian", "trace", "psd".  An empty list means the
    matrix is a valid state.
    """
    mat = linalg.as_cmat4(m)
    failed = []
    if linalg.hermiticity_defect(mat) > linalg.HERMITIAN_TOL:
        failed.append("hermitian")
    if abs(mat.trace().real - 1.0) > TRACE_TOL or abs(mat.trace().imag) > TRACE_TOL:
        failed.append("trace")
    if "hermitian" in failed:
        evals = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    else:
        evals = np.linalg.eigvalsh(mat)
    if evals.min() < -linalg.PSD_EIG_TOL:
        failed.append("psd")
    return failed


def validate_density(m) -> DensityMatrix4:
    """Wrap `m` as a DensityMatrix4, raising on the first violated invariant.

    The error message lists every violation so partial failures are not
    hidden behind the first one.
    """
    failed = density_violations(m)
    if not failed:
        return DensityMatrix4(linalg.as_cmat4(m))
    detail = f"density-matrix invariants violated: {', '.join(failed)}"
    if failed[0] == "hermitian":
        raise NotHermitian(detail)
    if failed[0] == "trace":
        raise TraceNotOne(detail)
    raise NotPSD(detail)


def density_from_pure(s: PureState4) -> DensityMatrix4:
    """Rank-1 projector |s><s|."""
    v = s.vector
    return DensityMatrix4(np.outer(v, v.conj()))


def parse_state_text(text: str, normalize: bool = False) -> PureState4:
    """Parse the CLI state format.

    Cartesian: ``a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im``
    Polar:     ``polar:|a|,theta_a,|b|,theta_b,|c|,theta_c,|d|,theta_d``
    with polar angles given in degrees.
    """
    text = text.strip()
    polar = text.startswith("polar:")
    body = text[len("polar:"):] if polar else text
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != 8:
        raise ValueError(f"expected 8 comma-separated numbers, got {len(parts)}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"could not parse state value: {exc}") from None
    if polar:
        mags = values[0::2]
        thetas = [math.radians(t) for t in values[1::2]]
        if normalize:
            norm = math.sqrt(sum(m * m for m in mags))
            if norm == 0.0:
                raise ZeroVector("all four magnitudes are zero")
            mags = [m / norm for m in mags]
        return state_from_polar(PolarParams(*mags, *thetas))
    amps = [complex(re, im) for re, im in zip(values[0::2], values[1::2])]
    return state_from_cartesian(*amps, normalize=normalize)
