"""Sudden death, revival and robustness analysis of concurrence trajectories.

Under intraparticle amplitude damping the concurrence of a fixed input state
is a smooth function of the channel strength P that can vanish at one
isolated point and grow again; this module locates that point, the
minimum/maximum pair (P-, C-), (P+, C+), and the revival effectiveness
ratio (C+ - C-) / (C+ + C-).  For phase damping and depolarizing it
evaluates the sudden-death points, beyond which the concurrence stays zero.
Parameter sweeps, trajectory classification, and the intraparticle versus
interparticle comparison reproduce the qualitative pictures those formulas
predict.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import channels, concurrence
from .channels import ChannelKind, Locality
from .errors import ComplexStateUnsupported, GridTooCoarse, InvalidParams, ParamOutOfRange
from .states import (
    PureState4,
    delta_theta,
    delta_theta_defined,
    density_from_pure,
    real_amplitudes,
)

#: Grid values below this are part of a "zero run" of the concurrence.
ZERO_RUN_TOL = 1e-9
#: Grid values above this count as the concurrence having (re)risen.
RISE_TOL = 1e-7
#: Minimum number of grid points accepted by classify_trajectory.
MIN_CLASSIFY_POINTS = 64
#: delta_theta within this of 0 or +-2*pi counts as phase-aligned.
DELTA_THETA_TOL = 1e-9
#: Smallest cos(delta_theta) for which the revival extrema exist; the
#: admissibility boundary is inclusive up to rounding of the angle itself.
MIN_EXTREMUM_COS = 2.0 * math.sqrt(2.0) / 3.0
MIN_EXTREMUM_COS_TOL = 1e-12
#: Slack for clamping extremum positions onto [0, 1].
P_CLAMP_TOL = 1e-12


class TrajectoryClass(enum.Enum):
    MONOTONIC_DECAY = "MonotonicDecay"
    ESD_THEN_REVIVAL = "ESDThenRevival"
    CREATION_THEN_DECAY = "CreationThenDecay"
    ESD_NO_REVIVAL = "ESDNoRevival"
    IDENTICALLY_ZERO = "IdenticallyZero"


@dataclass(frozen=True)
class AdRevivalExtrema:
    """Positions and values of the concurrence minimum and maximum in P.

    Either extremum is None when its position falls outside [0, 1].
    """

    p_minus: float | None
    c_minus: float | None
    p_plus: float | None
    c_plus: float | None


@dataclass(frozen=True)
class RevivalReport:
    """Sudden-death point, revival extrema and classification for one state."""

    esd_p: float | None
    p_minus: float | None
    c_minus: float | None
    p_plus: float | None
    c_plus: float | None
    c_tilde: float | None
    classification: TrajectoryClass
    delta_theta: float
    delta_theta_defined: bool


@dataclass(frozen=True)
class NonMarkovParams:
    """Rates and time for the structured-reservoir channel strength P(t)."""

    big_gamma: float
    small_gamma: float
    t: float

    def __post_init__(self):
        if not (self.big_gamma > 0.0 and math.isfinite(self.big_gamma)):
            raise InvalidParams("big_gamma must be positive and finite")
        if 2.0 * self.small_gamma * self.big_gamma - self.big_gamma ** 2 <= 0.0:
            raise InvalidParams("need 2*small_gamma > big_gamma for a real oscillation rate")
        if not (self.t >= 0.0 and math.isfinite(self.t)):
            raise InvalidParams("t must be nonnegative and finite")


@dataclass(frozen=True, eq=False)
class SweepSeries:
    """Concurrence over a strictly increasing grid of channel strengths."""

    p_values: np.ndarray
    c_numeric: np.ndarray
    c_analytic: np.ndarray | None
    kind: ChannelKind
    locality: Locality

    def __post_init__(self):
        p = np.asarray(self.p_values, dtype=float)
        c = np.asarray(self.c_numeric, dtype=float)
        analytic = None if self.c_analytic is None else np.asarray(self.c_analytic, dtype=float)
        if p.shape != c.shape or (analytic is not None and analytic.shape != p.shape):
            raise ValueError("series columns must share the grid length")
        object.__setattr__(self, "p_values", p)
        object.__setattr__(self, "c_numeric", c)
        object.__setattr__(self, "c_analytic", analytic)


def _phase_aligned(dt: float) -> bool:
    two_pi = 2.0 * math.pi
    return min(abs(dt), abs(dt - two_pi), abs(dt + two_pi)) <= DELTA_THETA_TOL


def esd_ad_intra(s: PureState4) -> float | None:
    """Sudden-death strength P = 1 - (|a||d| / |b||c|)^2 under intraparticle AD.

    Exists only for phase-aligned states (delta_theta = 0 or +-2*pi) with
    |b||c| > 0 and |a||d| <= |b||c|; anything else would put P outside [0, 1],
    so None is returned instead of extrapolating.
    """
    a, b, c, d = s.amplitudes
    ad = abs(a) * abs(d)
    bc = abs(b) * abs(c)
    if bc == 0.0 or ad > bc or not _phase_aligned(delta_theta(s)):
        return None
    return 1.0 - (ad / bc) ** 2


def _clamp_unit(p: float) -> float | None:
    if -P_CLAMP_TOL <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + P_CLAMP_TOL:
        return 1.0
    if 0.0 <= p <= 1.0:
        return p
    return None


def revival_extrema_ad_intra(s: PureState4) -> AdRevivalExtrema | None:
    """Interior minimum and maximum of the intraparticle-AD concurrence.

    With alpha = |b||c|, beta = |a||d| and g = 3 cos(delta_theta) -+
    sqrt(9 cos^2(delta_theta) - 8), the stationary points sit at
    P = 1 - (beta g / (4 alpha))^2.  They exist only when both products are
    nonzero and cos(delta_theta) >= 2 sqrt(2) / 3; an extremum whose P lands
    outside [0, 1] is reported as None.
    """
    a, b, c, d = s.amplitudes
    alpha = abs(b) * abs(c)
    beta = abs(a) * abs(d)
    if alpha == 0.0 or beta == 0.0:
        return None
    cos_dt = math.cos(delta_theta(s))
    if cos_dt < MIN_EXTREMUM_COS - MIN_EXTREMUM_COS_TOL:
        return None
    radicand = max(9.0 * cos_dt * cos_dt - 8.0, 0.0)
    root = math.sqrt(radicand)

    def extremum(g: float) -> tuple[float | None, float | None]:
        x = beta * g / (4.0 * alpha)
        p = _clamp_unit(1.0 - x * x)
        if p is None:
            return None, None
        c_val = (beta * beta / (2.0 * math.sqrt(3.0) * alpha)) * math.sqrt(
            max(1.0 - g * g / 16.0, 0.0)
        ) * g
        return p, c_val

    p_minus, c_minus = extremum(3.0 * cos_dt + root)
    p_plus, c_plus = extremum(3.0 * cos_dt - root)
    if p_minus is None and p_plus is None:
        return None
    return AdRevivalExtrema(p_minus=p_minus, c_minus=c_minus, p_plus=p_plus, c_plus=c_plus)


def c_tilde(s: PureState4) -> float | None:
    """Revival effectiveness (C+ - C-) / (C+ + C-); depends only on delta_theta.

    Requires both extrema to exist with C+ + C- > 0; 1 for phase-aligned
    states (where C- = 0) and 0 where the extrema merge.
    """
    ext = revival_extrema_ad_intra(s)
    if ext is None or ext.c_minus is None or ext.c_plus is None:
        return None
    total = ext.c_plus + ext.c_minus
    if total <= 0.0:
        return None
    return (ext.c_plus - ext.c_minus) / total


def esd_pd_intra(s: PureState4) -> float | None:
    """Sudden-death strength under intraparticle phase damping (real states).

    P = (ad - bc)/ad when ad > bc, (bc - ad)/bc when bc > ad.  Both products
    must be nonzero (otherwise the decay is only asymptotic) and the result
    must fall in [0, 1]; ad = bc means the concurrence starts at zero and no
    sudden death happens.  Complex amplitudes raise ComplexStateUnsupported.
    """
    a, b, c, d = real_amplitudes(s)
    ad = a * d
    bc = b * c
    if ad == bc or ad == 0.0 or bc == 0.0:
        return None
    p = (ad - bc) / ad if ad > bc else (bc - ad) / bc
    return _clamp_unit(p)


def esd_dp_intra(s: PureState4) -> float | None:
    """Sudden-death strength P = 4|ad - bc| / (1 + 4|ad - bc|) under intraparticle DP.

    Defined for every entangled pure state (|ad - bc| > 0), always below 1,
    and at most 2/3 with equality for maximal entanglement; None for
    separable inputs.
    """
    a, b, c, d = s.amplitudes
    m = abs(a * d - b * c)
    if m == 0.0:
        return None
    return 4.0 * m / (1.0 + 4.0 * m)


def nonmarkov_p(params: NonMarkovParams) -> float:
    """Channel strength P(t) of the structured-reservoir amplitude damping.

    P = exp(-G t) * (cos(w t / 2) + (G / w) sin(w t / 2))^2 with
    w = sqrt(2 g G - G^2).  Note P(0) = 1 by construction: the map is used
    as a strength schedule, with full damping at t = 0 and oscillatory decay
    toward 0.  Rounding past the [0, 1] bounds is clamped within 1e-12.
    """
    g_big = params.big_gamma
    w = math.sqrt(2.0 * params.small_gamma * g_big - g_big * g_big)
    half = 0.5 * w * params.t
    value = math.exp(-g_big * params.t) * (math.cos(half) + (g_big / w) * math.sin(half)) ** 2
    if value > 1.0:
        if value > 1.0 + 1e-12:
            raise InvalidParams(f"P(t) = {value!r} exceeds 1 beyond rounding")
        return 1.0
    return value


def p_grid(p_min: float, p_max: float, steps: int) -> np.ndarray:
    """Uniform strength grid with `steps` points from p_min to p_max."""
    if steps < 2:
        raise GridTooCoarse("grid needs at least 2 points")
    if not (0.0 <= p_min < p_max <= 1.0):
        raise ParamOutOfRange("grid bounds must satisfy 0 <= p_min < p_max <= 1")
    return np.linspace(p_min, p_max, steps)


def _analytic_concurrence(s: PureState4, kind: ChannelKind, locality: Locality,
                          p: float) -> float:
    if locality is Locality.INTRAPARTICLE:
        if kind is ChannelKind.AMPLITUDE_DAMPING:
            return concurrence.concurrence_ad_intra(s, p)
        if kind is ChannelKind.PHASE_DAMPING:
            return concurrence.concurrence_pd_intra(s, p)
        return concurrence.concurrence_dp_intra(s, p)
    return concurrence.concurrence_ad_inter(s, p)


def _has_analytic_form(s: PureState4, kind: ChannelKind, locality: Locality) -> bool:
    if locality is Locality.INTRAPARTICLE:
        return True
    if kind is not ChannelKind.AMPLITUDE_DAMPING:
        return False
    try:
        real_amplitudes(s, require_nonnegative=True)
    except ComplexStateUnsupported:
        return False
    return True


def sweep(s: PureState4, kind: ChannelKind, locality: Locality,
          p_values) -> SweepSeries:
    """Numeric (and, where a closed form applies, analytic) concurrence per P.

    The grid must be strictly increasing inside [0, 1] with at least two
    points.  The numeric column evolves the state through the channel and
    runs the spectrum path at every grid point.
    """
    p = np.asarray(p_values, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise GridTooCoarse("grid needs at least 2 points")
    if p[0] < 0.0 or p[-1] > 1.0:
        raise ParamOutOfRange("grid values outside [0, 1]")
    if not np.all(np.diff(p) > 0.0):
        raise ParamOutOfRange("grid must be strictly increasing")
    evolved = channels.evolve_pure_grid(s.vector, kind, locality, p)
    c_numeric = concurrence._concurrence_numeric_grid(evolved)
    c_analytic = None
    if _has_analytic_form(s, kind, locality):
        c_analytic = np.array([_analytic_concurrence(s, kind, locality, float(x)) for x in p])
    return SweepSeries(p_values=p, c_numeric=c_numeric, c_analytic=c_analytic,
                       kind=kind, locality=locality)


def compare_intra_inter(s: PureState4, kind: ChannelKind,
                        p_values) -> tuple[SweepSeries, SweepSeries]:
    """Sweep the same state and grid through both localities of one kind."""
    intra = sweep(s, kind, Locality.INTRAPARTICLE, p_values)
    inter = sweep(s, kind, Locality.INTERPARTICLE, p_values)
    return intra, inter


def classify_trajectory(series: SweepSeries) -> TrajectoryClass:
    """Sort a sweep into one of the five qualitative trajectory shapes.

    Zero runs are grid values below ZERO_RUN_TOL; a (re)rise means exceeding
    RISE_TOL afterwards.  The two-tier thresholds keep rounding flicker from
    flipping the class.  Requires at least MIN_CLASSIFY_POINTS grid points.
    """
    c = series.c_numeric
    if c.size < MIN_CLASSIFY_POINTS:
        raise GridTooCoarse(
            f"classification needs >= {MIN_CLASSIFY_POINTS} grid points, got {c.size}"
        )
    zero = c < ZERO_RUN_TOL
    risen = c > RISE_TOL
    if bool(zero.all()):
        return TrajectoryClass.IDENTICALLY_ZERO
    if zero[0] and bool(risen[1:].any()):
        return TrajectoryClass.CREATION_THEN_DECAY
    interior_zero = np.flatnonzero(zero[1:]) + 1
    if c[0] > RISE_TOL and interior_zero.size:
        first_zero = interior_zero[0]
        if bool(risen[first_zero + 1:].any()):
            return TrajectoryClass.ESD_THEN_REVIVAL
    if interior_zero.size:
        return TrajectoryClass.ESD_NO_REVIVAL
    return TrajectoryClass.MONOTONIC_DECAY


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Position of the minimum of a unimodal function on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def _numeric_concurrence_at(s: PureState4, kind: ChannelKind, locality: Locality,
                            p: float) -> float:
    spec = channels.ChannelSpec(kind=kind, locality=locality, p=p)
    rho = channels.apply_channel(density_from_pure(s), channels.build_channel(spec))
    return concurrence.concurrence_numeric(rho)


def refine_extremum_numeric(s: PureState4, kind: ChannelKind, locality: Locality,
                            minimum: bool = True, grid_points: int = 2001,
                            tol: float = 1e-10) -> tuple[float, float]:
    """Locate an interior extremum of the numeric concurrence in P.

    Dense-grid bracketing followed by golden-section refinement; returns
    (P, C).  Used as the search fallback where no closed form pins the
    extremum down.
    """
    grid = np.linspace(0.0, 1.0, grid_points)
    series = sweep(s, kind, locality, grid)
    values = series.c_numeric if minimum else -series.c_numeric
    idx = int(np.argmin(values[1:-1])) + 1
    sign = 1.0 if minimum else -1.0

    def f(p: float) -> float:
        return sign * _numeric_concurrence_at(s, kind, locality, p)

    p_best = golden_section_min(f, grid[idx - 1], grid[idx + 1], tol=tol)
    return p_best, _numeric_concurrence_at(s, kind, locality, p_best)


def _analysis_grid(landmarks: list[float | None], steps: int = 1001) -> np.ndarray:
    """Uniform [0, 1] grid augmented with analytic landmark strengths.

    The sudden-death point of intraparticle amplitude damping is a single
    isolated zero; a uniform grid of any practical resolution misses it, so
    the landmark values are spliced in exactly.
    """
    base = np.linspace(0.0, 1.0, steps)
    extra = [p for p in landmarks if p is not None and 0.0 <= p <= 1.0]
    return np.union1d(base, np.asarray(extra, dtype=float)) if extra else base


def analyze_state(s: PureState4, kind: ChannelKind) -> RevivalReport:
    """Full intraparticle report: sudden death, extrema, effectiveness, class.

    The sudden-death point comes from the channel's closed form (None when
    the form does not apply, e.g. complex amplitudes under phase damping);
    revival extrema and the effectiveness ratio exist only for amplitude
    damping.  Classification runs on a numeric sweep over a dense grid
    augmented with the analytic landmarks.
    """
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        esd = esd_ad_intra(s)
        ext = revival_extrema_ad_intra(s)
        ratio = c_tilde(s)
    elif kind is ChannelKind.PHASE_DAMPING:
        try:
            esd = esd_pd_intra(s)
        except ComplexStateUnsupported:
            esd = None
        ext, ratio = None, None
    else:
        esd = esd_dp_intra(s)
        ext, ratio = None, None

    landmarks = [esd]
    if ext is not None:
        landmarks += [ext.p_minus, ext.p_plus]
    grid = _analysis_grid(landmarks)
    series = sweep(s, kind, Locality.INTRAPARTICLE, grid)
    return RevivalReport(
        esd_p=esd,
        p_minus=ext.p_minus if ext else None,
        c_minus=ext.c_minus if ext else None,
        p_plus=ext.p_plus if ext else None,
        c_plus=ext.c_plus if ext else None,
        c_tilde=ratio,
        classification=classify_trajectory(series),
        delta_theta=delta_theta(s),
        delta_theta_defined=delta_theta_defined(s),
    )
