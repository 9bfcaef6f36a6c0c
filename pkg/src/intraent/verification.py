"""Seeded cross-check of closed forms against the numeric spectrum path.

For every channel the suite draws random states and strengths, evolves the
state, and tracks the worst case of:

* Kraus completeness defect,
* trace and Hermiticity defects of the channel output,
* most negative output eigenvalue,
* |closed form - numeric concurrence| where a closed form exists,
* for intraparticle amplitude damping, the rank-2 structure of the output
  (two eigenvalues below tolerance, the other two equal to
  1/2 +- sqrt(1/4 - P(1-P)(1-|a|^2)^2)).

Randomness comes from one counter-based generator (Philox) per channel
section, keyed by (seed, section index), so a section's draws do not depend
on which other sections run.  Draw order per trial: the state first, then the
strength P (uniform on [0, 1]).  Sections using complex states draw eight
standard normals (real/imaginary pairs); sections whose closed form needs
real nonnegative amplitudes draw four standard normals and take absolute
values; sections checked for both regimes alternate, complex states on even
trial indices.  The tolerance gate, not the sample stream, is the contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import concurrence
from .channels import ChannelKind, ChannelSpec, Locality, apply_channel, build_channel, completeness_defect
from .errors import ComplexStateUnsupported, ParamOutOfRange
from .linalg import hermiticity_defect
from .states import PureState4, density_from_pure

DEVIATION_TOL_AD_INTRA = 1e-10
DEVIATION_TOL_OTHER = 1e-8
COMPLETENESS_TOL = 1e-12
TRACE_TOL = 1e-12
HERMITICITY_TOL = 1e-12
MIN_EIGENVALUE_FLOOR = -1e-9
RANK2_TOL = 1e-9

#: Fixed section order; the index keys each section's generator.
SECTIONS = (
    (ChannelKind.AMPLITUDE_DAMPING, Locality.INTRAPARTICLE),
    (ChannelKind.AMPLITUDE_DAMPING, Locality.INTERPARTICLE),
    (ChannelKind.PHASE_DAMPING, Locality.INTRAPARTICLE),
    (ChannelKind.PHASE_DAMPING, Locality.INTERPARTICLE),
    (ChannelKind.DEPOLARIZING, Locality.INTRAPARTICLE),
    (ChannelKind.DEPOLARIZING, Locality.INTERPARTICLE),
)


@dataclass
class SectionResult:
    kind: ChannelKind
    locality: Locality
    trials: int
    completeness_max: float = 0.0
    trace_error_max: float = 0.0
    hermiticity_max: float = 0.0
    min_eigenvalue: float = 0.0
    deviation_max: float | None = None
    deviation_tol: float | None = None
    rank2_error_max: float | None = None
    worst_case: tuple[PureState4, float] | None = None

    @property
    def passed(self) -> bool:
        ok = (
            self.completeness_max <= COMPLETENESS_TOL
            and self.trace_error_max <= TRACE_TOL
            and self.hermiticity_max <= HERMITICITY_TOL
            and self.min_eigenvalue >= MIN_EIGENVALUE_FLOOR
        )
        if self.deviation_max is not None:
            ok = ok and self.deviation_max <= self.deviation_tol
        if self.rank2_error_max is not None:
            ok = ok and self.rank2_error_max <= RANK2_TOL
        return ok


@dataclass
class VerificationReport:
    seed: int
    trials: int
    sections: list[SectionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)


def _complex_state(rng: np.random.Generator) -> PureState4:
    v = rng.standard_normal(8)
    amps = v[0::2] + 1j * v[1::2]
    amps = amps / np.linalg.norm(amps)
    return PureState4(*map(complex, amps))


def _nonneg_real_state(rng: np.random.Generator) -> PureState4:
    v = np.abs(rng.standard_normal(4))
    v = v / np.linalg.norm(v)
    return PureState4(*(complex(x) for x in v))


def _closed_form(kind: ChannelKind, locality: Locality, s: PureState4, p: float) -> float | None:
    if locality is Locality.INTRAPARTICLE:
        if kind is ChannelKind.AMPLITUDE_DAMPING:
            return concurrence.concurrence_ad_intra(s, p)
        if kind is ChannelKind.PHASE_DAMPING:
            return concurrence.concurrence_pd_intra(s, p)
        return concurrence.concurrence_dp_intra(s, p)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        try:
            return concurrence.concurrence_ad_inter(s, p)
        except ComplexStateUnsupported:
            return None
    return None


def _draw_state(kind: ChannelKind, locality: Locality, trial: int,
                rng: np.random.Generator) -> PureState4:
    if kind is ChannelKind.AMPLITUDE_DAMPING and locality is Locality.INTERPARTICLE:
        return _nonneg_real_state(rng)
    if locality is Locality.INTRAPARTICLE and kind in (
        ChannelKind.PHASE_DAMPING, ChannelKind.DEPOLARIZING
    ):
        return _complex_state(rng) if trial % 2 == 0 else _nonneg_real_state(rng)
    return _complex_state(rng)


def _rank2_error(s: PureState4, p: float, rho_out: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(rho_out)[::-1]
    err = max(abs(evals[2]), abs(evals[3]))
    gap_sq = 0.25 - p * (1.0 - p) * (1.0 - abs(s.a) ** 2) ** 2
    gap = math.sqrt(max(gap_sq, 0.0))
    err = max(err, abs(evals[0] - (0.5 + gap)), abs(evals[1] - (0.5 - gap)))
    return err


def run_section(kind: ChannelKind, locality: Locality, seed: int,
                trials: int) -> SectionResult:
    if trials < 1:
        raise ParamOutOfRange("trials must be >= 1")
    index = SECTIONS.index((kind, locality))
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, index], dtype=np.uint64)))
    result = SectionResult(kind=kind, locality=locality, trials=trials)
    is_ad_intra = kind is ChannelKind.AMPLITUDE_DAMPING and locality is Locality.INTRAPARTICLE
    if is_ad_intra:
        result.rank2_error_max = 0.0
    has_closed_form = not (
        locality is Locality.INTERPARTICLE and kind is not ChannelKind.AMPLITUDE_DAMPING
    )
    if has_closed_form:
        result.deviation_max = 0.0
        result.deviation_tol = DEVIATION_TOL_AD_INTRA if is_ad_intra else DEVIATION_TOL_OTHER

    for trial in range(trials):
        state = _draw_state(kind, locality, trial, rng)
        p = float(rng.uniform())
        kraus = build_channel(ChannelSpec(kind=kind, locality=locality, p=p))
        result.completeness_max = max(result.completeness_max, completeness_defect(kraus.ops))
        rho_out = apply_channel(density_from_pure(state), kraus)
        out = rho_out.m
        result.trace_error_max = max(result.trace_error_max, abs(out.trace() - 1.0))
        result.hermiticity_max = max(result.hermiticity_max, hermiticity_defect(out))
        result.min_eigenvalue = min(result.min_eigenvalue, float(np.linalg.eigvalsh(out).min()))
        if is_ad_intra:
            result.rank2_error_max = max(result.rank2_error_max, _rank2_error(state, p, out))
        analytic = _closed_form(kind, locality, state, p)
        if analytic is not None:
            deviation = abs(analytic - concurrence.concurrence_numeric(rho_out))
            if deviation > result.deviation_max:
                result.deviation_max = deviation
                result.worst_case = (state, p)
    return result


def run_verification(seed: int, trials: int,
                     kinds: tuple[ChannelKind, ...] | None = None,
                     localities: tuple[Locality, ...] | None = None) -> VerificationReport:
    """Run every selected channel section and collect worst-case defects."""
    report = VerificationReport(seed=seed, trials=trials)
    for kind, locality in SECTIONS:
        if kinds is not None and kind not in kinds:
            continue
        if localities is not None and locality not in localities:
            continue
        report.sections.append(run_section(kind, locality, seed, trials))
    return report
