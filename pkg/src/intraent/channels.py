"""Kraus sets for six noise channels and the completely positive channel map.

Three channel kinds (amplitude damping, phase damping, depolarizing) in two
localities:

* intraparticle - the environment acts on the four-level system as a whole,
  so the Kraus operators live on the full 4-dimensional space;
* interparticle - the environment acts locally and identically on each
  two-level factor, so every Kraus operator is a tensor product of 2x2
  local operators with the same strength P on both factors.

Kraus operator ordering within each set is fixed and documented on the
constructor so serialized sets are reproducible; the channel map itself does
not depend on the order.  Zero operators at P = 0 are kept so a channel kind
always has the same set size.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import IndexOutOfRange, ParamOutOfRange
from .states import DensityMatrix4, validate_density

COMPLETENESS_TOL = 1e-12  # max |sum M^dag M - I| entry

# i^k for k = 0..3; exact complex units, so Weyl entries carry no rounding.
_QUARTER_PHASES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


class ChannelKind(enum.Enum):
    AMPLITUDE_DAMPING = "ad"
    PHASE_DAMPING = "pd"
    DEPOLARIZING = "dp"


class Locality(enum.Enum):
    INTRAPARTICLE = "intra"
    INTERPARTICLE = "inter"


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ParamOutOfRange(f"channel parameter {p!r} outside [0, 1]")
    return p


@dataclass(frozen=True)
class ChannelSpec:
    """Channel kind x locality x strength P selector."""

    kind: ChannelKind
    locality: Locality
    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))


def completeness_defect(ops) -> float:
    """Largest entry of |sum_i M_i^dag M_i - I|."""
    acc = np.zeros((4, 4), dtype=complex)
    for m in ops:
        acc += m.conj().T @ m
    return float(np.abs(acc - np.eye(4)).max())


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered, immutable list of 4x4 Kraus operators with completeness check."""

    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(linalg.as_cmat4(m) for m in self.ops)
        for m in ops:
            m.setflags(write=False)
        object.__setattr__(self, "ops", ops)
        defect = completeness_defect(ops)
        if defect > COMPLETENESS_TOL:
            raise ParamOutOfRange(
                f"Kraus set violates completeness by {defect:.3e}"
            )

    def __len__(self) -> int:
        return len(self.ops)


def kraus_ad_intra(p: float) -> KrausSet:
    """Amplitude damping on the whole four-level system.

    Order: M0 = |0><0| + sqrt(1-P) * (|1><1| + |2><2| + |3><3|), then
    M_i = sqrt(P) |0><i| for i = 1, 2, 3.  Every excited level decays to the
    ground level |0> with the same strength.
    """
    p = _check_p(p)
    root = np.sqrt(1.0 - p)
    m0 = np.diag([1.0, root, root, root]).astype(complex)
    ops = [m0]
    for i in (1, 2, 3):
        m = np.zeros((4, 4), dtype=complex)
        m[0, i] = np.sqrt(p)
        ops.append(m)
    return KrausSet(tuple(ops))


def kraus_pd_intra(p: float) -> KrausSet:
    """Phase damping on the whole four-level system.

    Order: M0 = sqrt(1-P) * I, then M_{i+1} = sqrt(P) |i><i| for i = 0..3.
    Populations are untouched; off-diagonal coherences shrink by (1-P).
    """
    p = _check_p(p)
    ops = [np.sqrt(1.0 - p) * np.eye(4, dtype=complex)]
    for i in range(4):
        m = np.zeros((4, 4), dtype=complex)
        m[i, i] = np.sqrt(p)
        ops.append(m)
    return KrausSet(tuple(ops))


def weyl_operator(m: int, n: int) -> np.ndarray:
    """Shift-and-clock unitary U_{mn} = sum_j i^(j*m) |j><(j+n) mod 4|.

    The sixteen operators for m, n in 0..3 form an orthogonal operator basis
    of the four-level system with trace inner product 4 * delta * delta.
    """
    m = operator.index(m)
    n = operator.index(n)
    if not (0 <= m <= 3 and 0 <= n <= 3):
        raise IndexOutOfRange(f"Weyl indices ({m}, {n}) outside 0..3")
    u = np.zeros((4, 4), dtype=complex)
    for j in range(4):
        u[j, (j + n) % 4] = _QUARTER_PHASES[(j * m) % 4]
    return u


def kraus_dp_intra(p: float) -> KrausSet:
    """Depolarizing channel on the whole four-level system.

    Order: sqrt(1 - 15P/16) * U_00 first, then (sqrt(P)/4) * U_ij for the
    remaining fifteen index pairs in row-major order.  Mixes the state toward
    I/4: the output equals (1-P) * rho + (P/4) * I.
    """
    p = _check_p(p)
    ops = [np.sqrt(1.0 - 15.0 * p / 16.0) * weyl_operator(0, 0)]
    scale = np.sqrt(p) / 4.0
    for i in range(4):
        for j in range(4):
            if (i, j) != (0, 0):
                ops.append(scale * weyl_operator(i, j))
    return KrausSet(tuple(ops))


def _local_ad(p: float) -> list[np.ndarray]:
    m0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex)
    m1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return [m0, m1]


def kraus_ad_inter(p: float) -> KrausSet:
    """Amplitude damping acting locally and identically on both particles.

    Local operators M0 = diag(1, sqrt(1-P)) and M1 = sqrt(P) |0><1|;
    set order is the tensor pairs (0,0), (0,1), (1,0), (1,1).
    """
    p = _check_p(p)
    loc = _local_ad(p)
    return KrausSet(tuple(linalg.tensor2x2(a, b) for a in loc for b in loc))


def kraus_pd_inter(p: float) -> KrausSet:
    """Phase damping acting locally on both particles.

    Local operators sqrt(1-P) * I, sqrt(P) |0><0|, sqrt(P) |1><1|; the nine
    tensor pairs are ordered row-major.  Off-diagonals where one particle
    flips shrink by (1-P), where both flip by (1-P)^2.
    """
    p = _check_p(p)
    loc = [
        np.sqrt(1.0 - p) * np.eye(2, dtype=complex),
        np.sqrt(p) * np.diag([1.0, 0.0]).astype(complex),
        np.sqrt(p) * np.diag([0.0, 1.0]).astype(complex),
    ]
    return KrausSet(tuple(linalg.tensor2x2(a, b) for a in loc for b in loc))


def kraus_dp_inter(p: float) -> KrausSet:
    """Depolarizing channel acting locally on both particles.

    Local operators sqrt(1-P) * I and sqrt(P/3) * (sigma_x, sigma_y, sigma_z);
    the sixteen tensor pairs are ordered row-major.
    """
    p = _check_p(p)
    loc = [
        np.sqrt(1.0 - p) * np.eye(2, dtype=complex),
        np.sqrt(p / 3.0) * linalg.SIGMA_X,
        np.sqrt(p / 3.0) * linalg.SIGMA_Y,
        np.sqrt(p / 3.0) * linalg.SIGMA_Z,
    ]
    return KrausSet(tuple(linalg.tensor2x2(a, b) for a in loc for b in loc))


_CONSTRUCTORS = {
    (ChannelKind.AMPLITUDE_DAMPING, Locality.INTRAPARTICLE): kraus_ad_intra,
    (ChannelKind.AMPLITUDE_DAMPING, Locality.INTERPARTICLE): kraus_ad_inter,
    (ChannelKind.PHASE_DAMPING, Locality.INTRAPARTICLE): kraus_pd_intra,
    (ChannelKind.PHASE_DAMPING, Locality.INTERPARTICLE): kraus_pd_inter,
    (ChannelKind.DEPOLARIZING, Locality.INTRAPARTICLE): kraus_dp_intra,
    (ChannelKind.DEPOLARIZING, Locality.INTERPARTICLE): kraus_dp_inter,
}


@lru_cache(maxsize=None)
def _cached_channel(kind: ChannelKind, locality: Locality, p: float) -> KrausSet:
    return _CONSTRUCTORS[(kind, locality)](p)


def build_channel(spec: ChannelSpec) -> KrausSet:
    """Dispatch to the constructor selected by `spec`.

    Sets are cached per (kind, locality, P); they are immutable, so sharing
    the cached value across callers and threads is safe.
    """
    return _cached_channel(spec.kind, spec.locality, spec.p)


def apply_channel(rho: DensityMatrix4, k: KrausSet) -> DensityMatrix4:
    """Channel map rho -> sum_i M_i rho M_i^dag, revalidated on the way out."""
    acc = np.zeros((4, 4), dtype=complex)
    for m in k.ops:
        acc += m @ rho.m @ m.conj().T
    return validate_density(acc)


def evolve_pure_grid(vector: np.ndarray, kind: ChannelKind, locality: Locality,
                     p_values: np.ndarray) -> np.ndarray:
    """Evolved density matrices of one pure state at every grid strength.

    Equivalent to applying build_channel at each P to the projector onto
    `vector`, returned as an (N, 4, 4) stack.  Uses the factored form
    sum_i (M_i v)(M_i v)^dag, which is exact for pure inputs, and the
    per-strength Kraus cache, so sweeping many states over one grid pays
    the construction cost once.
    """
    stacks = np.stack([
        np.stack(_cached_channel(kind, locality, float(p)).ops) for p in p_values
    ])
    y = stacks @ np.asarray(vector, dtype=complex)      # (N, k, 4)
    return np.einsum("nki,nkj->nij", y, y.conj())
