"""Shared helpers and independent oracles for the test suite.

The oracles deliberately avoid the code paths they check: eigenvalues come
from the quartic characteristic polynomial (Faddeev-LeVerrier coefficients
plus a companion-matrix root finder) or from the general non-symmetric
eigensolver, and extrema/zeros are located by plain grid search, bisection
and ternary search on the numeric concurrence.
"""

from __future__ import annotations

import numpy as np

from intraent import (
    ChannelKind,
    ChannelSpec,
    Locality,
    PureState4,
    apply_channel,
    build_channel,
    concurrence_numeric,
    density_from_pure,
)

SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
U4 = np.kron(SY, SY)


def random_complex_state(rng: np.random.Generator) -> PureState4:
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v /= np.linalg.norm(v)
    return PureState4(*map(complex, v))


def random_nonneg_state(rng: np.random.Generator) -> PureState4:
    v = np.abs(rng.standard_normal(4))
    v /= np.linalg.norm(v)
    return PureState4(*(complex(x) for x in v))


def random_signed_real_state(rng: np.random.Generator) -> PureState4:
    v = rng.standard_normal(4)
    v /= np.linalg.norm(v)
    return PureState4(*(complex(x) for x in v))


def random_product_state(rng: np.random.Generator) -> PureState4:
    x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    amps = np.kron(x, y)
    return PureState4(*map(complex, amps))


def char_poly_coeffs(m: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda I - m) by the Faddeev-LeVerrier recursion."""
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.array(m, dtype=complex)
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        coeffs[k] = ck
        mk = m @ (mk + ck * np.eye(n))
    return coeffs


def char_poly_roots(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of m as roots of its characteristic polynomial."""
    return np.roots(char_poly_coeffs(m))


def r_eigs_oracle(rho_mat: np.ndarray) -> np.ndarray:
    """|eigenvalues| of R via the general eigensolver, descending."""
    r = rho_mat @ U4 @ rho_mat.conj() @ U4
    return np.sort(np.abs(np.linalg.eigvals(r)))[::-1]


def concurrence_oracle(rho_mat: np.ndarray) -> float:
    """Wootters combination straight off the non-Hermitian spectrum of R."""
    s = np.sqrt(r_eigs_oracle(rho_mat))
    return max(0.0, s[0] - s[1] - s[2] - s[3])


def numeric_c(state: PureState4, kind: ChannelKind, locality: Locality, p: float) -> float:
    spec = ChannelSpec(kind=kind, locality=locality, p=p)
    return concurrence_numeric(apply_channel(density_from_pure(state), build_channel(spec)))


def bisect_boundary(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Boundary between f(lo) > 0 and f(hi) == 0 by predicate bisection."""
    assert f(lo) > 0.0 and f(hi) <= 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ternary_extremum(f, lo: float, hi: float, minimum: bool = True,
                     tol: float = 1e-12) -> float:
    """Position of a unimodal extremum by ternary search."""
    sign = 1.0 if minimum else -1.0
    while hi - lo > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if sign * f(m1) < sign * f(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def grid_extremum(f, lo: float, hi: float, points: int, minimum: bool = True,
                  tol: float = 1e-12) -> float:
    """Dense-grid bracket followed by ternary refinement on the bracket."""
    grid = np.linspace(lo, hi, points)
    values = np.array([f(p) for p in grid])
    idx = int(np.argmin(values[1:-1]) if minimum else np.argmax(values[1:-1])) + 1
    return ternary_extremum(f, grid[idx - 1], grid[idx + 1], minimum=minimum, tol=tol)
