"""Dense complex 2x2 / 4x4 matrix arithmetic and small Hermitian eigensolvers.

Basis convention for all 4x4 operators in this package: index 0 is |a1 b1>,
1 is |a1 b2>, 2 is |a2 b1>, 3 is |a2 b2>, i.e. row-major order over the two
two-level factors.  Tensor products are always taken in that order.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitian, NotPSD

# One knob per concern, shared by every caller.
HERMITIAN_TOL = 1e-10  # max |H - H^dag| entry accepted as Hermitian
PSD_EIG_TOL = 1e-9     # eigenvalues >= -PSD_EIG_TOL count as nonnegative rounding

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X.setflags(write=False)
SIGMA_Y.setflags(write=False)
SIGMA_Z.setflags(write=False)


def as_cmat(m, size: int) -> np.ndarray:
    """Return `m` as a fresh complex (size, size) array, checking finiteness."""
    arr = np.array(m, dtype=complex)
    if arr.shape != (size, size):
        raise ValueError(f"expected a {size}x{size} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_cmat2(m) -> np.ndarray:
    return as_cmat(m, 2)


def as_cmat4(m) -> np.ndarray:
    return as_cmat(m, 4)


def mat_mul(lhs, rhs) -> np.ndarray:
    """Standard 4x4 matrix product."""
    return as_cmat4(lhs) @ as_cmat4(rhs)


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_cmat4(m).conj().T


def tensor2x2(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices in the fixed basis order."""
    return np.kron(as_cmat2(a), as_cmat2(b))


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entry of |m - m^dag|."""
    return float(np.abs(m - m.conj().T).max())


def eig_hermitian4(h) -> np.ndarray:
    """Eigenvalues of a Hermitian 4x4 matrix, sorted in decreasing order.

    Raises NotHermitian if the input deviates from its conjugate transpose
    by more than HERMITIAN_TOL in any entry.
    """
    h = as_cmat4(h)
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {defect:.3e}")
    return np.linalg.eigvalsh(h)[::-1].copy()


def psd_sqrt(h) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite 4x4 matrix.

    Eigenvalues in [-PSD_EIG_TOL, 0) are treated as rounding noise and
    clamped to zero; anything more negative raises NotPSD.
    """
    h = as_cmat4(h)
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {defect:.3e}")
    w, v = np.linalg.eigh(h)
    if w.min() < -PSD_EIG_TOL:
        raise NotPSD(f"eigenvalue {w.min():.3e} below -{PSD_EIG_TOL}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
