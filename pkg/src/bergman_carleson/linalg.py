"""Small Hermitian/PSD helpers shared across the package.

Everything funnels through numpy's symmetric eigensolver.  The helpers
are written so that exact fixed points stay exact: ``op_norm`` of an
identity matrix is 1.0 to the bit, and ``psd_sqrt`` of the identity is
the identity, because ``eigh`` reproduces both exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateWeightError, NotPSDError

#: Relative eigenvalue tolerance below which a matrix is rejected as not PSD.
PSD_NEG_TOL = 1e-10
#: Relative eigenvalue floor under which a PSD matrix is treated as singular.
PSD_FLOOR = 1e-12


def hermitize(matrix: np.ndarray) -> np.ndarray:
    """Nearest Hermitian matrix in the Frobenius sense."""
    m = np.asarray(matrix)
    return 0.5 * (m + m.conj().T)


def op_norm(matrix: np.ndarray) -> float:
    """Operator (spectral) norm.

    Exactly Hermitian input goes through ``eigvalsh``, which maps the
    identity to eigenvalue 1.0 with no rounding; anything else falls
    back to the largest singular value.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("operator norm needs a square matrix")
    if np.array_equal(m, m.conj().T):
        vals = np.linalg.eigvalsh(m)
        return float(max(vals[-1], -vals[0]))
    return float(np.linalg.svd(m, compute_uv=False)[0])


def lambda_max(matrix: np.ndarray) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(hermitize(matrix))[-1])


def assert_psd(matrix: np.ndarray, label: str = "matrix") -> np.ndarray:
    """Validate Hermitian positive semidefiniteness, return the input.

    Eigenvalues are allowed to dip below zero by ``PSD_NEG_TOL`` times
    the spectral scale to absorb roundoff from upstream arithmetic.
    """
    m = hermitize(matrix)
    vals = np.linalg.eigvalsh(m)
    scale = max(float(vals[-1]), 0.0) if vals.size else 0.0
    if vals.size and float(vals[0]) < -PSD_NEG_TOL * max(scale, 1.0):
        raise NotPSDError(
            f"{label} has negative eigenvalue {vals[0]:.6e} "
            f"(scale {scale:.6e})"
        )
    return np.asarray(matrix)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Roundoff-negative eigenvalues inside the PSD tolerance are clipped
    to zero; genuinely negative ones raise :class:`NotPSDError`.
    """
    m = hermitize(matrix)
    vals, vecs = np.linalg.eigh(m)
    scale = max(float(vals[-1]), 0.0) if vals.size else 0.0
    if vals.size and float(vals[0]) < -PSD_NEG_TOL * max(scale, 1.0):
        raise NotPSDError(f"square root of non-PSD matrix (min eig {vals[0]:.6e})")
    root = np.sqrt(np.clip(vals, 0.0, None))
    return (vecs * root) @ vecs.conj().T


def psd_inv_sqrt(matrix: np.ndarray, floor: float = PSD_FLOOR) -> np.ndarray:
    """Inverse principal square root of a Hermitian positive matrix.

    Raises :class:`DegenerateWeightError` when any eigenvalue sits below
    ``floor`` times the largest one, since the inverse would then be
    numerically meaningless.
    """
    m = hermitize(matrix)
    vals, vecs = np.linalg.eigh(m)
    top = float(vals[-1]) if vals.size else 0.0
    if top <= 0.0 or float(vals[0]) < floor * top:
        raise DegenerateWeightError(
            f"matrix is numerically singular (eigenvalues {vals[0]:.6e} "
            f"to {top:.6e}); cannot form an inverse square root"
        )
    inv_root = 1.0 / np.sqrt(vals)
    return (vecs * inv_root) @ vecs.conj().T


def sandwich(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Congruence outer @ inner @ outer^H, hermitized."""
    return hermitize(outer @ inner @ np.asarray(outer).conj().T)
