"""Dense complex linear algebra helpers shared across the package.

Everything here is a thin, contract-checked wrapper over LAPACK via
``numpy.linalg``.  Matrices are plain complex ndarrays.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "IndefiniteMatrixError",
    "NonHermitianError",
    "as_cmatrix",
    "operator_norm",
    "hermitian_part",
    "is_psd",
    "gram_factor",
]


class IndefiniteMatrixError(ValueError):
    """A matrix expected to be positive semidefinite has negative spectrum."""


class NonHermitianError(ValueError):
    """A matrix expected to be hermitian is not, beyond tolerance."""


def as_cmatrix(a) -> np.ndarray:
    """Coerce input to a 2-d complex ndarray with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def operator_norm(m) -> float:
    """Largest singular value of ``m``."""
    m = as_cmatrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def hermitian_part(m) -> np.ndarray:
    """Return ``(m + m*) / 2``."""
    m = as_cmatrix(m)
    return (m + m.conj().T) / 2.0


def is_psd(m, tol: float = 1e-9) -> bool:
    """Whether a hermitian matrix is positive semidefinite within ``tol``.

    The matrix must be hermitian within ``tol`` (relative to its scale);
    otherwise :class:`NonHermitianError` is raised.  The test itself is
    ``min eigenvalue >= -tol``.
    """
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("is_psd expects a square matrix")
    if m.shape[0] == 0:
        return True
    scale = max(1.0, float(np.abs(m).max()))
    skew = float(np.abs(m - m.conj().T).max())
    if skew > tol * scale:
        raise NonHermitianError(f"matrix is not hermitian: |M - M*| = {skew:.3e}")
    eigs = np.linalg.eigvalsh(hermitian_part(m))
    return bool(eigs[0] >= -tol)


def gram_factor(g, tol: float = 1e-9) -> np.ndarray:
    """Factor a PSD Gram matrix ``g`` as ``L @ L.conj().T`` with full column rank.

    Parameters
    ----------
    g : array_like
        Hermitian positive semidefinite matrix.  It is symmetrized as
        ``(g + g*) / 2`` before factoring.
    tol : float
        Relative eigenvalue cutoff: eigenvalues above ``tol * max_eig``
        count towards the rank.  Eigenvalues below ``-tol * max_eig``
        raise :class:`IndefiniteMatrixError`.

    Returns
    -------
    numpy.ndarray
        ``(n, r)`` factor where ``r`` is the numerical rank.
    """
    g = hermitian_part(g)
    if g.shape[0] != g.shape[1]:
        raise ValueError("gram_factor expects a square matrix")
    n = g.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    w, u = np.linalg.eigh(g)
    top = float(w[-1])
    if top <= 0.0:
        if w[0] < -tol * max(1.0, abs(top)):
            raise IndefiniteMatrixError(f"matrix has negative eigenvalue {w[0]:.3e}")
        return np.zeros((n, 0), dtype=complex)
    if w[0] < -tol * top:
        raise IndefiniteMatrixError(
            f"matrix is indefinite: eigenvalues span [{w[0]:.3e}, {top:.3e}]"
        )
    keep = w > tol * top
    l = u[:, keep] * np.sqrt(np.maximum(w[keep], 0.0))
    resid = float(np.abs(g - l @ l.conj().T).max())
    if resid > max(10 * tol * top, 1e-12):
        raise IndefiniteMatrixError(f"gram factorization residual {resid:.3e} too large")
    return l
