"""Reconstruction of a Schur function from a sampled kernel triple.

Given a triple whose kernels satisfy the rank-one conditions, the sampled
decomposition identity makes the right vectors ``(1, z1 f1, z2 f2, lam v)``
and left vectors ``(g, f1, f2, v)`` share their Gram matrix, so a partial
isometry maps one family onto the other.  Extending that isometry by zero on
the orthogonal complement yields a contractive colligation whose transfer
function reproduces the data on the grid, up to a joint torus conjugation of
the middle and last rows and columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import KernelTriple, SampleGrid, SampledKernel, combine_k, membership
from .linalg import IndefiniteMatrixError, hermitian_part
from .realization import RealizedSchurFunction

__all__ = [
    "RankError",
    "GramInconsistencyError",
    "RankOneFactor",
    "UWResult",
    "UWVerification",
    "TorusFit",
    "rank1_factor",
    "uw_construct",
    "verify_uw",
    "torus_conjugate",
    "torus_fit",
    "right_s",
]

# Internal eigenvalue cutoff for the state-space factor.  Anything coarser
# leaks truncation error into the Gram-equality defect, which the least
# squares step amplifies by a square root.
_STATE_CUTOFF = 1e-13


class RankError(ValueError):
    """A kernel violates the rank conditions required by the construction."""


class GramInconsistencyError(ValueError):
    """Left and right sample vectors do not share their Gram matrix."""


@dataclass(frozen=True)
class RankOneFactor:
    """Values of a rank-one kernel factor over a grid.

    The factor satisfies ``gram[t, u] = values[t] * conj(values[u])`` and is
    normalized so that its first significantly nonzero entry is positive
    real.
    """

    grid: SampleGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.shape != (len(self.grid),):
            raise ValueError("factor needs one value per grid point")
        object.__setattr__(self, "values", v)


def rank1_factor(kernel: SampledKernel, tol: float = 1e-9) -> RankOneFactor:
    """Factor a PSD sampled kernel of rank at most one.

    Raises :class:`RankError` when the numerical rank exceeds one and
    :class:`~gammapick.linalg.IndefiniteMatrixError` when the kernel fails to
    be PSD within ``tol``.
    """
    t = len(kernel.grid)
    if t == 0:
        return RankOneFactor(kernel.grid, np.zeros(0, dtype=complex))
    w, u = np.linalg.eigh(hermitian_part(kernel.gram))
    top = float(w[-1])
    if top <= 0.0:
        if float(w[0]) < -tol:
            raise IndefiniteMatrixError(f"kernel has negative eigenvalue {w[0]:.3e}")
        return RankOneFactor(kernel.grid, np.zeros(t, dtype=complex))
    if float(w[0]) < -tol * top:
        raise IndefiniteMatrixError(
            f"kernel is indefinite: eigenvalues span [{w[0]:.3e}, {top:.3e}]"
        )
    if t > 1 and float(w[-2]) > tol * top:
        raise RankError(
            f"kernel rank exceeds one: second eigenvalue {w[-2]:.3e} vs top {top:.3e}"
        )
    v = np.sqrt(top) * u[:, -1]
    # anchor the phase on the first entry that carries weight
    mags = np.abs(v)
    anchor = int(np.argmax(mags >= 1e-8 * mags.max()))
    phase = v[anchor] / abs(v[anchor])
    v = v * np.conj(phase)
    resid = float(np.abs(kernel.gram - np.outer(v, v.conj())).max())
    if resid > max(10 * tol * top, 1e-12):
        raise RankError(f"rank-one reconstruction residual {resid:.3e} too large")
    return RankOneFactor(kernel.grid, v)


@dataclass(frozen=True)
class UWResult:
    """Outcome of the isometry-extension construction."""

    xi: RealizedSchurFunction
    f1: RankOneFactor
    f2: RankOneFactor
    g: RankOneFactor
    state_dim: int


def _state_factor(n3: SampledKernel) -> np.ndarray:
    """Machine-rank factor ``L`` with ``L L* = N3`` used for the state space."""
    g = hermitian_part(n3.gram)
    if g.shape[0] == 0:
        return np.zeros((0, 0), dtype=complex)
    w, u = np.linalg.eigh(g)
    top = max(float(w[-1]), 0.0)
    keep = w > _STATE_CUTOFF * max(top, 1e-300)
    return u[:, keep] * np.sqrt(np.maximum(w[keep], 0.0))


def uw_construct(triple: KernelTriple, tol: float = 1e-8) -> UWResult:
    """Build a 3x3 Schur function whose kernel triple matches ``triple``.

    Parameters
    ----------
    triple : KernelTriple
        Sampled triple satisfying the rank-1/1/1 membership conditions.
    tol : float
        Bound for the Gram-equality defect and the isometry residual.

    Raises
    ------
    RankError
        When the rank conditions fail.
    GramInconsistencyError
        When the left/right Grams differ beyond ``tol`` or the fitted map
        is expansive.
    """
    if not membership(triple, "R11"):
        raise RankError("triple fails the rank-1/1/1 membership conditions")
    grid = triple.grid
    lam, z1, z2 = grid.lam, grid.z1, grid.z2
    f1 = rank1_factor(triple.n1)
    f2 = rank1_factor(triple.n2)
    g = rank1_factor(combine_k(triple))
    l = _state_factor(triple.n3)
    m = l.shape[1]

    right = np.vstack([np.ones_like(lam), z1 * f1.values, z2 * f2.values, (lam[:, None] * l).T])
    left = np.vstack([g.values, f1.values, f2.values, l.T])

    gram_r = right.conj().T @ right
    gram_l = left.conj().T @ left
    scale = max(1.0, float(np.abs(gram_r).max()))
    defect = float(np.abs(gram_r - gram_l).max())
    if defect > tol * scale:
        raise GramInconsistencyError(
            f"left/right Gram defect {defect:.3e} exceeds {tol:.1e} * {scale:.1e}"
        )

    sol, *_ = np.linalg.lstsq(right.T, left.T, rcond=1e-11)
    v = sol.T
    uu, sig, vh = np.linalg.svd(v)
    # the least-squares fit can overshoot the unit norm by roundoff amplified
    # through ill conditioned Grams; only a clearly expansive fit is an error,
    # smaller excesses are clipped and caught by the residual check below
    if sig.size and float(sig[0]) > 1.0 + 1e-6:
        raise GramInconsistencyError(f"fitted map has norm {sig[0]:.12f} > 1")
    v = (uu * np.minimum(sig, 1.0)) @ vh
    fit = float(np.abs(v @ right - left).max())
    if fit > max(tol, 1e-9) * max(1.0, float(np.abs(left).max())):
        raise GramInconsistencyError(f"isometry fit residual {fit:.3e} too large")

    xi = RealizedSchurFunction(3, m, v[:3, :3], v[:3, 3:], v[3:, :3], v[3:, 3:])
    return UWResult(xi, f1, f2, g, m)


@dataclass(frozen=True)
class UWVerification:
    max_residual: float
    worst_point: tuple[complex, complex, complex] | None
    passed: bool
    tol: float


def verify_uw(result: UWResult, grid: SampleGrid | None = None, tol: float = 1e-8) -> UWVerification:
    """Check ``Xi(lam_t) (1, z1 f1, z2 f2)^T = (g, f1, f2)^T`` over the grid."""
    if grid is None:
        grid = result.f1.grid
    elif grid != result.f1.grid and len(grid) > 0:
        raise ValueError("verification grid must match the grid of the factors")
    if len(grid) == 0:
        return UWVerification(0.0, None, True, tol)
    lam, z1, z2 = grid.lam, grid.z1, grid.z2
    vals = result.xi.evaluate_many(lam)
    rhs = np.stack([np.ones_like(lam), z1 * result.f1.values, z2 * result.f2.values], axis=-1)
    lhs = np.stack([result.g.values, result.f1.values, result.f2.values], axis=-1)
    resid = np.linalg.norm(np.einsum("tij,tj->ti", vals, rhs) - lhs, axis=-1)
    i = int(np.argmax(resid))
    top = float(resid[i])
    return UWVerification(top, grid.points[i], bool(top <= tol), tol)


def _check_unimodular(name: str, value: complex):
    if abs(abs(value) - 1.0) > 1e-9:
        raise ValueError(f"{name} must be unimodular, got |{name}| = {abs(value):.12f}")


def torus_conjugate(
    f: RealizedSchurFunction, eta1: complex, eta2: complex, eta3: complex
) -> RealizedSchurFunction:
    """Conjugate a 3x3 realization by ``diag(eta)`` and ``diag(1, conj(eta2), conj(eta3))``.

    The kernel triple is invariant under this family, which is exactly the
    gauge freedom of the reconstruction.
    """
    if f.k != 3:
        raise ValueError("torus conjugation is defined for 3x3 functions")
    for name, value in (("eta1", eta1), ("eta2", eta2), ("eta3", eta3)):
        _check_unimodular(name, complex(value))
    d1 = np.diag([eta1, eta2, eta3]).astype(complex)
    d2 = np.diag([1.0, np.conj(eta2), np.conj(eta3)]).astype(complex)
    return RealizedSchurFunction(3, f.m, d1 @ f.p @ d2, d1 @ f.q, f.r @ d2, f.s)


@dataclass(frozen=True)
class TorusFit:
    eta: tuple[complex, complex, complex]
    max_residual: float


def torus_fit(
    reference: RealizedSchurFunction, candidate: RealizedSchurFunction, lam
) -> TorusFit:
    """Fit torus phases aligning ``candidate`` with ``reference`` on points ``lam``.

    Phases are read off the first column, which the conjugation scales by
    ``eta_i`` alone; entries must not vanish identically there.
    """
    lam = np.asarray(lam, dtype=complex).ravel()
    fv = reference.evaluate_many(lam)
    xv = candidate.evaluate_many(lam)
    etas = []
    for i in range(3):
        corr = np.vdot(fv[:, i, 0], xv[:, i, 0])
        if abs(corr) < 1e-12 * max(1.0, float(np.abs(fv[:, i, 0]).max()) ** 2):
            raise ValueError(f"column-one entry ({i + 1},1) too small to anchor a phase")
        etas.append(complex(corr / abs(corr)))
    d1 = np.diag(etas)
    d2 = np.diag([1.0, np.conj(etas[1]), np.conj(etas[2])])
    resid = float(max(np.linalg.norm(x - d1 @ f @ d2, 2) for x, f in zip(xv, fv)))
    return TorusFit((etas[0], etas[1], etas[2]), resid)


def right_s(triple: KernelTriple, tol: float = 1e-9) -> RankOneFactor:
    """Rank-one factor of the combined kernel, the sampled interpolating datum.

    Requires the PSD / rank-at-most-one membership conditions; the factor's
    values must be bounded by one in modulus on the grid.  The full solution
    family is this factor times a unimodular constant.
    """
    if not membership(triple, "S1" if triple.grid.diagonal else "R1", tol):
        raise RankError("triple fails the PSD / rank-at-most-one conditions")
    factor = rank1_factor(combine_k(triple), tol)
    worst = float(np.abs(factor.values).max()) if len(factor.values) else 0.0
    if worst > 1.0 + tol:
        raise ValueError(f"factor modulus {worst:.12f} exceeds 1 + tol")
    return factor
