"""Structured singular values for block-scalar scaling structures and the
coordinate maps / membership tests of the associated mu-unit-ball domains.

The scaling structures handled here are sets of block diagonal matrices
``diag(z_1 I_{r_1}, ..., z_s I_{r_s})`` with complex scalars ``z_i``.  For
purely complex structures of this kind the structured singular value equals
the maximum of the spectral radius ``rho(A D)`` over unitary members ``D``,
i.e. over phase tuples on the torus; one phase can be frozen by homogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .linalg import as_cmatrix

__all__ = [
    "BlockStructure",
    "GammaPoint",
    "mu",
    "pi_coordinates",
    "in_gamma",
    "tetrablock_member",
]

_OMEGA = np.exp(2j * np.pi / 3.0)
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BlockStructure:
    """Scaling structure ``diag(z_1 I_{r_1}, ..., z_s I_{r_s})`` inside C^{n x n}."""

    n: int
    s: int
    r: tuple[int, ...]

    def __post_init__(self):
        if self.s != len(self.r):
            raise ValueError("block count s must match len(r)")
        if any(ri < 1 for ri in self.r):
            raise ValueError("block sizes must be positive")
        if sum(self.r) != self.n:
            raise ValueError("block sizes must sum to the ambient dimension n")

    @classmethod
    def parse(cls, text: str) -> "BlockStructure":
        """Parse ``"E(3;3;1,1,1)"`` style labels."""
        t = text.strip()
        if not (t.startswith("E(") and t.endswith(")")):
            raise ValueError(f"cannot parse structure label {text!r}")
        parts = t[2:-1].split(";")
        if len(parts) != 3:
            raise ValueError(f"cannot parse structure label {text!r}")
        n = int(parts[0])
        s = int(parts[1])
        r = tuple(int(p) for p in parts[2].split(","))
        return cls(n, s, r)

    def label(self) -> str:
        return f"E({self.n};{self.s};{','.join(str(ri) for ri in self.r)})"

    def scaling(self, z: Sequence[complex]) -> np.ndarray:
        """The diagonal of ``diag(z_1 I_{r_1}, ...)`` as a length-n vector."""
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.s,):
            raise ValueError(f"expected {self.s} block values")
        return np.repeat(z, self.r)


E311 = BlockStructure(3, 3, (1, 1, 1))
E312 = BlockStructure(3, 2, (1, 2))
E211 = BlockStructure(2, 2, (1, 1))


@dataclass(frozen=True)
class GammaPoint:
    """A coordinate tuple in one of the supported gamma domains."""

    variant: Literal["gamma7", "gamma5", "gamma3"]
    entries: tuple[complex, ...]

    _SIZES = {"gamma7": 7, "gamma5": 5, "gamma3": 3}

    def __post_init__(self):
        if self.variant not in self._SIZES:
            raise ValueError(f"unknown gamma variant {self.variant!r}")
        if len(self.entries) != self._SIZES[self.variant]:
            raise ValueError(
                f"{self.variant} needs {self._SIZES[self.variant]} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(complex(e) for e in self.entries))


def _char_coeffs(a: np.ndarray, diag: np.ndarray):
    """Coefficients (trace, minor sum, det) of ``a @ diag(d)`` for stacked ``d``.

    ``diag`` has shape (..., n).  Uses the multilinearity of each coefficient
    in the columns, so no matrix products are formed.
    """
    n = a.shape[0]
    if n == 2:
        tr = a[0, 0] * diag[..., 0] + a[1, 1] * diag[..., 1]
        det = np.linalg.det(a) * diag[..., 0] * diag[..., 1]
        return tr, det
    if n == 3:
        m01 = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        m02 = a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
        m12 = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
        d0, d1, d2 = diag[..., 0], diag[..., 1], diag[..., 2]
        tr = a[0, 0] * d0 + a[1, 1] * d1 + a[2, 2] * d2
        m2 = m01 * d0 * d1 + m02 * d0 * d2 + m12 * d1 * d2
        det = np.linalg.det(a) * d0 * d1 * d2
        return tr, m2, det
    raise ValueError("closed-form coefficients only for n <= 3")


def _rho2(tr, det):
    """Spectral radius from the 2x2 characteristic polynomial, vectorized."""
    disc = np.sqrt(tr * tr - 4.0 * det + 0j)
    return np.maximum(np.abs(tr + disc), np.abs(tr - disc)) / 2.0


def _rho3(tr, m2, det):
    """Spectral radius from the 3x3 characteristic polynomial, vectorized.

    Solves ``lam^3 - tr lam^2 + m2 lam - det = 0`` by Cardano's formula with
    the better-conditioned cube-root branch.
    """
    a = -np.asarray(tr, dtype=complex)
    b = np.asarray(m2, dtype=complex)
    c = -np.asarray(det, dtype=complex)
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    disc = np.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    u3a = -q / 2.0 + disc
    u3b = -q / 2.0 - disc
    u3 = np.where(np.abs(u3a) >= np.abs(u3b), u3a, u3b)
    safe = np.abs(u3) > 0.0
    u = np.where(safe, np.exp(np.log(np.where(safe, u3, 1.0)) / 3.0), 0.0)
    rho = np.zeros(np.broadcast(a, b, c).shape, dtype=float)
    for k in range(3):
        uk = u * _OMEGA**k
        ok = np.abs(uk) > 0.0
        tk = np.where(ok, uk - p / (3.0 * np.where(ok, uk, 1.0)), 0.0)
        rho = np.maximum(rho, np.abs(tk - a / 3.0))
    return rho


def _rho_batch(a: np.ndarray, phases: np.ndarray, structure: BlockStructure):
    """rho(A diag(...)) for a batch of free-phase tuples, shape (..., s-1)."""
    z = np.concatenate(
        [np.ones(phases.shape[:-1] + (1,), dtype=complex), np.exp(1j * phases)],
        axis=-1,
    )
    diag = np.repeat(z, structure.r, axis=-1)
    n = structure.n
    if n == 2:
        return _rho2(*_char_coeffs(a, diag))
    if n == 3:
        return _rho3(*_char_coeffs(a, diag))
    m = a * diag[..., None, :]
    return np.abs(np.linalg.eigvals(m)).max(axis=-1)


def _rho_exact(a: np.ndarray, phases: np.ndarray, structure: BlockStructure) -> float:
    """LAPACK spectral radius at a single free-phase tuple."""
    z = np.concatenate(([1.0 + 0j], np.exp(1j * np.asarray(phases, dtype=float))))
    m = a * structure.scaling(z)[None, :]
    return float(np.abs(np.linalg.eigvals(m)).max())


def _golden_max(f, lo: float, hi: float, iters: int):
    """Golden-section maximization of a unimodal-ish 1-d slice."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def mu(a, structure: BlockStructure, phase_grid: int = 720, refine_iters: int = 48) -> float:
    """Structured singular value of ``a`` with respect to ``structure``.

    Parameters
    ----------
    a : array_like
        Square complex matrix of the structure's ambient dimension.
    structure : BlockStructure
        Block-scalar scaling structure.
    phase_grid : int
        Number of grid points per free phase in the torus sweep.
    refine_iters : int
        Golden-section iterations per coordinate in the local refinement.

    Returns
    -------
    float
        ``max over unimodular scalings D of rho(a D)``, which for these
        purely complex structures equals ``1 / inf{||X||: det(I - aX) = 0}``
        (and 0 when no structured X makes ``I - aX`` singular).
    """
    a = as_cmatrix(a)
    if a.shape != (structure.n, structure.n):
        raise ValueError(
            f"matrix shape {a.shape} does not match structure dimension {structure.n}"
        )
    free = structure.s - 1
    if free == 0:
        return float(np.abs(np.linalg.eigvals(a)).max())
    if phase_grid < 4:
        raise ValueError("phase_grid must be at least 4")

    theta = 2.0 * np.pi * np.arange(phase_grid) / phase_grid
    if free == 1:
        rho = _rho_batch(a, theta[:, None], structure)
        i = int(np.argmax(rho))
        best = np.array([theta[i]])
        best_val = float(rho[i])
    else:
        # product grid, chunked along the first free phase to bound memory
        best_val = -1.0
        best = np.zeros(free)
        grids = np.meshgrid(*([theta] * (free - 1)), indexing="ij")
        tail = np.stack([g.ravel() for g in grids], axis=-1)
        chunk = max(1, int(2e6) // max(1, tail.shape[0]))
        for start in range(0, phase_grid, chunk):
            head = theta[start : start + chunk]
            block = np.concatenate(
                [
                    np.broadcast_to(head[:, None, None], (head.size, tail.shape[0], 1)),
                    np.broadcast_to(tail[None, :, :], (head.size, tail.shape[0], free - 1)),
                ],
                axis=-1,
            )
            rho = _rho_batch(a, block, structure)
            j = int(np.argmax(rho))
            if float(rho.flat[j]) > best_val:
                best_val = float(rho.flat[j])
                best = block.reshape(-1, free)[j].copy()

    if best_val == 0.0:
        return 0.0

    h = 2.0 * np.pi / phase_grid
    current = best.astype(float)
    val = _rho_exact(a, current, structure)
    for _ in range(2):
        for i in range(free):
            def slice_f(t, i=i):
                point = current.copy()
                point[i] = t
                return _rho_exact(a, point, structure)

            t_star, v = _golden_max(slice_f, current[i] - h, current[i] + h, refine_iters)
            if v > val:
                current[i] = t_star
                val = v
    return max(val, best_val)


def pi_coordinates(a, variant: str) -> GammaPoint:
    """Coordinate tuple of a matrix in the requested gamma domain.

    ``gamma7`` / ``gamma5`` take a 3x3 matrix, ``gamma3`` a 2x2 matrix.
    ``gamma5`` packs the invariants of the structure with a repeated lower
    block: ``(a11, m12 + m13, det, a22 + a33, m23)`` where ``m_ij`` are the
    principal 2x2 minors.
    """
    a = as_cmatrix(a)
    if variant == "gamma3":
        if a.shape != (2, 2):
            raise ValueError("gamma3 coordinates need a 2x2 matrix")
        return GammaPoint("gamma3", (a[0, 0], a[1, 1], complex(np.linalg.det(a))))
    if a.shape != (3, 3):
        raise ValueError(f"{variant} coordinates need a 3x3 matrix")
    m12 = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    m13 = a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
    m23 = a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    det = complex(np.linalg.det(a))
    if variant == "gamma7":
        return GammaPoint(
            "gamma7", (a[0, 0], a[1, 1], m12, a[2, 2], m13, m23, det)
        )
    if variant == "gamma5":
        return GammaPoint("gamma5", (a[0, 0], m12 + m13, det, a[1, 1] + a[2, 2], m23))
    raise ValueError(f"unknown gamma variant {variant!r}")


def in_gamma(a, structure: BlockStructure, tol: float = 1e-9, **mu_opts) -> bool:
    """Whether ``a`` lies in the closed mu-unit ball for ``structure``.

    Membership is ``mu(a) <= 1 + tol``; points within ``tol`` of the boundary
    therefore count as members.  Pass a negative ``tol`` to test the open
    ball up to numerical slack.
    """
    return mu(a, structure, **mu_opts) <= 1.0 + tol


def tetrablock_member(x, tol: float = 1e-9) -> bool:
    """Closed-form membership test for the closed tetrablock.

    ``x`` is a gamma3 point ``(x1, x2, x3)``.  The test is
    ``|x1 - conj(x2) x3| + |x2 - conj(x1) x3| <= 1 - |x3|^2`` together with
    ``|x3| <= 1``, slackened by ``tol``.
    """
    if isinstance(x, GammaPoint):
        if x.variant != "gamma3":
            raise ValueError("tetrablock_member expects gamma3 coordinates")
        x1, x2, x3 = x.entries
    else:
        x1, x2, x3 = (complex(v) for v in x)
    if abs(x3) > 1.0 + tol:
        return False
    lhs = abs(x1 - np.conj(x2) * x3) + abs(x2 - np.conj(x1) * x3)
    return bool(lhs <= 1.0 - abs(x3) ** 2 + tol)
