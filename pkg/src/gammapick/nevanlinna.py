"""Matricial Nevanlinna-Pick interpolation and the slice reductions that turn
analytic interpolation in the 7- and 5-coordinate gamma domains into 2x2 Pick
problems.

The slice of a 7-coordinate tuple ``x`` at a disc parameter ``z`` is the
triple ``(x1 - z x3, x4 - z x6, x5 - z x7) / (1 - z x2)``, which collects the
diagonal entries and determinant of a 2x2 Schur-class function; the analytic
square-root split of ``f11 f22 - det`` reconstructs its off-diagonal part.
For the 5-coordinate domain the corresponding slices are
``(2 x1 - z x2, x4 - 2 z x5, x2 - 2 z x3) / (2 - z x4)`` in the coordinate
order ``(a11, m12 + m13, det, a22 + a33, m23)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .domains import GammaPoint
from .hardy import InnerOuterPair, RationalFunction, inner_outer
from .linalg import as_cmatrix, hermitian_part, operator_norm
from .lurking import GramInconsistencyError
from .realization import RealizedSchurFunction

__all__ = [
    "UnsolvablePickError",
    "PickData",
    "GammaCurve",
    "GammaNodes",
    "SlicedSchur2x2",
    "CertificationReport",
    "DEFAULT_Z_GRID",
    "pick_matrix",
    "np_solve",
    "sample_curve",
    "gamma_curve_from_entries",
    "slice_coordinates",
    "psi3_eval",
    "psi_lower3_eval",
    "build_slice_schur",
    "reduce_gamma7",
    "reduce_gamma5",
    "certify_gamma7_interpolation",
    "certify_gamma5_interpolation",
]

DEFAULT_Z_GRID = (
    0.0 + 0j,
    0.3 + 0j,
    -0.3 + 0j,
    0.3j,
    -0.3j,
    0.6 + 0j,
    -0.6 + 0j,
    0.6j,
    -0.6j,
)

_STATE_CUTOFF = 1e-13


class UnsolvablePickError(ValueError):
    """The Pick matrix of an interpolation problem is indefinite."""

    def __init__(self, message: str, min_eig: float):
        super().__init__(message)
        self.min_eig = min_eig


@dataclass(frozen=True)
class PickData:
    """Nodes in the open disc with square matrix targets of a common size."""

    nodes: tuple[complex, ...]
    targets: tuple[np.ndarray, ...]

    def __post_init__(self):
        nodes = tuple(complex(v) for v in self.nodes)
        if len(nodes) == 0:
            raise ValueError("need at least one node")
        if len(set(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        if max(abs(v) for v in nodes) >= 1.0:
            raise ValueError("nodes must lie in the open unit disc")
        mats = tuple(np.atleast_2d(as_cmatrix(np.atleast_2d(t))) for t in self.targets)
        if len(mats) != len(nodes):
            raise ValueError("need one target per node")
        k = mats[0].shape[0]
        if any(m.shape != (k, k) for m in mats):
            raise ValueError("targets must be square matrices of a common size")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", mats)

    @property
    def k(self) -> int:
        return self.targets[0].shape[0]


def pick_matrix(data: PickData) -> np.ndarray:
    """Block matrix ``(I - W_i* W_j) / (1 - conj(lam_i) lam_j)``."""
    n, k = len(data.nodes), data.k
    eye = np.eye(k, dtype=complex)
    m = np.empty((n * k, n * k), dtype=complex)
    for i, (li, wi) in enumerate(zip(data.nodes, data.targets)):
        for j, (lj, wj) in enumerate(zip(data.nodes, data.targets)):
            m[i * k : (i + 1) * k, j * k : (j + 1) * k] = (
                eye - wi.conj().T @ wj
            ) / (1.0 - np.conj(li) * lj)
    return m


def np_solve(data: PickData, tol: float = 1e-9) -> RealizedSchurFunction:
    """Solve a solvable matricial Nevanlinna-Pick problem by isometry extension.

    Parameters
    ----------
    data : PickData
        Interpolation nodes and matrix targets.
    tol : float
        Relative slack for the Pick positivity test.

    Returns
    -------
    RealizedSchurFunction
        A Schur function with ``F(lam_j) = W_j`` to 1e-8; its state dimension
        is at most ``k * len(nodes)``.

    Raises
    ------
    UnsolvablePickError
        When the Pick matrix is indefinite beyond ``tol``.
    """
    m = hermitian_part(pick_matrix(data))
    w, u = np.linalg.eigh(m)
    top = max(float(w[-1]), 0.0)
    scale = max(1.0, top)
    min_eig = float(w[0])
    if min_eig < -tol * scale:
        raise UnsolvablePickError(
            f"Pick matrix is indefinite: min eigenvalue {min_eig:.6e}", min_eig
        )
    keep = w > _STATE_CUTOFF * max(top, 1e-300)
    l = u[:, keep] * np.sqrt(np.maximum(w[keep], 0.0))
    n, k = len(data.nodes), data.k
    r = l.shape[1]

    right = np.zeros((k + r, n * k), dtype=complex)
    left = np.zeros((k + r, n * k), dtype=complex)
    eye = np.eye(k, dtype=complex)
    for j, (lj, wj) in enumerate(zip(data.nodes, data.targets)):
        hj = l[j * k : (j + 1) * k, :]
        right[:k, j * k : (j + 1) * k] = eye
        right[k:, j * k : (j + 1) * k] = lj * hj.conj().T
        left[:k, j * k : (j + 1) * k] = wj
        left[k:, j * k : (j + 1) * k] = hj.conj().T

    defect = float(np.abs(right.conj().T @ right - left.conj().T @ left).max())
    if defect > max(tol, 1e-9) * scale * 10:
        raise GramInconsistencyError(
            f"interpolation Gram defect {defect:.3e}; data are numerically inconsistent"
        )
    sol, *_ = np.linalg.lstsq(right.T, left.T, rcond=1e-11)
    v = sol.T
    uu, sig, vh = np.linalg.svd(v)
    if sig.size and float(sig[0]) > 1.0 + 1e-8:
        raise GramInconsistencyError(f"fitted map has norm {sig[0]:.12f} > 1")
    v = (uu * np.minimum(sig, 1.0)) @ vh
    f = RealizedSchurFunction(k, r, v[:k, :k], v[:k, k:], v[k:, :k], v[k:, k:])

    vals = f.evaluate_many(np.asarray(data.nodes))
    worst = max(
        operator_norm(vals[j] - data.targets[j]) for j in range(n)
    )
    if worst > 1e-8:
        raise ArithmeticError(
            f"constructed interpolant misses a target by {worst:.3e}"
        )
    return f


# ---------------------------------------------------------------------------
# gamma-domain data carriers


@dataclass(frozen=True)
class GammaCurve:
    """Analytic map into a gamma domain with rational coordinate functions."""

    variant: str
    components: tuple[RationalFunction, ...]

    def __post_init__(self):
        sizes = {"gamma7": 7, "gamma5": 5}
        if self.variant not in sizes:
            raise ValueError(f"unsupported curve variant {self.variant!r}")
        comps = tuple(self.components)
        if len(comps) != sizes[self.variant]:
            raise ValueError(f"{self.variant} curve needs {sizes[self.variant]} components")
        if not all(isinstance(c, RationalFunction) for c in comps):
            raise ValueError("curve components must be RationalFunction instances")
        object.__setattr__(self, "components", comps)

    def point_at(self, lam: complex) -> GammaPoint:
        return GammaPoint(self.variant, tuple(complex(c(lam)) for c in self.components))


@dataclass(frozen=True)
class GammaNodes:
    """Finitely many interpolation nodes with gamma-domain coordinate targets."""

    variant: str
    nodes: tuple[complex, ...]
    points: tuple[GammaPoint, ...]

    def __post_init__(self):
        if self.variant not in ("gamma7", "gamma5"):
            raise ValueError(f"unsupported variant {self.variant!r}")
        nodes = tuple(complex(v) for v in self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        if nodes and max(abs(v) for v in nodes) >= 1.0:
            raise ValueError("nodes must lie in the open unit disc")
        pts = tuple(self.points)
        if len(pts) != len(nodes):
            raise ValueError("need one coordinate point per node")
        if any(p.variant != self.variant for p in pts):
            raise ValueError("coordinate points must match the data variant")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "points", pts)


def sample_curve(curve: GammaCurve, nodes: Sequence[complex]) -> GammaNodes:
    """Evaluate a curve at finitely many nodes."""
    nodes = tuple(complex(v) for v in nodes)
    return GammaNodes(curve.variant, nodes, tuple(curve.point_at(v) for v in nodes))


def _shared_numerators(fs: Sequence[RationalFunction]):
    """Numerators of ``fs`` over the common denominator ``fs[0].denominator``.

    Returns ``None`` unless every denominator is a scalar multiple of the
    first.  The shared form lets slice arithmetic cancel the denominator
    instead of stacking repeated factors, which would make downstream root
    extraction ill conditioned.
    """
    base = fs[0].denominator
    anchor = int(np.argmax(np.abs(base)))
    nums = []
    for f in fs:
        den = f.denominator
        if den.size != base.size:
            return None
        ratio = den[anchor] / base[anchor]
        scale = float(np.abs(den).max())
        if not np.allclose(den, ratio * base, rtol=1e-11, atol=1e-13 * scale):
            return None
        nums.append(f.numerator / ratio)
    return nums, base


def gamma_curve_from_entries(entries, variant: str) -> GammaCurve:
    """Coordinate curve of a 3x3 matrix function with rational entries.

    ``entries`` is a 3x3 nested list of :class:`RationalFunction`.  Entries
    sharing one denominator (the usual case for transfer-function entries)
    produce components over a single cubed denominator; otherwise minors and
    determinant fall back to generic rational arithmetic.
    """
    e = entries
    flat = [e[i][j] for i in range(3) for j in range(3)]
    shared = _shared_numerators(flat)
    if shared is not None:
        nums, delta = shared
        p = [nums[3 * i : 3 * i + 3] for i in range(3)]
        m12n = npoly.polysub(npoly.polymul(p[0][0], p[1][1]), npoly.polymul(p[0][1], p[1][0]))
        m13n = npoly.polysub(npoly.polymul(p[0][0], p[2][2]), npoly.polymul(p[0][2], p[2][0]))
        m23n = npoly.polysub(npoly.polymul(p[1][1], p[2][2]), npoly.polymul(p[1][2], p[2][1]))
        c12n = npoly.polysub(npoly.polymul(p[1][0], p[2][2]), npoly.polymul(p[1][2], p[2][0]))
        c13n = npoly.polysub(npoly.polymul(p[1][0], p[2][1]), npoly.polymul(p[1][1], p[2][0]))
        detn = npoly.polyadd(
            npoly.polysub(npoly.polymul(p[0][0], m23n), npoly.polymul(p[0][1], c12n)),
            npoly.polymul(p[0][2], c13n),
        )
        delta2 = npoly.polymul(delta, delta)
        big = npoly.polymul(delta2, delta)

        def over_big(num, power):
            # num / delta**power rewritten over the common denominator big.
            lift = {1: delta2, 2: delta, 3: np.ones(1, dtype=complex)}[power]
            return RationalFunction(npoly.polymul(num, lift), big)

        x1 = over_big(p[0][0], 1)
        x2 = over_big(p[1][1], 1)
        x4 = over_big(p[2][2], 1)
        x3 = over_big(m12n, 2)
        x5 = over_big(m13n, 2)
        x6 = over_big(m23n, 2)
        x7 = over_big(detn, 3)
        if variant == "gamma7":
            comps = (x1, x2, x3, x4, x5, x6, x7)
        elif variant == "gamma5":
            comps = (
                x1,
                over_big(npoly.polyadd(m12n, m13n), 2),
                x7,
                over_big(npoly.polyadd(p[1][1], p[2][2]), 1),
                x6,
            )
        else:
            raise ValueError(f"unsupported variant {variant!r}")
        return GammaCurve(variant, comps)

    m12 = e[0][0] * e[1][1] - e[0][1] * e[1][0]
    m13 = e[0][0] * e[2][2] - e[0][2] * e[2][0]
    m23 = e[1][1] * e[2][2] - e[1][2] * e[2][1]
    det = (
        e[0][0] * m23
        - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
        + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
    )
    if variant == "gamma7":
        comps = (e[0][0], e[1][1], m12, e[2][2], m13, m23, det)
    elif variant == "gamma5":
        comps = (e[0][0], m12 + m13, det, e[1][1] + e[2][2], m23)
    else:
        raise ValueError(f"unsupported variant {variant!r}")
    return GammaCurve(variant, comps)


# ---------------------------------------------------------------------------
# slices


def _slice7_point(entries: Sequence[complex], z: complex):
    x1, x2, x3, x4, x5, x6, x7 = entries
    den = 1.0 - z * x2
    if abs(den) < 1e-12:
        raise ZeroDivisionError(f"slice denominator 1 - z*x2 vanishes at z={z}")
    return ((x1 - z * x3) / den, (x4 - z * x6) / den, (x5 - z * x7) / den)


def _slice5_point(entries: Sequence[complex], z: complex, det_denominator: str):
    s1, s2, s3, s4, s5 = entries
    den = 2.0 - z * s4
    if abs(den) < 1e-12:
        raise ZeroDivisionError(f"slice denominator 2 - z*x4 vanishes at z={z}")
    p1 = (2.0 * s1 - z * s2) / den
    p2 = (s4 - 2.0 * z * s5) / den
    if det_denominator == "corrected":
        p3 = (s2 - 2.0 * z * s3) / den
    elif det_denominator == "printed":
        pden = 1.0 - z * s4
        if abs(pden) < 1e-12:
            raise ZeroDivisionError(f"printed slice denominator 1 - z*x4 vanishes at z={z}")
        p3 = (s2 - 2.0 * z * s3) / pden
    else:
        raise ValueError(f"unknown det_denominator {det_denominator!r}")
    return (p1, p2, p3)


def slice_coordinates(x, z: complex, det_denominator: str = "corrected"):
    """Slice a gamma point or curve at disc parameter ``z``.

    For a 7-tuple the result is the ``(f11, f22, det)`` triple of the 2x2
    slice function; for a 5-tuple the analogous triple of the one-variable
    structure.  ``det_denominator`` selects between the corrected determinant
    slice (default; it makes the slice identities hold) and the printed
    variant with denominator ``1 - z*x4``.
    """
    z = complex(z)
    if isinstance(x, GammaPoint):
        if x.variant == "gamma7":
            return _slice7_point(x.entries, z)
        if x.variant == "gamma5":
            return _slice5_point(x.entries, z, det_denominator)
        raise ValueError("slice_coordinates needs gamma7 or gamma5 data")
    if isinstance(x, GammaCurve):
        shared = _shared_numerators(x.components)
        if x.variant == "gamma7":
            if shared is not None:
                (n1, n2, n3, n4, n5, n6, n7), big = shared
                den = npoly.polysub(big, z * n2)
                return (
                    RationalFunction(npoly.polysub(n1, z * n3), den),
                    RationalFunction(npoly.polysub(n4, z * n6), den),
                    RationalFunction(npoly.polysub(n5, z * n7), den),
                )
            x1, x2, x3, x4, x5, x6, x7 = x.components
            den = 1.0 - z * x2
            return ((x1 - z * x3) / den, (x4 - z * x6) / den, (x5 - z * x7) / den)
        if shared is not None:
            (n1, n2, n3, n4, n5), big = shared
            den = npoly.polysub(2.0 * big, z * n4)
            p1 = RationalFunction(npoly.polysub(2.0 * n1, z * n2), den)
            p2 = RationalFunction(npoly.polysub(n4, 2.0 * z * n5), den)
            p3n = npoly.polysub(n2, 2.0 * z * n3)
            if det_denominator == "corrected":
                p3 = RationalFunction(p3n, den)
            elif det_denominator == "printed":
                p3 = RationalFunction(p3n, npoly.polysub(big, z * n4))
            else:
                raise ValueError(f"unknown det_denominator {det_denominator!r}")
            return (p1, p2, p3)
        s1, s2, s3, s4, s5 = x.components
        den = 2.0 - z * s4
        p1 = (2.0 * s1 - z * s2) / den
        p2 = (s4 - 2.0 * z * s5) / den
        if det_denominator == "corrected":
            p3 = (s2 - 2.0 * z * s3) / den
        elif det_denominator == "printed":
            p3 = (s2 - 2.0 * z * s3) / (1.0 - z * s4)
        else:
            raise ValueError(f"unknown det_denominator {det_denominator!r}")
        return (p1, p2, p3)
    raise TypeError("slice_coordinates expects a GammaPoint or GammaCurve")


def psi3_eval(x: GammaCurve, lam: complex, z1: complex, z2: complex) -> complex:
    """Two-variable fractional form of a 7-coordinate curve at ``(lam, z1, z2)``.

    Equals the transfer function of the ``z2``-slice evaluated at ``z1``.
    """
    if not isinstance(x, GammaCurve) or x.variant != "gamma7":
        raise ValueError("psi3_eval needs a gamma7 curve")
    x1, x2, x3, x4, x5, x6, x7 = (complex(c(lam)) for c in x.components)
    num = x1 - x3 * z2 - x5 * z1 + x7 * z1 * z2
    den = 1.0 - x2 * z2 - x4 * z1 + x6 * z1 * z2
    if abs(den) < 1e-12:
        raise ZeroDivisionError("fractional denominator vanishes")
    return complex(num / den)


def psi_lower3_eval(x, lam_or_z, z: complex | None = None) -> complex:
    """One-variable fractional form of a 5-coordinate point or curve.

    For a point pass ``psi_lower3_eval(point, z)``; for a curve pass
    ``psi_lower3_eval(curve, lam, z)``.
    """
    if isinstance(x, GammaCurve):
        if x.variant != "gamma5":
            raise ValueError("psi_lower3_eval needs gamma5 data")
        if z is None:
            raise ValueError("curve evaluation needs both lam and z")
        s = tuple(complex(c(lam_or_z)) for c in x.components)
        zz = complex(z)
    elif isinstance(x, GammaPoint):
        if x.variant != "gamma5":
            raise ValueError("psi_lower3_eval needs gamma5 data")
        s = x.entries
        zz = complex(lam_or_z)
    else:
        raise TypeError("psi_lower3_eval expects a GammaPoint or GammaCurve")
    num = s[0] - s[1] * zz + s[2] * zz * zz
    den = 1.0 - s[3] * zz + s[4] * zz * zz
    if abs(den) < 1e-12:
        raise ZeroDivisionError("fractional denominator vanishes")
    return complex(num / den)


# ---------------------------------------------------------------------------
# slice Schur functions


@dataclass(frozen=True, eq=False)
class SlicedSchur2x2:
    """2x2 Schur-class slice with factored off-diagonal part.

    The diagonal is rational; the off-diagonal entries are
    ``f12 = inner * sqrt(outer)`` and ``f21 = sqrt(outer)`` of the product
    ``f11 f22 - det``.  ``triangular`` marks the degenerate case where that
    product vanishes identically and the function is diagonal.
    """

    z: complex
    f11: RationalFunction
    f22: RationalFunction
    det_slice: RationalFunction
    pair: InnerOuterPair | None
    triangular: bool

    def evaluate_many(self, lam) -> np.ndarray:
        lam = np.asarray(lam, dtype=complex).ravel()
        out = np.zeros((lam.size, 2, 2), dtype=complex)
        out[:, 0, 0] = self.f11(lam)
        out[:, 1, 1] = self.f22(lam)
        if not self.triangular:
            sqrt_outer = self.pair.outer_sqrt(lam)
            out[:, 0, 1] = self.pair.inner_eval(lam) * sqrt_outer
            out[:, 1, 0] = sqrt_outer
        return out

    def evaluate(self, lam: complex) -> np.ndarray:
        return self.evaluate_many([lam])[0]

    def det_eval(self, lam):
        lam = np.asarray(lam, dtype=complex)
        vals = self.evaluate_many(lam.ravel())
        dets = vals[:, 0, 0] * vals[:, 1, 1] - vals[:, 0, 1] * vals[:, 1, 0]
        return dets.reshape(lam.shape)

    def transfer_eval(self, lam: complex, z1: complex) -> complex:
        """One-variable fractional form ``f11 + z1 f12 f21 / (1 - f22 z1)``."""
        v = self.evaluate(lam)
        den = 1.0 - v[1, 1] * z1
        if abs(den) < 1e-12:
            raise ZeroDivisionError("transfer denominator vanishes")
        return complex(v[0, 0] + z1 * v[0, 1] * v[1, 0] / den)

    def boundary_moduli(self):
        """(|f12|, |f21|) at the stored boundary nodes of the outer factor."""
        if self.triangular:
            return np.zeros(0), np.zeros(0)
        half = np.exp(self.pair.boundary_logmod / 2.0)
        nodes = np.exp(
            2j * np.pi * np.arange(self.pair.n_boundary) / self.pair.n_boundary
        )
        return np.abs(self.pair.inner_eval(nodes)) * half, half


def build_slice_schur(
    x: GammaCurve,
    z: complex,
    n_boundary: int = 2048,
    tol: float = 1e-6,
    det_denominator: str = "corrected",
) -> SlicedSchur2x2:
    """Construct the 2x2 Schur-class slice of a gamma curve at parameter ``z``.

    The construction verifies contractivity on an interior grid (slack 1e-6),
    that the determinant of the result matches the determinant slice, and
    that the lower-left entry is positive at the origin.  Failures raise
    ``ValueError`` with the worst offending point.
    """
    if not isinstance(x, GammaCurve):
        raise TypeError("build_slice_schur expects a GammaCurve")
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("slice parameter must lie in the open unit disc")
    f11, f22, det_slice = slice_coordinates(x, z, det_denominator)
    shared = _shared_numerators([f11, f22, det_slice])
    if shared is not None:
        (n1, n2, n3), den = shared
        d = RationalFunction(
            npoly.polysub(npoly.polymul(n1, n2), npoly.polymul(n3, den)),
            npoly.polymul(den, den),
        )
    else:
        d = f11 * f22 - det_slice
    if d.is_zero:
        sliced = SlicedSchur2x2(z, f11, f22, det_slice, None, True)
    else:
        pair = inner_outer(d, n_boundary=n_boundary, tol=min(tol, 1e-6))
        sliced = SlicedSchur2x2(z, f11, f22, det_slice, pair, False)

    radii = np.linspace(0.05, 1.0 - 1e-3, 12)
    angles = np.exp(2j * np.pi * np.arange(8) / 8.0)
    lam = (radii[:, None] * angles[None, :]).ravel()
    vals = sliced.evaluate_many(lam)
    norms = np.linalg.norm(vals, ord=2, axis=(1, 2))
    worst = int(np.argmax(norms))
    if float(norms[worst]) > 1.0 + 1e-6:
        raise ValueError(
            f"slice at z={z} is not contractive: norm {norms[worst]:.9f} at "
            f"lam={lam[worst]:.4f}"
        )
    det_err = float(np.abs(sliced.det_eval(lam) - det_slice(lam)).max())
    if det_err > max(tol, 1e-8):
        raise ValueError(f"slice determinant mismatch {det_err:.3e}")
    corner = complex(sliced.evaluate(0.0)[1, 0])
    if corner.real < -1e-10 or abs(corner.imag) > 1e-10:
        raise ValueError(f"lower-left entry at the origin is not positive: {corner}")
    return sliced


# ---------------------------------------------------------------------------
# reductions


def _split_pairs(products: Sequence[complex], split_rule) -> list[tuple[complex, complex]]:
    if callable(split_rule):
        return [tuple(map(complex, split_rule(p, j))) for j, p in enumerate(products)]
    if isinstance(split_rule, str):
        if split_rule == "balanced":
            return [(complex(np.sqrt(p)), complex(np.sqrt(p))) for p in products]
        if split_rule == "left-one":
            return [
                (complex(p), 1.0 + 0j) if p != 0 else (0j, 0j) for p in products
            ]
        raise ValueError(f"unknown split rule {split_rule!r}")
    pairs = [tuple(map(complex, pair)) for pair in split_rule]
    if len(pairs) != len(products):
        raise ValueError("need one explicit (b, c) pair per node")
    for (b, c), p in zip(pairs, products):
        if abs(b * c - p) > 1e-9 * max(1.0, abs(p)):
            raise ValueError(f"pair product {b * c} does not match {p}")
    return pairs


def _reduce(data: GammaNodes, z: complex, split_rule, slicer) -> PickData:
    slices = [slicer(p.entries, z) for p in data.points]
    products = [a * b - c for a, b, c in slices]
    pairs = _split_pairs(products, split_rule)
    targets = []
    for (a, b_diag, _), (b, c) in zip(slices, pairs):
        targets.append(np.array([[a, b], [c, b_diag]], dtype=complex))
    return PickData(data.nodes, tuple(targets))


def reduce_gamma7(data: GammaNodes, z2: complex, split_rule="balanced") -> PickData:
    """2x2 Pick data of a 7-coordinate interpolation problem sliced at ``z2``.

    The diagonal targets are the ``(x4, x1)``-type slice pair and the
    off-diagonal entries split the product constraint
    ``b c = t1 t2 - t3`` according to ``split_rule`` (``"balanced"``,
    ``"left-one"``, a callable, or explicit pairs).  Solvability for some
    split certifies the original data; the search here covers only the
    configured splits.
    """
    if data.variant != "gamma7":
        raise ValueError("reduce_gamma7 needs gamma7 data")
    z2 = complex(z2)

    def slicer(entries, z):
        t1, t2, t3 = _slice7_point(entries, z)
        # diagonal order swapped relative to the slice function itself
        return (t2, t1, t3)

    return _reduce(data, z2, split_rule, slicer)


def reduce_gamma5(
    data: GammaNodes, z: complex, split_rule="balanced", det_denominator: str = "corrected"
) -> PickData:
    """2x2 Pick data of a 5-coordinate interpolation problem sliced at ``z``."""
    if data.variant != "gamma5":
        raise ValueError("reduce_gamma5 needs gamma5 data")
    z = complex(z)

    def slicer(entries, zz):
        return _slice5_point(entries, zz, det_denominator)

    return _reduce(data, z, split_rule, slicer)


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CertificationRow:
    z: complex
    split: str
    solvable: bool
    min_eig: float
    target_residual: float | None
    note: str = ""


@dataclass(frozen=True)
class CertificationReport:
    variant: str
    rows: tuple[CertificationRow, ...]
    splits: tuple[str, ...]

    def solvable_splits(self) -> tuple[str, ...]:
        out = []
        for split in self.splits:
            rows = [r for r in self.rows if r.split == split]
            if rows and all(r.solvable for r in rows):
                out.append(split)
        return tuple(out)

    @property
    def certified(self) -> bool:
        return len(self.solvable_splits()) > 0


def _certify(data: GammaNodes, z_grid, split_rules, tol, reducer) -> CertificationReport:
    if z_grid is None:
        z_grid = DEFAULT_Z_GRID
    if isinstance(split_rules, str):
        split_rules = (split_rules,)
    rows = []
    for split in split_rules:
        for z in z_grid:
            z = complex(z)
            note = ""
            try:
                pick = reducer(data, z, split)
            except (ZeroDivisionError, ValueError) as exc:
                rows.append(CertificationRow(z, split, False, float("nan"), None, str(exc)))
                continue
            eigs = np.linalg.eigvalsh(hermitian_part(pick_matrix(pick)))
            min_eig = float(eigs[0])
            try:
                f = np_solve(pick, tol=tol)
                vals = f.evaluate_many(np.asarray(pick.nodes))
                resid = max(
                    operator_norm(vals[j] - pick.targets[j])
                    for j in range(len(pick.nodes))
                )
                rows.append(CertificationRow(z, split, True, min_eig, float(resid), note))
            except (UnsolvablePickError, GramInconsistencyError, ArithmeticError) as exc:
                rows.append(CertificationRow(z, split, False, min_eig, None, str(exc)))
    return CertificationReport(data.variant, tuple(rows), tuple(split_rules))


def certify_gamma7_interpolation(
    data: GammaNodes,
    z_grid=None,
    split_rules=("balanced",),
    tol: float = 1e-9,
) -> CertificationReport:
    """Slice a 7-coordinate problem over a grid of parameters and try to solve
    every resulting Pick problem.

    A split whose Pick problems are all solvable certifies the data (the
    converse direction is not decided here: failure of the configured splits
    leaves the answer open).
    """
    return _certify(
        data, z_grid, split_rules, tol, lambda d, z, s: reduce_gamma7(d, z, s)
    )


def certify_gamma5_interpolation(
    data: GammaNodes,
    z_grid=None,
    split_rules=("balanced",),
    tol: float = 1e-9,
    det_denominator: str = "corrected",
) -> CertificationReport:
    """5-coordinate counterpart of :func:`certify_gamma7_interpolation`."""
    return _certify(
        data,
        z_grid,
        split_rules,
        tol,
        lambda d, z, s: reduce_gamma5(d, z, s, det_denominator=det_denominator),
    )
