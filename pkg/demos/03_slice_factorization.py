"""Slicing an analytic gamma curve into one-variable Schur functions.

A rational map into the seven-coordinate gamma domain can be frozen at one
disc parameter to produce a 2x2 Schur-class function whose off-diagonal
entries come from an inner-outer factorization.  The script builds such a
curve from a random realization, slices it, and verifies the structural
facts the slice is designed to satisfy.  It closes with the factorization
machinery on its own.
"""

import numpy as np

from gammapick.hardy import RationalFunction, inner_outer
from gammapick.nevanlinna import build_slice_schur, gamma_curve_from_entries, psi3_eval
from gammapick.realization import random_schur, realization_to_rational

f = random_schur(3, m=1, seed=11, max_sigma=0.9)
curve = gamma_curve_from_entries(realization_to_rational(f), "gamma7")
print("gamma7 curve from a degree-1 realization; component degrees:",
      [len(c.numerator) - 1 for c in curve.components])
print()

z = 0.4 - 0.25j
s = build_slice_schur(curve, z)
print(f"== slice at z = {z} ==")
rng = np.random.default_rng(3)
lam = 0.995 * np.sqrt(rng.uniform(size=300)) * np.exp(2j * np.pi * rng.uniform(size=300))
vals = s.evaluate_many(lam)
norms = np.linalg.norm(vals, ord=2, axis=(1, 2))
print(f"sup norm over 300 interior points: {norms.max():.6f}  (contractive)")

# the slice determinant must reproduce the curve's determinant coordinate
x2, x5, x7 = (curve.components[i](lam) for i in (1, 4, 6))
dets = vals[:, 0, 0] * vals[:, 1, 1] - vals[:, 0, 1] * vals[:, 1, 0]
print(f"det matches the y3 slice to {np.abs(dets - (x5 - z * x7) / (1 - z * x2)).max():.3e}")

m12, m21 = s.boundary_moduli()
print(f"|F12| = |F21| on {m12.size} boundary samples to {np.abs(m12 - m21).max():.3e}")
print(f"F21(0) = {s.evaluate(0.0)[1, 0]:.6f}  (nonnegative by normalization)")

# the one-variable transfer function of the slice reproduces the
# three-variable fractional map evaluated with the slice parameter frozen
worst = 0.0
for _ in range(25):
    l0, z10 = 0.8 * rng.uniform(size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
    worst = max(worst, abs(s.transfer_eval(l0, z10) - psi3_eval(curve, l0, z10, z)))
print(f"transfer function vs three-variable map: {worst:.3e}")
print()

print("== inner-outer factorization by itself ==")
g = RationalFunction([0.0, 2.0, -1.0], [1.0])  # lam (2 - lam), one zero inside
pair = inner_outer(g)
print(f"Blaschke zeros: {np.round(pair.blaschke_zeros, 6)}")
print(f"outer part at 0: {pair.outer_eval(np.array([0.0]))[0]:.6f}  (zero-free, positive)")
pts = 0.8 * rng.uniform(size=10) * np.exp(2j * np.pi * rng.uniform(size=10))
recon = np.abs(pair.eval(pts) - g(pts)).max()
print(f"inner x outer reconstructs the function to {recon:.3e}")
root = np.abs(pair.outer_sqrt(pts) ** 2 - pair.outer_eval(pts)).max()
print(f"outer square root squares back to {root:.3e}")
