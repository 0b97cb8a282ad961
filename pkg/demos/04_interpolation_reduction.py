"""Reducing gamma-domain interpolation to matrix Pick problems.

Three-point interpolation into the seven-coordinate gamma domain is decided
by slicing the node data at disc parameters z and solving the resulting 2x2
Pick problems.  The script builds node data from an explicit analytic map,
runs the reduction at a single z, certifies the whole grid, shows the scaled
data failing, and finishes with the scalar Schwarz picture that anchors the
whole construction.
"""

import numpy as np

from gammapick.domains import E311, GammaPoint, mu, pi_coordinates
from gammapick.nevanlinna import (
    GammaNodes,
    PickData,
    UnsolvablePickError,
    certify_gamma5_interpolation,
    certify_gamma7_interpolation,
    np_solve,
    pick_matrix,
    reduce_gamma7,
)

a0 = np.array([[0.5, 0.2, 0.0], [0.0, 0.4, 0.1], [0.1, 0.0, 0.3]], complex)
nodes = (0.2, -0.35 + 0.1j, 0.45j)
print(f"generating map: lam -> pi(lam * A0), mu(A0) = {mu(a0, E311):.4f}")


def gamma7_nodes(scale):
    points = tuple(
        GammaPoint(
            "gamma7",
            tuple(scale * np.asarray(pi_coordinates(l * a0, "gamma7").entries)),
        )
        for l in nodes
    )
    return GammaNodes("gamma7", nodes, points)


print()
print("== one slice, by hand ==")
data = reduce_gamma7(gamma7_nodes(1.0), z2=0.3, split_rule="balanced")
eigs = np.linalg.eigvalsh(pick_matrix(data))
print(f"Pick matrix eigenvalues at z = 0.3: {np.round(eigs, 4)}")
f = np_solve(data)
vals = f.evaluate_many(np.asarray(nodes))
res = max(np.abs(vals[i] - data.targets[i]).max() for i in range(3))
print(f"solved with state dimension {f.s.shape[0]}, target residual {res:.3e}")
print()

print("== certification over the default z grid ==")
report = certify_gamma7_interpolation(gamma7_nodes(1.0))
print(f"{len(report.rows)} slice problems, all solvable:",
      all(r.solvable for r in report.rows))
print()

print("== the same data scaled x3 ==")
scaled = certify_gamma7_interpolation(
    gamma7_nodes(3.0), split_rules=("balanced", "left-one")
)
worst = min(r.min_eig for r in scaled.rows if r.min_eig is not None)
print(f"solvable at any tested split: {any(r.solvable for r in scaled.rows)}")
print(f"most negative Pick eigenvalue seen: {worst:.4f}")
print()

print("== five-coordinate variant ==")
points5 = tuple(
    GammaPoint("gamma5", tuple(np.asarray(pi_coordinates(l * a0, "gamma5").entries)))
    for l in nodes
)
report5 = certify_gamma5_interpolation(GammaNodes("gamma5", nodes, points5))
print(f"{len(report5.rows)} slice problems, all solvable:",
      all(r.solvable for r in report5.rows))
print()

# the degenerate one-point picture behind all of this: a Schur function
# with f(0) = 0 satisfies |f(0.5)| <= 0.5, and every such value is attained
print("== scalar Schwarz boundary ==")
for w in (0.3, 0.5, 0.51):
    data = PickData((0.0, 0.5), (np.zeros((1, 1)), np.array([[complex(w)]])))
    try:
        np_solve(data)
        verdict = "solvable"
    except UnsolvablePickError as exc:
        verdict = f"unsolvable (min eig {exc.min_eig:.4f})"
    print(f"  (0, 0.5) -> (0, {w}): {verdict}")
