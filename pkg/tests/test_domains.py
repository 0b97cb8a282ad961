import numpy as np
import pytest

from gammapick.domains import (
    E211,
    E311,
    E312,
    BlockStructure,
    in_gamma,
    mu,
    pi_coordinates,
    tetrablock_member,
)
from oracles import mu_oracle, tetrablock_completion_mu


def test_block_structure_validation():
    with pytest.raises(ValueError):
        BlockStructure(3, 2, (1, 1))  # block sizes must sum to n
    with pytest.raises(ValueError):
        BlockStructure(3, 0, ())
    assert E311.label() == "E(3;3;1,1,1)"
    assert E312.label() == "E(3;2;1,2)"
    assert E211.label() == "E(2;2;1,1)"


def test_mu_rejects_wrong_shape():
    with pytest.raises(ValueError):
        mu(np.eye(2), E311)


def test_mu_diagonal_is_largest_modulus_entry():
    a = np.diag([0.5, 0.25, 0.2])
    assert mu(a, E311) == pytest.approx(0.5, abs=1e-12)
    assert mu(a, E312) == pytest.approx(0.5, abs=1e-12)


def test_mu_nilpotent_is_zero():
    a = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
    assert mu(a, E311) == 0.0
    assert mu(a, E312) == 0.0


def test_mu_identity_is_one():
    assert mu(np.eye(3), E311) == pytest.approx(1.0, rel=1e-6)


def test_mu_scaling_equivariance():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    base = mu(a, E311)
    assert mu(2.5 * a, E311) == pytest.approx(2.5 * base, rel=1e-6)


def test_mu_dominates_spectral_radius_and_structure_order():
    # scalar multiples of the identity are admissible in every structure, so
    # mu bounds the spectral radius from above; the two-block structure is a
    # subset of the full-diagonal one, so its mu cannot exceed it
    rng = np.random.default_rng(6)
    for _ in range(5):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = np.max(np.abs(np.linalg.eigvals(a)))
        m311 = mu(a, E311)
        m312 = mu(a, E312)
        assert m311 >= rho - 1e-8
        assert m312 <= m311 + 1e-8


@pytest.mark.parametrize("structure", [E311, E312])
def test_mu_matches_independent_oracle(structure):
    rng = np.random.default_rng(7)
    for _ in range(5):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        lib = mu(a, structure)
        ora = mu_oracle(a, structure.label())
        assert lib == pytest.approx(ora, rel=1e-4, abs=1e-10)


def test_mu_e211_matches_oracle():
    rng = np.random.default_rng(8)
    for _ in range(5):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert mu(a, E211) == pytest.approx(mu_oracle(a, E211.label()), rel=1e-4)


def test_pi_coordinates_identity():
    assert pi_coordinates(np.eye(3), "gamma7").entries == tuple([1 + 0j] * 7)
    assert pi_coordinates(np.eye(3), "gamma5").entries == (1, 2, 1, 2, 1)


def test_pi_coordinates_match_minors():
    rng = np.random.default_rng(9)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))

    def minor(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        return np.linalg.det(a[np.ix_(rows, cols)])

    x = pi_coordinates(a, "gamma7").entries
    expected = (
        a[0, 0], a[1, 1], minor(2, 2), a[2, 2], minor(1, 1), minor(0, 0),
        np.linalg.det(a),
    )
    np.testing.assert_allclose(x, expected, atol=1e-12)

    y = pi_coordinates(a, "gamma5").entries
    np.testing.assert_allclose(
        y,
        (a[0, 0], minor(2, 2) + minor(1, 1), np.linalg.det(a),
         a[1, 1] + a[2, 2], minor(0, 0)),
        atol=1e-12,
    )


def test_pi_coordinates_rejects_unknown_variant():
    with pytest.raises(ValueError):
        pi_coordinates(np.eye(3), "gamma9")


def test_in_gamma_contractive_and_scaled():
    rng = np.random.default_rng(10)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a = 0.8 * a / np.linalg.svd(a, compute_uv=False)[0]
    assert in_gamma(a, E311)
    assert in_gamma(a, E312)
    assert not in_gamma(4.0 * a / 0.8, E311)


def test_tetrablock_member_fixtures():
    assert tetrablock_member((0.3, 0.2, 0.05))
    assert not tetrablock_member((1.4, 0.0, 0.0))
    # diagonal point on the boundary of membership
    assert tetrablock_member((1.0, 0.0, 0.0))


def test_tetrablock_member_matches_completion_oracle():
    pts = [
        (0.3, 0.2, 0.05),
        (0.6 + 0.2j, -0.4, 0.1j),
        (0.9, 0.9, 0.81),
        (1.2, 0.1, 0.0),
        (0.5j, 0.5, 0.3),
    ]
    for x in pts:
        member = tetrablock_member(x)
        completion = tetrablock_completion_mu(x)
        assert member == (completion <= 1.0 + 1e-6), (x, completion)


def test_tetrablock_contains_contraction_coordinates():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        a = 0.95 * a / np.linalg.svd(a, compute_uv=False)[0]
        x = (a[0, 0], a[1, 1], np.linalg.det(a))
        assert tetrablock_member(x)
