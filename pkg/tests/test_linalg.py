import numpy as np
import pytest

from gammapick.linalg import (
    IndefiniteMatrixError,
    NonHermitianError,
    as_cmatrix,
    gram_factor,
    hermitian_part,
    is_psd,
    operator_norm,
)


def test_as_cmatrix_accepts_nested_lists():
    m = as_cmatrix([[1, 2j], [0, 1]])
    assert m.dtype == complex
    assert m.shape == (2, 2)


def test_as_cmatrix_rejects_non_2d():
    with pytest.raises(ValueError):
        as_cmatrix([1, 2, 3])


def test_as_cmatrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_cmatrix([[np.nan, 0], [0, 1]])


def test_operator_norm_matches_svd():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert operator_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False)[0])


def test_hermitian_part_is_hermitian_and_projects():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = hermitian_part(m)
    np.testing.assert_allclose(h, h.conj().T)
    # already-Hermitian input is a fixed point
    np.testing.assert_allclose(hermitian_part(h), h)


def test_is_psd_on_gram_and_indefinite():
    rng = np.random.default_rng(2)
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert is_psd(b.conj().T @ b)
    assert not is_psd(np.diag([1.0, -1e-3]))
    # tolerance absorbs tiny negative eigenvalues
    assert is_psd(np.diag([1.0, -1e-12]), tol=1e-9)


def test_is_psd_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        is_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_gram_factor_reconstructs_and_reports_rank():
    rng = np.random.default_rng(3)
    v = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    g = v @ v.conj().T
    f = gram_factor(g)
    assert f.shape[1] == 2
    np.testing.assert_allclose(f @ f.conj().T, g, atol=1e-10)


def test_gram_factor_raises_on_indefinite():
    with pytest.raises(IndefiniteMatrixError, match="indefinite"):
        gram_factor(np.diag([1.0, -0.5]))


def test_gram_factor_zero_matrix_has_zero_columns():
    f = gram_factor(np.zeros((3, 3)))
    assert f.shape == (3, 0)
