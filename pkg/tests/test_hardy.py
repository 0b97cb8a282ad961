import numpy as np
import pytest

from gammapick.hardy import (
    InnerOuterPair,
    RationalFunction,
    blaschke_eval,
    inner_outer,
    outer_sqrt_eval,
)


def _circle(n=64):
    return np.exp(2j * np.pi * np.arange(n) / n)


def _disc_grid(radius=0.7, n=50):
    rng = np.random.default_rng(12)
    return radius * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def test_rational_arithmetic_matches_pointwise():
    # numerator roots of g stay outside the disc so the quotient is admissible
    f = RationalFunction([1.0, 2.0], [1.0, 0.0, 0.25])  # poles at |lam| = 2
    g = RationalFunction([1.0, 0.0, 0.5], [1.0, -0.3])
    lam = _disc_grid()
    np.testing.assert_allclose((f + g)(lam), f(lam) + g(lam), atol=1e-12)
    np.testing.assert_allclose((f * g)(lam), f(lam) * g(lam), atol=1e-12)
    np.testing.assert_allclose((f - g)(lam), f(lam) - g(lam), atol=1e-12)
    np.testing.assert_allclose((f / g)(lam), f(lam) / g(lam), atol=1e-12)


def test_rational_same_denominator_addition_keeps_denominator():
    den = np.array([1.0, 0.1, 0.04])
    f = RationalFunction([1.0, 1.0], den)
    g = RationalFunction([2.0, 0.5], den)
    h = f + g
    np.testing.assert_array_equal(h.denominator, den)
    np.testing.assert_allclose(h.numerator, [3.0, 1.5])
    q = f / g
    np.testing.assert_array_equal(q.denominator, np.array([2.0, 0.5]))


def test_rational_rejects_pole_inside_disc():
    with pytest.raises(ValueError, match="root"):
        RationalFunction([1.0], [1.0, -2.0])  # pole at 0.5


def test_rational_rejects_pole_on_circle():
    with pytest.raises(ValueError):
        RationalFunction([1.0], [1.0, -1.0])  # pole at 1


def test_rational_accepts_high_multiplicity_outside_pole():
    # repeated factors scatter computed roots; the winding count must not
    base = np.array([1.0, -1.0 / 1.111])
    den = np.array([1.0])
    for _ in range(9):
        den = np.polynomial.polynomial.polymul(den, base)
    f = RationalFunction(np.ones(3), den)
    lam = _disc_grid(radius=0.8, n=20)
    direct = np.polynomial.polynomial.polyval(lam, np.ones(3)) / (
        np.polynomial.polynomial.polyval(lam, den)
    )
    np.testing.assert_allclose(f(lam), direct, atol=1e-10)


def test_rational_trim_and_zero_and_roots():
    f = RationalFunction([0.25, -1.0, 0.0, 0.0], [1.0])
    assert f.numerator.size == 2
    assert not f.is_zero
    assert RationalFunction([0.0], [1.0]).is_zero
    np.testing.assert_allclose(f.numerator_roots(), [0.25], atol=1e-12)


def test_blaschke_eval_unimodular_on_boundary_and_vanishes_at_zeros():
    zeros = [0.3 + 0.2j, -0.5j]
    vals = blaschke_eval(zeros, 1.0, _circle())
    np.testing.assert_allclose(np.abs(vals), 1.0, atol=1e-12)
    np.testing.assert_allclose(blaschke_eval(zeros, 1.0, np.array(zeros)), 0.0, atol=1e-14)
    # zero at the origin contributes a bare monomial factor
    np.testing.assert_allclose(blaschke_eval([0.0], 1.0, [0.25]), [0.25], atol=1e-14)


def _reconstruction_error(f, pair, radius=0.9, n=60):
    lam = _disc_grid(radius=radius, n=n)
    return float(np.abs(pair.eval(lam) - f(lam)).max())


def test_inner_outer_polynomial_with_interior_zero():
    f = RationalFunction([0.0, 2.0, -1.0], [1.0])  # lam (2 - lam)
    pair = inner_outer(f)
    assert _reconstruction_error(f, pair) <= 1e-8
    np.testing.assert_allclose(np.abs(pair.blaschke_zeros), [0.0], atol=1e-9)
    assert pair.outer_eval(np.array([0.0]))[0].real > 0
    # boundary modulus of the outer factor equals |f| there
    nodes = _circle(pair.n_boundary)
    np.testing.assert_allclose(
        pair.boundary_outer_modulus(), np.abs(f(nodes)), atol=1e-8
    )


def test_inner_outer_blaschke_factor_has_trivial_outer():
    f = RationalFunction([0.5, -1.0], [1.0, -0.5])  # (0.5 - lam)/(1 - 0.5 lam)
    pair = inner_outer(f)
    assert _reconstruction_error(f, pair) <= 1e-8
    lam = _disc_grid(radius=0.8, n=30)
    np.testing.assert_allclose(pair.outer_eval(lam), np.ones_like(lam), atol=1e-8)
    assert abs(abs(pair.unimodular_constant) - 1.0) <= 1e-9


def test_inner_outer_constant():
    f = RationalFunction([-2.0], [1.0])
    pair = inner_outer(f)
    assert pair.blaschke_zeros.size == 0
    np.testing.assert_allclose(pair.eval(np.array([0.3j])), [-2.0], atol=1e-9)


def test_inner_outer_zero_function_rejected():
    with pytest.raises(ValueError):
        inner_outer(RationalFunction([0.0], [1.0]))


def test_exact_outer_path_and_sqrt():
    f = RationalFunction([6.0, 1.0, -1.0], [1.0])  # (2 - lam)(3 + lam), no inner part
    pair = inner_outer(f)
    assert pair.has_exact_outer
    lam = _disc_grid(radius=0.9, n=60)
    np.testing.assert_allclose(pair.outer_eval(lam), f(lam), atol=1e-9)
    s = pair.outer_sqrt(lam)
    np.testing.assert_allclose(s * s, f(lam), atol=1e-9)
    assert np.all(s.real > 0)  # factors stay in the right half-plane
    np.testing.assert_allclose(outer_sqrt_eval(pair, lam), s, atol=0)


def test_outer_sqrt_matches_principal_branch():
    f = RationalFunction([2.0, -1.0], [1.0])  # 2 - lam, values in the right half-plane
    pair = inner_outer(f)
    lam = _disc_grid(radius=0.95, n=80)
    np.testing.assert_allclose(pair.outer_sqrt(lam), np.sqrt(f(lam)), atol=1e-6)


def test_herglotz_fallback_near_circle_pole():
    # a denominator root just outside the margin forces the quadrature route,
    # which needs enough nodes to resolve the boundary spike
    f = RationalFunction([1.0, 0.5], [1.0, -1.0 / 1.0008])
    pair = inner_outer(f, n_boundary=16384)
    assert not pair.has_exact_outer
    lam = _disc_grid(radius=0.7, n=40)
    np.testing.assert_allclose(pair.eval(lam), f(lam), atol=1e-6)


def test_inner_outer_refuses_under_resolved_boundary_zero():
    # a numerator root touching the circle cannot be represented at default
    # resolution; the factorization must fail loudly instead of degrading
    f = RationalFunction([1.0, -1.0], [1.0])
    with pytest.warns(UserWarning, match="unit circle"):
        with pytest.raises(ValueError, match="under-resolved"):
            inner_outer(f)


def test_exact_pair_root_validation():
    with pytest.raises(ValueError):
        InnerOuterPair(
            1.0,
            np.zeros(0),
            np.zeros(2048),
            outer_roots=np.array([0.5 + 0.0j]),  # must lie outside the closed disc
            den_roots=np.zeros(0, dtype=complex),
            outer_scale=1.0,
        )
