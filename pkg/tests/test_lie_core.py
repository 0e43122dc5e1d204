import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multfree.errors import UnsupportedError
from multfree.lie import (DualElement, GroupSpec, ad_star, build_realization, dual_of, dualize,
                          haar_sample, invariant_polys)

from conftest import realization

CASES = [("U(1)", "std"), ("U(2)", "std"), ("U(2)", "S2"), ("U(3)", "L2"), ("T x SO(3)", "tensor"),
         ("U(2) x SU(2)", "tensor"), ("T x Sp(2)", "tensor"), ("U(2) x Sp(2)", "tensor"),
         ("SO(3)", "std"), ("SU(2)", "sum(std,std)"), ("SO(4)", "std"), ("Sp(1)", "std")]


def test_group_dimensions():
    for text, dim in [("U(3)", 9), ("SU(3)", 8), ("SO(5)", 10), ("Sp(2)", 10), ("T", 1),
                      ("T x SO(3)", 4), ("U(2) x Sp(2)", 14)]:
        assert GroupSpec.parse(text).dim == dim


def test_u1_basis_is_i():
    real = build_realization("U(1)", "std")
    assert real.dimK == 1 and real.dimV == 1
    assert real.basis[0][0, 0] == 1j


def test_u2_basis_independent_and_skew():
    real = build_realization("U(2)", "std")
    flat = np.array([np.concatenate([a.real.ravel(), a.imag.ravel()]) for a in real.basis])
    assert len(real.basis) == 4 and np.linalg.matrix_rank(flat) == 4
    for a in real.basis:
        assert np.array_equal(a.conj().T, -a)


def test_t_so3_basis():
    real = build_realization("T x SO(3)", "tensor")
    assert real.dimK == 4 and real.dimV == 3
    a, b = real.factor_offsets[1]
    for m in real.basis[a:b]:
        assert np.all(m.imag == 0) and np.array_equal(m.T, -m)


@pytest.mark.parametrize("group,rep", CASES)
def test_realization_invariants(group, rep):
    real = realization(group, rep)
    assert real.bracket_residual() <= 1e-12
    for a in real.basis:
        assert np.abs(a.conj().T + a).max() == 0.0
    flat = np.array([np.concatenate([a.real.ravel(), a.imag.ravel()]) for a in real.basis])
    assert np.linalg.matrix_rank(flat) == real.dimK


def test_unsupported_factor_raises():
    with pytest.raises(UnsupportedError, match="unsupported factor"):
        build_realization("T x Spin(7)", "spin")
    with pytest.raises(UnsupportedError):
        invariant_polys("G2")


def test_bad_rep_tag_and_size():
    with pytest.raises(ValueError):
        build_realization("SO(3)", "S2x")
    with pytest.raises(ValueError):
        build_realization("U(9)", "std")


@pytest.mark.parametrize("group,rep", CASES)
def test_haar_unitary(group, rep):
    real = realization(group, rep)
    rng = np.random.default_rng(1)
    for _ in range(20):
        g = haar_sample(real, rng)
        assert np.abs(g.conj().T @ g - np.eye(real.dimV)).max() <= 1e-12


def test_haar_u1_scalar_and_reproducible():
    real = realization("U(1)")
    g = haar_sample(real, 7)
    assert g.shape == (1, 1) and abs(abs(g[0, 0]) - 1) <= 1e-12
    assert np.array_equal(haar_sample(realization("U(2)", "S2"), 7), haar_sample(realization("U(2)", "S2"), 7))


def test_haar_mean_u2():
    real = realization("U(2)")
    rng = np.random.default_rng(0)
    mean = sum(haar_sample(real, rng) for _ in range(10_000)) / 10_000
    assert np.abs(mean).max() < 3 / np.sqrt(10_000)


def test_ad_star_identity_and_abelian(rng):
    real = realization("U(2)", "S2")
    xi = DualElement(rng.standard_normal(real.dimK))
    assert np.allclose(ad_star(real, np.eye(real.dimV), xi).coords, xi.coords, atol=1e-14)
    u1 = realization("U(1)")
    for _ in range(10):
        x = DualElement(rng.standard_normal(1))
        assert np.abs(ad_star(u1, haar_sample(u1, rng), x).coords - x.coords).max() <= 1e-14


def test_ad_star_dimension_mismatch():
    real = realization("U(2)")
    with pytest.raises(ValueError):
        ad_star(real, np.eye(2), DualElement(np.zeros(3)))


@pytest.mark.parametrize("group,rep", CASES)
def test_ad_star_composition_and_invariance(group, rep):
    real = realization(group, rep)
    rng = np.random.default_rng(3)
    inv = invariant_polys(real.group_spec)
    for _ in range(20):
        k1, k2 = haar_sample(real, rng), haar_sample(real, rng)
        xi = DualElement(rng.standard_normal(real.dimK))
        lhs = ad_star(real, k2, ad_star(real, k1, xi)).coords
        rhs = ad_star(real, k2 @ k1, xi).coords
        assert np.abs(lhs - rhs).max() <= 1e-10
        p0, p1 = inv.evaluate(xi), inv.evaluate(ad_star(real, k1, xi))
        assert np.abs(p1 - p0).max() <= 1e-10 * (1 + np.abs(p0).max())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CASES), st.integers(0, 2**32 - 1))
def test_dualization_round_trip(case, seed):
    real = realization(*case)
    xi = DualElement(np.random.default_rng(seed).standard_normal(real.dimK))
    mats = dualize(real, xi)
    back = np.concatenate([[-np.trace(m @ real.std_basis[j]).real for j in range(a, b)]
                           for m, (a, b) in zip(mats, real.factor_offsets)])
    assert np.abs(back - xi.coords).max() <= 1e-12 * (1 + np.abs(xi.coords).max())


def test_torus_invariant_is_coordinate():
    inv = invariant_polys("T")
    assert inv.degrees == [1]
    assert inv.evaluate(DualElement([2.5]))[0] == 2.5


def test_u2_invariants_at_diag_1_2():
    # the dual of X = i diag(1, 2) under B(X, Y) = -Re tr(XY)
    real = realization("U(2)")
    x = np.diag([1j, 2j])
    xi = dual_of(real, x)
    xm = dualize(real, xi)[0]
    assert np.abs(xm - x).max() <= 1e-14
    vals = invariant_polys("U(2)").evaluate(xi)
    # tr(iX) = -(1 + 2), tr((iX)^2) = 1 + 4, which is -tr(X^2)
    assert np.allclose(vals, [-3.0, 5.0], atol=1e-12)
    assert np.isclose(np.trace(xm @ xm).real, -5.0)


def test_so3_single_generator_invariant():
    real = realization("SO(3)")
    inv = invariant_polys("SO(3)")
    assert inv.degrees == [2]
    rng = np.random.default_rng(5)
    for _ in range(100):
        xi = DualElement(rng.standard_normal(3))
        k = haar_sample(real, rng)
        p0, p1 = inv.evaluate(xi), inv.evaluate(ad_star(real, k, xi))
        assert abs(p1[0] - p0[0]) <= 1e-10 * (1 + abs(p0[0]))
