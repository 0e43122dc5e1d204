from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multfree.lie import DualElement, ad_star, dualize, haar_sample
from multfree.moment import (capelli_probe, equivariance_residual, fiber_orbit_probe, finite_to_one_verdict,
                             orbit_dim, orbit_in_image_probe, pullback_jacobian_rank, tau,
                             mf_rank_crosscheck)
from multfree.moment.rank import FD_AGREEMENT
from multfree.weyl_algebra import PolyVR

from conftest import random_vector, realization

SUPPORTED = [("U(1)", "std"), ("U(2)", "std"), ("U(2)", "S2"), ("U(3)", "L2"), ("T x SO(3)", "tensor"),
             ("U(2) x SU(2)", "tensor"), ("T x Sp(2)", "tensor"), ("U(2) x Sp(2)", "tensor"),
             ("SO(3)", "std"), ("SU(2)", "sum(std,std)"), ("T", "sum(std,std)")]


def test_tau_zero_and_u1():
    assert np.array_equal(tau(realization("U(2)", "S2"), np.zeros(3)).coords, np.zeros(4))
    assert tau(realization("U(1)"), [2.0]).coords.tolist() == [-4.0]


def test_tau_dimension_mismatch():
    with pytest.raises(ValueError):
        tau(realization("U(2)"), np.zeros(3))


def test_tau_u2_dualizes_to_rank_one(rng):
    # B(-i z z^*, A) = -Im(z^* A z) = Im <z, A z>
    real = realization("U(2)")
    e1 = np.array([1.0, 0.0], dtype=complex)
    assert np.abs(dualize(real, tau(real, e1).as_dual())[0] - np.diag([-1j, 0])).max() <= 1e-14
    z = random_vector(rng, 2)
    x = dualize(real, tau(real, z).as_dual())[0]
    assert np.abs(x - (-1j) * np.outer(z, z.conj())).max() <= 1e-12


@pytest.mark.parametrize("case", SUPPORTED)
def test_equivariance_and_homogeneity(case):
    real = realization(*case)
    rng = np.random.default_rng(11)
    for _ in range(100):
        z, k = random_vector(rng, real.dimV), haar_sample(real, rng)
        assert equivariance_residual(real, z, k) <= 1e-10
        c = rng.uniform(-2, 2)
        t = tau(real, z)
        assert np.abs(tau(real, c * z).coords - c * c * t.coords).max() <= 1e-12
        assert t.residual <= 1e-12 * (1 + np.abs(z).max() ** 2)
    assert equivariance_residual(real, random_vector(rng, real.dimV), np.eye(real.dimV)) <= 1e-15


def test_equivariance_u1_trivial(rng):
    real = realization("U(1)")
    for _ in range(20):
        assert equivariance_residual(real, random_vector(rng, 1), haar_sample(real, rng)) <= 1e-15


def test_orbit_dim_examples(rng):
    assert orbit_dim(realization("U(2)"), np.zeros(2)) == 0
    assert orbit_dim(realization("U(1)"), [0.3 + 0.1j]) == 1
    assert orbit_dim(realization("U(2)"), random_vector(rng, 2)) == 3


@pytest.mark.parametrize("case,rank,codim,verdict", [
    (("U(1)", "std"), 1, 1, "finite_to_one"),
    (("SO(3)", "std"), 1, 3, "not_finite_to_one"),
    (("T x SO(3)", "tensor"), 2, 2, "finite_to_one"),
])
def test_rank_examples(case, rank, codim, verdict):
    rep = pullback_jacobian_rank(realization(*case), 64, 0)
    assert (rep.pullback_rank, rep.orbit_codim, rep.verdict) == (rank, codim, verdict)


@pytest.mark.parametrize("case,expected", [
    (("U(2)", "std"), True), (("SO(3)", "std"), False), (("U(2)", "S2"), True)])
def test_finite_to_one_examples(case, expected):
    verdict, rep = finite_to_one_verdict(realization(*case))
    assert verdict is expected and rep.samples == 64


@pytest.mark.parametrize("case", SUPPORTED)
def test_rank_report_invariants(case):
    rep = pullback_jacobian_rank(realization(*case), 16, 1)
    assert rep.invariant_holds
    assert rep.fd_agreement <= FD_AGREEMENT
    assert (rep.verdict == "finite_to_one") == (rep.generic_fraction >= 0.9)


@pytest.mark.parametrize("case,mf", [(("U(2)", "std"), True), (("SO(3)", "std"), False),
                                     (("SU(2)", "sum(std,std)"), False)])
def test_crosscheck_examples(case, mf):
    c = mf_rank_crosscheck(realization(*case), 4)
    assert c.multiplicity_free is mf and c.finite_to_one is mf and c.agree


@pytest.mark.parametrize("case", [("U(1)", "std"), ("U(2)", "std")])
def test_fiber_probe_single_orbit(case, rng):
    real = realization(*case)
    res = fiber_orbit_probe(real, random_vector(rng, real.dimV), 16, 0)
    assert res.verdict == "single_orbit" and res.cluster_count == 1


def test_fiber_probe_so3_grows(rng):
    real = realization("SO(3)")
    z0 = random_vector(rng, 3)
    few = fiber_orbit_probe(real, z0, 8, 0).cluster_count
    many = fiber_orbit_probe(real, z0, 32, 0)
    assert many.verdict == "multiple_orbits" and many.cluster_count > few > 1


def test_capelli_examples():
    assert capelli_probe(realization("U(2)"), 4).verdict == "surjective_up_to_4"
    assert capelli_probe(realization("T x SO(3)", "tensor"), 4).verdict == "surjective_up_to_4"
    assert capelli_probe(realization("U(2)", "S2"), 0).verdict == "surjective_up_to_0"
    res = capelli_probe(realization("SO(3)"), 2)
    assert not res.surjective
    sq = sum((PolyVR.z(3, i) * PolyVR.z(3, i) for i in range(3)), PolyVR.zero(3))
    assert res.witness == (sq + sq.conj()).scale(Fraction(1, 2))
    assert res.witness_residual > 1e-2


def test_capelli_cap_limit():
    with pytest.raises(ValueError):
        capelli_probe(realization("U(1)"), 7)


def test_image_probe_origin():
    for case in SUPPORTED[:4]:
        real = realization(*case)
        res = orbit_in_image_probe(real, np.zeros(real.dimK), 4, 0)
        assert res.reached and np.abs(res.witness).max() <= 1e-8


def test_image_probe_s2_diagrams():
    from multfree.catalog.spectrum import YoungDiagram, alpha_for

    real = realization("U(2)", "S2")
    for rows in [(2,), (1, 1)]:
        res = orbit_in_image_probe(real, alpha_for(real, YoungDiagram(rows)), 16, 0)
        assert res.reached and res.residual <= 1e-8


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(SUPPORTED[:8]), st.integers(0, 2**31))
def test_image_points_reached(case, seed):
    real = realization(*case)
    z0 = random_vector(np.random.default_rng(seed), real.dimV)
    alpha = tau(real, z0).coords
    res = orbit_in_image_probe(real, alpha, 16, seed)
    assert res.reached
    k = haar_sample(real, seed)
    assert orbit_in_image_probe(real, ad_star(real, k, DualElement(alpha)), 16, seed).reached
