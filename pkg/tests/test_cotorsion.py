"""The classes Φ, Ψ, ℰ and the certificate-level cotorsion checks."""
import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

import quiverhom.cotorsion as cot
from quiverhom.algebra import fixture, make_ground
from quiverhom.exactla import FieldSpec
from quiverhom.modcat import (
    dual_regular_module,
    identity_morphism,
    is_projective,
    proj,
    random_representation,
    regular_module,
    residue_module,
    restrict_to_field,
    s_functor,
    simple,
    tensor_k,
)

F7 = FieldSpec.prime(7)


@lru_cache(maxsize=None)
def alg_of(name):
    return fixture(name, F7)


@lru_cache(maxsize=None)
def ground(g):
    return make_ground(g, F7)


fixtures = st.sampled_from(["C1", "C3"])
grounds = st.sampled_from(["k", "dual"])
seeds = st.integers(0, 10 ** 6)


@given(fixtures, grounds, seeds)
def test_e_criteria_agree(name, g, seed):
    X = cot.sample_mixed(alg_of(name), ground(g), random.Random(seed), 3)
    rep = cot.e_criteria(X)
    assert rep.agree
    # over a self-injective algebra ℰ is exactly "projective over Λ"
    assert rep.verdict == is_projective(restrict_to_field(X))


@given(fixtures, grounds, seeds)
def test_sample_e_lands_in_e(name, g, seed):
    X = cot.sample_e(alg_of(name), ground(g), random.Random(seed), 3)
    assert cot.e_membership(X)


def test_e_examples_over_dual_numbers():
    alg, R = alg_of("C1"), ground("dual")
    assert cot.e_membership(tensor_k(proj(alg, 0), residue_module(R)))
    assert not cot.e_membership(s_functor(alg, 0, regular_module(R)))
    assert not cot.e_membership(simple(alg, 0, R))


def test_engine_disagreement_is_raised(monkeypatch):
    alg, R = alg_of("C1"), ground("k")
    monkeypatch.setattr(cot, "derived_c_dim", lambda i, q, X: 1)
    with pytest.raises(cot.EngineDisagreement):
        cot.e_membership(proj(alg, 0, R))


def test_phi_and_psi_examples():
    alg, R = alg_of("C3"), ground("dual")
    projective = cot.projective_class(R)
    injective = cot.injective_class(R)
    P = proj(alg, 1, R)
    assert cot.phi_membership(P, projective).in_phi
    assert not cot.phi_membership(tensor_k(proj(alg, 1), residue_module(R)), projective).in_phi
    PI = tensor_k(proj(alg, 2), dual_regular_module(R))
    assert cot.psi_membership(PI, injective).in_psi
    # K_0 = k is not injective over R, and R^1 K_1 = Ext^1(S<1>, S<0>) = k
    rep = cot.psi_membership(simple(alg, 0, R), injective)
    assert not rep.in_psi and rep.failing == ["0", "1"]
    assert rep.R1K == {"0": 0, "1": 1, "2": 0}


@pytest.mark.parametrize("pair", ["projective-all", "all-injective"])
def test_perp_equivalence_small(pair):
    alg, R = alg_of("C3"), ground("dual")
    rng = random.Random(5)
    samples = [cot.sample_mixed(alg, R, rng, 3) for _ in range(15)]
    rep = cot.perp_equivalence(cot.builtin_pair(pair, R), samples)
    assert rep["passed"] and rep["agreements"] == 15


def test_perp_equivalence_requires_regular_generator():
    R = ground("dual")
    bad = cot.CotorsionPair("bad", cot.all_class(R), cot.all_class(R), generators=(residue_module(R),))
    with pytest.raises(ValueError, match="regular"):
        cot.perp_equivalence(bad, [proj(alg_of("C1"), 0, R)])


def test_perp_certificate_detects_nonvanishing_ext():
    alg, R = alg_of("C1"), ground("k")
    S = simple(alg, 0, R)
    assert not cot.perp_certificate(S, [S], "left")
    assert cot.perp_certificate(proj(alg, 0, R), [S], "left")
    with pytest.raises(ValueError):
        cot.perp_certificate(S, [S], "middle")


def test_compatibility_suite_small():
    alg, R = alg_of("C3"), ground("dual")
    pair = cot.builtin_pair("projective-all", R)
    rng = random.Random(2)
    phis = [cot.sample_class(alg, R, rng, lambda X: cot.phi_membership(X, pair.A).in_phi, 3) for _ in range(5)]
    psis = [cot.sample_e(alg, R, rng, 3) for _ in range(5)]
    rep = cot.compatibility_suite(pair, phis, psis)
    assert rep["passed"] and rep["comp1_pairs_checked"] == 25


@given(fixtures, seeds, st.sampled_from(["projective-all", "all-injective"]))
def test_trivial_class_witness_agrees(name, seed, pair):
    R = ground("dual")
    X = cot.sample_mixed(alg_of(name), R, random.Random(seed), 3)
    w = cot.trivial_class_membership(X, cot.builtin_pair(pair, R))
    assert w.details["agree"]
    assert (w.witness != "none") == w.verdict


def test_hovey_identity_is_both():
    X = proj(alg_of("C1"), 0, ground("dual"))
    rep = cot.hovey_predicates(identity_morphism(X), [X], [X])
    assert rep["fibration"] and rep["cofibration"]


def test_hereditary_spotcheck():
    assert cot.hereditary_spotcheck(alg_of("C3"), ground("dual"), 6, 1)["passed"]


def test_unknown_pair():
    with pytest.raises(KeyError):
        cot.builtin_pair("flat-cotorsion", ground("k"))
