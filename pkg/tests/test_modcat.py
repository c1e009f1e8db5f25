"""Representations, morphisms and the standard constructions."""
import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from quiverhom.algebra import fixture, make_ground, radical_multiplicities
from quiverhom.exactla import FieldSpec, Matrix, inverse
from quiverhom.modcat import (
    RepMorphism,
    Representation,
    RepresentationError,
    cokernel,
    direct_sum,
    dual,
    find_isomorphism,
    free_module,
    full_dual,
    hom_space,
    image,
    inj,
    injective_envelope,
    is_cover_minimal,
    is_projective,
    is_short_exact,
    kernel,
    loewy_quotient,
    proj,
    projective_cover,
    pullback,
    pullback_factor,
    pushout,
    random_representation,
    regular_module,
    residue_module,
    s_functor,
    simple,
    socle_dims,
    tensor_k,
    top_dims,
    zero_rep,
)

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)
FIXTURES = ["C1", "C3", "A2", "Z6"]

fixtures = st.sampled_from(FIXTURES)
grounds = st.sampled_from(["k", "dual"])
seeds = st.integers(0, 10 ** 6)


@lru_cache(maxsize=None)
def alg_of(name, F=F7):
    return fixture(name, F)


def rep(name, g, seed, F=F7, max_dim=3):
    alg = alg_of(name, F)
    return random_representation(alg, make_ground(g, F), max_dim, seed=seed)


def random_morphism(X, Y, rng):
    basis = hom_space(X, Y)
    F = X.field
    maps = [Matrix.zero(F, b, a) for a, b in zip(X.dims, Y.dims)]
    for f in basis:
        c = F.random(rng)
        maps = [m + fm.scale(c) for m, fm in zip(maps, f.maps)]
    return RepMorphism(X, Y, maps)


@given(fixtures, grounds, seeds)
def test_random_representations_are_valid(name, g, seed):
    rep(name, g, seed).validate()


@given(fixtures, grounds, seeds)
def test_yoneda_dimension(name, g, seed):
    X = rep(name, g, seed)
    for v in X.alg.vertices:
        P = proj(X.alg, v, X.ground)
        assert len(hom_space(P, X)) == X.dim_at(v)


@given(fixtures, seeds)
def test_hom_into_injective(name, seed):
    X = rep(name, "k", seed)
    for v in X.alg.vertices:
        assert len(hom_space(X, inj(X.alg, v))) == X.dim_at(v)


@given(fixtures, grounds, seeds, seeds)
def test_kernel_image_cokernel(name, g, s1, s2):
    X = rep(name, g, s1)
    Y = random_representation(X.alg, X.ground, 3, seed=s2)
    f = random_morphism(X, Y, random.Random(s1 ^ s2))
    f.validate()
    K, k = kernel(f)
    I, i = image(f)
    C, c = cokernel(f)
    for S in (K, I, C):
        S.validate()
    assert [a + b for a, b in zip(K.dims, I.dims)] == list(X.dims)
    assert [a + b for a, b in zip(I.dims, C.dims)] == list(Y.dims)
    assert is_short_exact(i, c)
    assert (f @ k).is_zero()


@given(fixtures, grounds, seeds)
def test_pullback_and_pushout(name, g, seed):
    rng = random.Random(seed)
    X = rep(name, g, seed)
    Y = rep(name, g, seed + 1)
    Z = rep(name, g, seed + 2)
    f = random_morphism(X, Z, rng)
    h = random_morphism(Y, Z, rng)
    P, px, py = pullback(f, h)
    P.validate()
    assert (f @ px).equals(h @ py)
    # the pullback of f along the identity is X itself
    Q, qx, qz = pullback(f, _identity(Z))
    assert Q.dims == X.dims and qx.is_iso()
    u = pullback_factor(px, py, px, py)
    assert u is not None and u.is_iso()
    f2 = random_morphism(Z, X, rng)
    h2 = random_morphism(Z, Y, rng)
    S, ix, iy = pushout(f2, h2)
    S.validate()
    assert (ix @ f2).equals(iy @ h2)
    dim_im = [m.rank() for m in _stack(f2, h2)]
    assert list(S.dims) == [a + b - r for a, b, r in zip(X.dims, Y.dims, dim_im)]


def _identity(X):
    return RepMorphism(X, X, [Matrix.identity(X.field, d) for d in X.dims])


def _stack(f, g):
    F = f.field
    return [Matrix.vstack(F, a.cols, [a, b]) for a, b in zip(f.maps, g.maps)]


@given(fixtures, grounds, seeds)
def test_projective_cover_is_minimal(name, g, seed):
    X = rep(name, g, seed)
    cover = projective_cover(X)
    cover.validate()
    assert cover.is_epi()
    assert is_cover_minimal(cover)
    assert top_dims(cover.source) == top_dims(X)


@given(fixtures, grounds, seeds)
def test_injective_envelope_is_mono(name, g, seed):
    X = rep(name, g, seed)
    env = injective_envelope(X)
    env.validate()
    assert env.is_mono()
    assert socle_dims(env.target) == socle_dims(X)


@given(fixtures, grounds, seeds)
def test_full_dual_is_an_involution(name, g, seed):
    X = rep(name, g, seed)
    DX = full_dual(X)
    DX.validate()
    assert full_dual(DX).key() == X.key()


def test_dual_needs_trivial_ground():
    alg = fixture("C1", QQ)
    with pytest.raises(RepresentationError):
        dual(proj(alg, 0, make_ground("dual", QQ)))


@pytest.mark.parametrize("name", FIXTURES)
def test_projectives_and_simples(name):
    alg = fixture(name, QQ)
    mult = radical_multiplicities(alg)
    for v in alg.vertices:
        P = proj(alg, v)
        assert is_projective(P)
        assert [sum(mult[(v, u)]) for u in alg.vertices] == list(P.dims)
        S = simple(alg, v)
        assert S.total_dim == 1
        assert is_projective(S) == (P.total_dim == 1)
        assert top_dims(P) == list(S.dims)


@pytest.mark.parametrize("name", ["C1", "C3", "Z6"])
def test_loewy_quotients(name):
    alg = fixture(name, QQ)
    mult = radical_multiplicities(alg)
    for v in alg.vertices:
        for k in range(1, alg.loewy_length + 1):
            L = loewy_quotient(alg, v, k)
            L.validate()
            assert list(L.dims) == [sum(mult[(v, u)][:k]) for u in alg.vertices]


def test_free_module_over_dual_numbers():
    alg = fixture("C3", QQ)
    R = make_ground("dual", QQ)
    P = free_module(alg, [0, 0, 2], R)
    P.validate()
    assert P.total_dim == 3 * 2 * 2
    assert is_projective(P)
    assert not is_projective(simple(alg, 0, R))


def test_tensor_and_s_functor():
    alg = fixture("C3", QQ)
    R = make_ground("dual", QQ)
    B = regular_module(R)
    T = tensor_k(proj(alg, 1), B)
    T.validate()
    assert list(T.dims) == [2 * d for d in proj(alg, 1).dims]
    S = s_functor(alg, 2, residue_module(R))
    assert list(S.dims) == [0, 0, 1]


@given(fixtures, grounds, seeds)
def test_find_isomorphism_after_change_of_basis(name, g, seed):
    X = rep(name, g, seed)
    rng = random.Random(seed)
    F = X.field
    gs = []
    for d in X.dims:
        while True:
            m = Matrix(F, d, d, [[F.random(rng) for _ in range(d)] for _ in range(d)])
            if m.rank() == d:
                gs.append(m)
                break
    alg = X.alg
    arrows = [gs[alg.arrow_target[a]] @ m @ inverse(gs[alg.arrow_source[a]]) for a, m in enumerate(X.arrows)]
    action = [[gs[v] @ m @ inverse(gs[v]) for m in acts] for v, acts in enumerate(X.action)]
    Y = Representation(alg, X.ground, X.dims, arrows, action, check=True)
    assert find_isomorphism(X, Y, rng=random.Random(1)) is not None


def test_find_isomorphism_rejects_nonisomorphic():
    alg = fixture("C1", QQ)
    X = direct_sum(simple(alg, 0), simple(alg, 0))
    P = proj(alg, 0)
    assert X.dims == P.dims
    assert find_isomorphism(X, P) is None


def test_validation_messages():
    alg = fixture("C1", QQ)
    R = make_ground("dual", QQ)
    one = Matrix.identity(QQ, 2)
    eps = Matrix.from_rows(QQ, [[0, 1], [0, 0]])
    d = Matrix.from_rows(QQ, [[0, 0], [1, 0]])
    with pytest.raises(RepresentationError, match="vertex 0, ground element 'eps'"):
        Representation(alg, R, [2], [d], [[one, eps]], check=True)
    with pytest.raises(RepresentationError, match="relation 0"):
        Representation(alg, make_ground("k", QQ), [1], [Matrix.identity(QQ, 1)], check=True)
    with pytest.raises(RepresentationError, match="ground action required"):
        Representation(alg, R, [1], [Matrix.zero(QQ, 1, 1)])


def test_zero_rep():
    alg = fixture("Z6", QQ)
    Z = zero_rep(alg, make_ground("dual", QQ))
    Z.validate()
    assert Z.is_zero() and is_projective(Z)
