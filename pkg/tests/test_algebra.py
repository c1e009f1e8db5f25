"""Path algebras, ground algebras and the algebra conditions."""
import pytest
from hypothesis import given, strategies as st

from quiverhom.algebra import (
    Arrow,
    FinViolation,
    NonAdmissibleRelation,
    PresentationError,
    QuiverPresentation,
    build_algebra,
    check_conditions,
    cycle_quiver,
    fixture,
    ground_dual_numbers,
    ground_field,
    GroundAlgebra,
    radical_multiplicities,
    serre_pairing_check,
    za3_vertex,
    za3_window,
)
from quiverhom.exactla import FieldSpec

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)


def square(rel):
    arrows = [Arrow("x", "a", "b"), Arrow("y", "b", "d"), Arrow("z", "a", "c"), Arrow("w", "c", "d")]
    return QuiverPresentation.make(["a", "b", "c", "d"], arrows, rel)


@given(st.integers(1, 7), st.sampled_from([QQ, F7]))
def test_cycle_dimensions(N, F):
    alg = build_algebra(cycle_quiver(N), F)
    assert alg.dimension == 2 * N
    assert alg.loewy_length == 2
    mult = radical_multiplicities(alg)
    for p in range(N):
        for q in range(N):
            n = mult[(p, q)]
            assert n[0] == (1 if p == q else 0)
            assert n[1] == (1 if q == (p - 1) % N else 0)
            assert sum(n) == alg.dim_hom(p, q)


def test_square_relations():
    assert build_algebra(square([]), QQ).dimension == 4 + 4 + 2
    assert build_algebra(square([[(1, ("x", "y")), (-1, ("z", "w"))]]), QQ).dimension == 9
    assert build_algebra(square([[(1, ("x", "y"))], [(1, ("z", "w"))]]), QQ).dimension == 8


def test_relation_coefficients_follow_the_field():
    # 7 x*y - 7 z*w vanishes identically in characteristic 7
    rel = [[(7, ("x", "y")), (-7, ("z", "w"))]]
    assert build_algebra(square(rel), F7).dimension == 10
    assert build_algebra(square(rel), QQ).dimension == 9


def test_presentation_errors():
    with pytest.raises(PresentationError, match="not composable"):
        QuiverPresentation.make([0, 1], [Arrow("a", 0, 1), Arrow("b", 0, 1)], [[(1, ("a", "b"))]])
    with pytest.raises(NonAdmissibleRelation):
        QuiverPresentation.make([0, 1], [Arrow("a", 0, 1)], [[(1, ("a",))]])
    with pytest.raises(NonAdmissibleRelation, match="homogeneous"):
        QuiverPresentation.make([0], [Arrow("a", 0, 0)], [[(1, ("a", "a")), (1, ("a", "a", "a"))]])
    with pytest.raises(PresentationError, match="undeclared"):
        QuiverPresentation.make([0], [Arrow("a", 0, 1)])
    with pytest.raises(PresentationError, match="duplicate"):
        QuiverPresentation.make([0, 0], [])


def test_loop_without_relations_is_infinite():
    pres = QuiverPresentation.make([0], [Arrow("a", 0, 0)])
    with pytest.raises(FinViolation):
        build_algebra(pres, QQ, length_cap=10)


def test_loop_with_cube_zero():
    pres = QuiverPresentation.make([0], [Arrow("a", 0, 0)], [[(1, ("a", "a", "a"))]])
    alg = build_algebra(pres, QQ)
    assert alg.dimension == 3
    assert radical_multiplicities(alg)[(0, 0)] == [1, 1, 1]


def test_za3_projective_dimensions():
    alg = build_algebra(za3_window(0, 5), QQ)
    for j in (2, 3):
        for l, d in ((0, 3), (1, 4), (2, 3)):
            q = alg.index(za3_vertex(j, l))
            assert sum(alg.dim_hom(q, p) for p in range(len(alg.vertices))) == d


def test_za3_mesh_kills_one_composite():
    alg = build_algebra(za3_window(0, 5), QQ)
    # paths (2,1) -> (1,1) via (1,0) or (2,2) span a one-dimensional space
    assert alg.dim_hom(alg.index("2,1"), alg.index("1,1")) == 1
    assert alg.dim_hom(alg.index("2,0"), alg.index("1,0")) == 0


def test_opposite_has_transposed_homs():
    alg = fixture("Z6", QQ)
    op = alg.opposite()
    n = len(alg.vertices)
    assert all(alg.dim_hom(p, q) == op.dim_hom(q, p) for p in range(n) for q in range(n))
    assert op.opposite() is alg


@pytest.mark.parametrize("N", [1, 3, 5])
def test_cycles_are_selfinjective_with_shift(N):
    rep = check_conditions(fixture(f"C{N}", QQ))
    assert rep.fin and rep.rad and rep.selfinj
    assert rep.nakayama == {q: (q - 1) % N for q in range(N)}


def test_a2_is_not_selfinjective():
    rep = check_conditions(fixture("A2", QQ))
    assert rep.rad and not rep.selfinj
    assert serre_pairing_check(fixture("A2", QQ)) is None


def test_z6_interior_serre_pairing():
    alg = fixture("Z6", QQ)
    interior = [za3_vertex(j, l) for j in (2, 3) for l in range(3)]
    rep = check_conditions(alg, interior)
    assert rep.selfinj
    assert not check_conditions(alg).selfinj
    pairs = [(p, q) for p in interior for q in alg.vertices]
    assert serre_pairing_check(alg, rep.nakayama, pairs)


def test_ground_algebras():
    k = ground_field(QQ)
    assert k.is_field and k.dim == 1
    R = ground_dual_numbers(F7)
    assert R.product((0, 1), (0, 1)) == (0, 0)
    assert R.augmentation == (1, 0)
    with pytest.raises(ValueError, match="nilpotent"):
        # x^2 = x is idempotent, not nilpotent
        GroundAlgebra(QQ, ["1", "x"], [[(1, 0), (0, 1)], [(0, 1), (0, 1)]], (1, 0), [(0, 1)])
    with pytest.raises(ValueError, match="codimension"):
        GroundAlgebra(QQ, ["1", "x"], [[(1, 0), (0, 1)], [(0, 1), (0, 0)]], (1, 0), [])


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("B7", QQ)
