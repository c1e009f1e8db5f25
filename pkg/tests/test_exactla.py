"""Exact linear algebra against brute-force oracles."""
from fractions import Fraction
from itertools import combinations, permutations, product

import pytest
from hypothesis import given, strategies as st

from quiverhom.exactla import (
    DimensionMismatch,
    FieldSpec,
    Matrix,
    cokernel_projection,
    factor_through_pullback,
    factor_through_pushout,
    image_basis,
    intersect,
    inverse,
    kernel_basis,
    pullback_pair,
    pushout_pair,
    rank,
    same_span,
    solve,
    span_contains,
)

F3 = FieldSpec.prime(3)
QQ = FieldSpec.rationals()


def matrices(F, max_rows=4, max_cols=4):
    elems = st.integers(0, F.p - 1) if F.p else st.fractions(min_value=-3, max_value=3, max_denominator=3)

    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(0, max_cols))
        rows = [[F(draw(elems)) for _ in range(c)] for _ in range(r)]
        return Matrix(F, r, c, rows)
    return build()


def det(rows):
    """Leibniz formula."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inv
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def rank_by_minors(m: Matrix) -> int:
    data = [[Fraction(x) for x in row] for row in m.data]
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                d = det([[data[r][c] for c in cs] for r in rs])
                if (d.numerator % m.field.p if m.field.p else d):
                    return k
    return 0


def count_kernel(m: Matrix) -> int:
    p = m.field.p
    n = 0
    for v in product(range(p), repeat=m.cols):
        if all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in m.data):
            n += 1
    return n


@given(matrices(F3))
def test_kernel_size_matches_enumeration(m):
    K = kernel_basis(m)
    assert count_kernel(m) == 3 ** K.cols
    assert (m @ K).is_zero()


@given(matrices(QQ))
def test_rank_matches_minors_over_q(m):
    assert rank(m) == rank_by_minors(m)


@given(matrices(F3))
def test_rank_matches_minors_mod_p(m):
    assert rank(m) == rank_by_minors(m)


@given(matrices(QQ))
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols
    assert image_basis(m).cols == rank(m)
    assert rank(m.T) == rank(m)


@given(matrices(F3, 3, 3), matrices(F3, 3, 3))
def test_solve_is_exact(a, b):
    if a.rows != b.rows:
        return
    x = solve(a, b)
    if x is None:
        assert not span_contains(a, b)
    else:
        assert a @ x == b


@given(matrices(QQ, 4, 4))
def test_cokernel_projection(m):
    p, s, d = cokernel_projection(m)
    assert d == m.rows - rank(m)
    assert (p @ m).is_zero()
    assert p @ s == Matrix.identity(QQ, d)


@given(st.integers(1, 4), st.data())
def test_inverse_roundtrip(n, data):
    m = data.draw(matrices(QQ, n, n).filter(lambda a: a.rows == n and a.cols == n and rank(a) == n))
    assert inverse(m) @ m == Matrix.identity(QQ, n)


@given(matrices(F3, 4, 3), matrices(F3, 4, 3))
def test_intersection_dimension(a, b):
    if a.rows != b.rows:
        return
    both = Matrix.hstack(F3, a.rows, [a, b])
    I = intersect(a, b)
    assert I.cols == rank(a) + rank(b) - rank(both)
    assert span_contains(a, I) and span_contains(b, I)


def test_pullback_universal_property():
    f = Matrix.from_rows(QQ, [[1, 0], [0, 0]])
    g = Matrix.from_rows(QQ, [[1], [1]])
    d, pa, pb = pullback_pair(f, g)
    assert d == 3 - 2
    assert f @ pa == g @ pb
    ha = Matrix.from_rows(QQ, [[0], [5]])
    hb = Matrix.from_rows(QQ, [[0]])
    u = factor_through_pullback(pa, pb, ha, hb)
    assert u is not None and pa @ u == ha and pb @ u == hb


def test_pushout_dimension():
    f = Matrix.from_rows(QQ, [[1], [0]])
    g = Matrix.from_rows(QQ, [[1]])
    d, ia, ib = pushout_pair(f, g)
    assert ia @ f == ib @ g
    assert d == ia.rows == 2 + 1 - 1
    hx = Matrix.from_rows(QQ, [[0, 1]])
    hy = Matrix.from_rows(QQ, [[0]])
    u = factor_through_pushout(ia, ib, hx, hy)
    assert u is not None and u @ ia == hx and u @ ib == hy
    assert factor_through_pushout(ia, ib, Matrix.from_rows(QQ, [[1, 0]]), hy) is None


def test_field_parsing_and_coercion():
    assert FieldSpec.parse("q") == QQ
    assert FieldSpec.parse("fp:7").p == 7
    assert FieldSpec.parse("fp:7")("-3/4") == (-3 * pow(4, -1, 7)) % 7
    assert QQ("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:8")
    with pytest.raises(ZeroDivisionError):
        FieldSpec.prime(7)("1/7")


def test_shape_mismatch_raises():
    a = Matrix.zero(QQ, 2, 3)
    with pytest.raises(DimensionMismatch):
        a @ a


def test_same_span_ignores_order_and_scaling():
    a = Matrix.from_columns(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    b = Matrix.from_columns(QQ, 3, [[0, 2, 0], [1, 1, 0]])
    assert same_span(a, b)
    assert not same_span(a, Matrix.from_columns(QQ, 3, [[0, 0, 1]]))
