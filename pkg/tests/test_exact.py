from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ajimage.exact import (
    QMatrix,
    SmithForm,
    linear_solve,
    qmat_det,
    qmat_inverse,
    qmat_rank,
    smith_normal_form,
)
from ajimage.errors import SingularMatrixError

from oracles import coset_orders, det_cofactor, inverse_adjugate, abelian_order_multiset

# The I0* fiber's intersection matrix and its known exact inverse; this pair
# is the main golden value the rest of the library leans on.
I0STAR = [[-2, 0, 0, 1], [0, -2, 0, 1], [0, 0, -2, 1], [1, 1, 1, -2]]
I0STAR_INV = [
    [Fraction(-1), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1)],
    [Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(-1)],
    [Fraction(-1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1)],
    [Fraction(-1), Fraction(-1), Fraction(-1), Fraction(-2)],
]


def square_int_matrices(n, lo=-5, hi=5):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n
    )


def test_inverse_golden_i0star():
    assert qmat_inverse(QMatrix(I0STAR)) == QMatrix(I0STAR_INV)


def test_inverse_identity():
    assert qmat_inverse(QMatrix.identity(4)) == QMatrix.identity(4)


def test_inverse_singular_raises():
    with pytest.raises(SingularMatrixError):
        qmat_inverse(QMatrix([[1, 2], [2, 4]]))


def test_inverse_rational_entries():
    m = QMatrix([[Fraction(1, 2), 3], [0, Fraction(-2, 7)]])
    assert qmat_inverse(m) == QMatrix(inverse_adjugate(m.rows))


@settings(max_examples=120)
@given(st.integers(1, 4).flatmap(square_int_matrices))
def test_inverse_matches_adjugate_oracle(entries):
    if det_cofactor(entries) == 0:
        with pytest.raises(SingularMatrixError):
            qmat_inverse(QMatrix(entries))
        return
    m = QMatrix(entries)
    inv = qmat_inverse(m)
    assert inv == QMatrix(inverse_adjugate(entries))
    assert m * inv == QMatrix.identity(m.nrows)
    assert inv * m == QMatrix.identity(m.nrows)


def test_linear_solve_golden():
    # A x = (1,1,1,0) for the I0* matrix; expected value checked against the
    # adjugate oracle rather than hand-frozen.
    b = [1, 1, 1, 0]
    x = linear_solve(QMatrix(I0STAR), b)
    assert x == (-2, -2, -2, -3)
    assert x == tuple(
        sum(Fraction(r) * bb for r, bb in zip(row, b)) for row in inverse_adjugate(I0STAR)
    )


def test_linear_solve_1x1():
    assert linear_solve(QMatrix([[-2]]), [1]) == (Fraction(-1, 2),)


def test_linear_solve_singular():
    with pytest.raises(SingularMatrixError):
        linear_solve(QMatrix([[1, 1], [1, 1]]), [1, 2])


@settings(max_examples=80)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            square_int_matrices(n), st.lists(st.integers(-9, 9), min_size=n, max_size=n)
        )
    )
)
def test_linear_solve_round_trip(case):
    entries, x = case
    if det_cofactor(entries) == 0:
        return
    m = QMatrix(entries)
    b = m * x
    assert linear_solve(m, b) == tuple(Fraction(v) for v in x)


@settings(max_examples=80)
@given(st.integers(1, 4).flatmap(square_int_matrices))
def test_det_matches_cofactor_oracle(entries):
    assert qmat_det(QMatrix(entries)) == det_cofactor(entries)


def test_rank():
    assert qmat_rank(QMatrix([[1, 2], [2, 4]])) == 1
    assert qmat_rank(QMatrix(I0STAR)) == 4
    assert qmat_rank(QMatrix([[0, 0], [0, 0]])) == 0
    assert qmat_rank(QMatrix([[Fraction(1, 3), 0, 1], [1, 0, 3]])) == 1


def check_smith_form(entries, sf: SmithForm):
    nr, nc = len(entries), len(entries[0])
    u, s, v = QMatrix(sf.u), QMatrix(sf.s), QMatrix(sf.v)
    assert u * QMatrix(entries) * v == s
    assert abs(det_cofactor(sf.u)) == 1
    assert abs(det_cofactor(sf.v)) == 1
    # diagonal, nonnegative, divisibility chain with zeros last
    for i in range(nr):
        for j in range(nc):
            if i != j:
                assert s[i, j] == 0
    diag = list(sf.invariant_factors)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


def test_smith_golden_diag():
    sf = smith_normal_form([[1, 0, 0], [0, 2, 0], [0, 0, 4]])
    assert sf.invariant_factors == (1, 2, 4)
    check_smith_form([[1, 0, 0], [0, 2, 0], [0, 0, 4]], sf)


def test_smith_golden_2():
    sf = smith_normal_form([[2]])
    assert sf.invariant_factors == (2,)


def test_smith_i0star_gram():
    gram = [[-x for x in row] for row in I0STAR]
    sf = smith_normal_form(gram)
    assert sf.invariant_factors == (1, 1, 2, 2)
    check_smith_form(gram, sf)
    # brute-force coset oracle agrees: quotient is (Z/2)^2
    assert coset_orders(gram) == abelian_order_multiset((2, 2)) == [1, 2, 2, 2]


def test_smith_rejects_non_integer():
    with pytest.raises(ValueError):
        smith_normal_form([[Fraction(1, 2)]])


@settings(max_examples=100)
@given(
    st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
        lambda shape: st.lists(
            st.lists(st.integers(-6, 6), min_size=shape[1], max_size=shape[1]),
            min_size=shape[0],
            max_size=shape[0],
        )
    )
)
def test_smith_unimodular_transforms(entries):
    sf = smith_normal_form(entries)
    check_smith_form(entries, sf)
