import random
from fractions import Fraction

import pytest

from ajimage.exact import QMatrix
from ajimage.kodaira import (
    AbelianGroup,
    FiberKind,
    component_group,
    dual_class,
    fiber_data,
    reduce_dual_vector,
)

from oracles import abelian_order_multiset, coset_orders, det_cofactor

ALL_KINDS = (
    ["I2", "I3", "I4", "I5", "I6", "I7"]
    + ["I0*", "I1*", "I2*", "I3*", "I4*"]
    + ["III", "IV", "III*", "IV*", "II*"]
)


def test_parse():
    assert FiberKind.parse("I0*") == FiberKind("I*", 0)
    assert FiberKind.parse("I12") == FiberKind("I", 12)
    assert FiberKind.parse("II*") == FiberKind("II*")
    assert str(FiberKind.parse("I3*")) == "I3*"
    for bad in ("I0", "I1", "II", "V", "I*", "junk"):
        with pytest.raises(ValueError):
            FiberKind.parse(bad)


def test_i0star_golden():
    data = fiber_data("I0*")
    assert data.m == 5
    assert data.multiplicities == (1, 1, 1, 1, 2)
    assert data.a == QMatrix([[-2, 0, 0, 1], [0, -2, 0, 1], [0, 0, -2, 1], [1, 1, 1, -2]])
    assert data.a_inv == QMatrix(
        [
            [-1, Fraction(-1, 2), Fraction(-1, 2), -1],
            [Fraction(-1, 2), -1, Fraction(-1, 2), -1],
            [Fraction(-1, 2), Fraction(-1, 2), -1, -1],
            [-1, -1, -1, -2],
        ]
    )
    assert data.simple == (1, 2, 3)
    assert data.group == AbelianGroup((2, 2))
    assert data.euler == 6


def test_i2_i3_golden():
    d2 = fiber_data("I2")
    assert d2.a == QMatrix([[-2]])
    assert d2.a_inv == QMatrix([[Fraction(-1, 2)]])
    assert d2.group.invariant_factors == (2,)
    assert d2.euler == 2
    d3 = fiber_data("I3")
    assert d3.a == QMatrix([[-2, 1], [1, -2]])
    assert d3.group.invariant_factors == (3,)


def test_multiplicity_one_on_cycle():
    data = fiber_data("I6")
    assert data.multiplicities == (1,) * 6
    assert data.simple == (1, 2, 3, 4, 5)


def test_fiber_relation_all_kinds():
    # F . Theta_j = 0 for every component, using the full stored matrix
    for kind in ALL_KINDS:
        data = fiber_data(kind)
        for j in range(data.m):
            assert (
                sum(data.multiplicities[i] * data.full_matrix[i, j] for i in range(data.m)) == 0
            ), kind


def test_group_order_is_det():
    for kind in ALL_KINDS:
        data = fiber_data(kind)
        assert data.group.order == abs(det_cofactor(data.a.rows)), kind


def test_group_matches_coset_oracle():
    for kind in ALL_KINDS:
        data = fiber_data(kind)
        gram = [[-int(x) for x in row] for row in data.a.rows]
        assert coset_orders(gram) == abelian_order_multiset(data.group.invariant_factors), kind


def test_istar_group_parity():
    for n in range(5):
        fac = component_group(f"I{n}*").invariant_factors
        assert fac == ((2, 2) if n % 2 == 0 else (4,)), n


def test_known_groups():
    assert component_group("I5").invariant_factors == (5,)
    assert component_group("III").invariant_factors == (2,)
    assert component_group("IV").invariant_factors == (3,)
    assert component_group("III*").invariant_factors == (2,)
    assert component_group("IV*").invariant_factors == (3,)
    assert component_group("II*").invariant_factors == ()
    assert component_group("II*").describe() == "trivial"


def test_euler_numbers():
    expected = {"I2": 2, "I7": 7, "I0*": 6, "I3*": 9, "III": 3, "IV": 4, "III*": 9, "IV*": 8, "II*": 10}
    for kind, e in expected.items():
        assert fiber_data(kind).euler == e, kind


def test_dual_classes_i0star():
    e1, e2, e3 = (dual_class("I0*", i) for i in (1, 2, 3))
    g = component_group("I0*")
    assert dual_class("I0*", 0) == g.zero()
    assert dual_class("I0*", 4) == g.zero()  # the central component is in R
    nonzero = {e1, e2, e3}
    assert len(nonzero) == 3 and g.zero() not in nonzero
    # pairwise sums give the third class
    assert g.add(e1, e2) == e3
    assert g.add(e1, e3) == e2
    assert g.add(e2, e3) == e1


def test_dual_classes_cycle():
    g = component_group("I5")
    classes = [dual_class("I5", i) for i in range(5)]
    assert classes[0] == g.zero()
    assert len(set(classes)) == 5
    # the cycle components form the full cyclic group, consecutive steps equal
    step = classes[1]
    acc = g.zero()
    for c in classes:
        assert c == acc
        acc = g.add(acc, step)


def test_reduce_golden():
    assert reduce_dual_vector("I0*", (-2, -2, -2, -3)) == (0, 0)
    assert reduce_dual_vector("I2", (Fraction(3, 2),)) != (0,)
    assert reduce_dual_vector("I2", (Fraction(3, 2),)) == dual_class("I2", 1)


def test_reduce_rejects_non_dual():
    with pytest.raises(ValueError):
        reduce_dual_vector("I2", (Fraction(1, 3),))
    with pytest.raises(ValueError):
        reduce_dual_vector("I0*", (1, 2, 3))  # wrong length


def test_reduce_shift_invariance():
    rng = random.Random(7)
    for kind in ("I0*", "I4", "IV*", "I3*"):
        data = fiber_data(kind)
        k = data.m - 1
        for _ in range(25):
            ints = [rng.randint(-4, 4) for _ in range(k)]
            x = [-sum(data.a_inv[i, j] * ints[j] for j in range(k)) for i in range(k)]
            shift = [rng.randint(-3, 3) for _ in range(k)]
            shifted = [a + b for a, b in zip(x, shift)]
            assert reduce_dual_vector(kind, x) == reduce_dual_vector(kind, shifted)


def test_reduce_is_additive():
    rng = random.Random(11)
    for kind in ("I0*", "I5", "III*"):
        data = fiber_data(kind)
        g = data.group
        k = data.m - 1
        for _ in range(25):
            xi = [rng.randint(-4, 4) for _ in range(k)]
            yi = [rng.randint(-4, 4) for _ in range(k)]
            x = [-sum(data.a_inv[i, j] * xi[j] for j in range(k)) for i in range(k)]
            y = [-sum(data.a_inv[i, j] * yi[j] for j in range(k)) for i in range(k)]
            both = [a + b for a, b in zip(x, y)]
            assert reduce_dual_vector(kind, both) == g.add(
                reduce_dual_vector(kind, x), reduce_dual_vector(kind, y)
            )


def test_simple_components_biject_with_group():
    for kind in ALL_KINDS:
        data = fiber_data(kind)
        classes = {data.group.zero()} | {dual_class(kind, i) for i in data.simple}
        assert len(classes) == 1 + len(data.simple) == data.group.order, kind


def test_abelian_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup((2, 3))  # not a divisibility chain
    with pytest.raises(ValueError):
        AbelianGroup((1,))
    g = AbelianGroup((2, 4))
    assert g.order == 8
    assert g.scale(3, (1, 3)) == (1, 1)
    assert g.neg((1, 1)) == (1, 3)
    assert len(list(g.elements())) == 8
