"""Catalog of reducible Kodaira fiber types and their component lattices.

A reducible fiber F = sum_i a_i Theta_i carries: component multiplicities
a_i, the intersection matrix A of the non-identity components Theta_1..,
and the finite group R^dual / R of the sublattice R they span.  Dual
vectors are reduced to that group through the Smith normal form of the
positive definite Gram matrix -A.

Component labeling convention (fixed here, documented once):

* I_n (n >= 2): the cycle Theta_0 - Theta_1 - ... - Theta_{n-1} - Theta_0
  in cycle order, all multiplicity 1.  For n = 2 the two components meet
  twice.
* I*_n (n >= 0): Theta_0..Theta_3 are the four simple legs (Theta_0 and
  Theta_1 attached to the near end of the central chain, Theta_2 and
  Theta_3 to the far end), Theta_4..Theta_{4+n} the multiplicity-2 central
  chain walked from the near end.  For n = 0 the chain is a single central
  component Theta_4 meeting all four legs.
* III: two components, multiplicity 1, meeting at one point of contact
  order two (Theta_0 . Theta_1 = 2).
* IV: three multiplicity-1 components through one common point.
* IV*: arms of length two around a central multiplicity-3 component;
  chain order Theta_0(1)-Theta_1(2)-Theta_2(3)-Theta_3(2)-Theta_4(1) with
  the third arm Theta_5(2)-Theta_6(1) hanging off Theta_2.
* III*: chain Theta_0(1)-Theta_1(2)-Theta_2(3)-Theta_3(4)-Theta_4(3)-
  Theta_5(2)-Theta_6(1) with Theta_7(2) attached to Theta_3.
* II*: chain Theta_0(1)-Theta_1(2)-Theta_2(3)-Theta_3(4)-Theta_4(5)-
  Theta_5(6)-Theta_6(4)-Theta_7(2) with Theta_8(3) attached to Theta_5.

Irreducible kinds (I_0, I_1, II) are rejected: they contribute nothing to
the trivial lattice and have no component data to catalog.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable

from .exact import QMatrix, qmat_inverse, smith_normal_form

_KIND_RE = re.compile(r"^(I)(\d+)(\*?)$|^(II|III|IV)(\*?)$")


@dataclass(frozen=True)
class FiberKind:
    """A Kodaira type: family in {"I", "I*", "II*", "III", "III*", "IV", "IV*"},
    with n set only for the I_n / I*_n families."""

    family: str
    n: int | None = None

    @staticmethod
    def parse(text: str | "FiberKind") -> "FiberKind":
        if isinstance(text, FiberKind):
            text.check_reducible()
            return text
        m = _KIND_RE.match(text.strip())
        if not m:
            raise ValueError(f"unrecognized fiber kind {text!r}")
        if m.group(1):
            n = int(m.group(2))
            starred = bool(m.group(3))
            kind = FiberKind("I*" if starred else "I", n)
        else:
            kind = FiberKind(m.group(4) + m.group(5))
        kind.check_reducible()
        return kind

    def check_reducible(self) -> None:
        if self.family == "I" and self.n is not None and self.n < 2:
            raise ValueError(f"fiber {self} is irreducible")
        if self.family == "II":
            raise ValueError("fiber II is irreducible")
        if self.family in ("I", "I*") and self.n is None:
            raise ValueError("I / I* kinds need an index")

    def __str__(self):
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group as a product of cyclic factors (all > 1, each
    dividing the next); elements are residue tuples of the same length."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        for f in self.invariant_factors:
            if f <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def reduce(self, coords: Iterable[int]) -> tuple[int, ...]:
        coords = tuple(coords)
        if len(coords) != len(self.invariant_factors):
            raise ValueError("coordinate length mismatch")
        return tuple(c % f for c, f in zip(coords, self.invariant_factors))

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(x + y for x, y in zip(self.reduce(a), self.reduce(b)))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(-x for x in self.reduce(a))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return self.reduce(k * x for x in self.reduce(a))

    def elements(self):
        return product(*(range(f) for f in self.invariant_factors))

    def describe(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def _graph(kind: FiberKind):
    """Multiplicities and edge weights for all components, Theta_0 first.

    Returns (mults, edges) with edges a dict {(i, j): weight}, i < j.
    """
    fam, n = kind.family, kind.n
    if fam == "I":
        mults = [1] * n
        if n == 2:
            edges = {(0, 1): 2}
        else:
            edges = {(i, i + 1): 1 for i in range(n - 1)}
            edges[(0, n - 1)] = 1
        return mults, edges
    if fam == "I*":
        chain = list(range(4, 5 + n))
        mults = [1, 1, 1, 1] + [2] * (n + 1)
        edges = {(0, chain[0]): 1, (1, chain[0]): 1, (2, chain[-1]): 1, (3, chain[-1]): 1}
        for a, b in zip(chain, chain[1:]):
            edges[(a, b)] = 1
        return mults, edges
    if fam == "III":
        return [1, 1], {(0, 1): 2}
    if fam == "IV":
        return [1, 1, 1], {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    if fam == "IV*":
        mults = [1, 2, 3, 2, 1, 2, 1]
        edges = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 4): 1, (2, 5): 1, (5, 6): 1}
        return mults, edges
    if fam == "III*":
        mults = [1, 2, 3, 4, 3, 2, 1, 2]
        edges = {(i, i + 1): 1 for i in range(6)}
        edges[(3, 7)] = 1
        return mults, edges
    if fam == "II*":
        mults = [1, 2, 3, 4, 5, 6, 4, 2, 3]
        edges = {(i, i + 1): 1 for i in range(7)}
        edges[(5, 8)] = 1
        return mults, edges
    raise ValueError(f"no component data for {kind}")


def _euler(kind: FiberKind) -> int:
    if kind.family == "I":
        return kind.n
    if kind.family == "I*":
        return kind.n + 6
    return {"III": 3, "IV": 4, "III*": 9, "IV*": 8, "II*": 10}[kind.family]


@dataclass(frozen=True)
class ReducibleFiberData:
    kind: FiberKind
    m: int  # number of components
    multiplicities: tuple[int, ...]  # indexed by component, Theta_0 first
    full_matrix: QMatrix  # pairwise intersections of all m components
    a: QMatrix  # non-identity block (rows/cols = Theta_1..)
    a_inv: QMatrix
    simple: tuple[int, ...]  # indices i >= 1 with multiplicity 1
    group: AbelianGroup
    euler: int
    # Smith data of the Gram matrix -a, used to reduce dual vectors:
    _snf_u: tuple[tuple[int, ...], ...]
    _snf_factors: tuple[int, ...]
    # component group element -> simple component index (0 for identity)
    class_to_simple: dict


def _full_matrix(mults, edges) -> QMatrix:
    m = len(mults)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        rows[i][i] = -2
    for (i, j), w in edges.items():
        rows[i][j] = w
        rows[j][i] = w
    return QMatrix(rows)


@lru_cache(maxsize=None)
def _fiber_data_cached(kind: FiberKind) -> ReducibleFiberData:
    mults, edges = _graph(kind)
    m = len(mults)
    full = _full_matrix(mults, edges)
    # fiber relation F . Theta_j = 0 pins the whole table; fail loudly if the
    # catalog graph is wrong
    for j in range(m):
        total = sum(mults[i] * full[i, j] for i in range(m))
        if total != 0:
            raise AssertionError(f"catalog graph for {kind} breaks the fiber relation at {j}")
    a = QMatrix([[full[i, j] for j in range(1, m)] for i in range(1, m)])
    a_inv = qmat_inverse(a)
    gram = [[-int(full[i, j]) for j in range(1, m)] for i in range(1, m)]
    sf = smith_normal_form(gram)
    factors = tuple(f for f in sf.invariant_factors if f > 1)
    group = AbelianGroup(factors)
    simple = tuple(i for i in range(1, m) if mults[i] == 1)

    data = ReducibleFiberData(
        kind=kind,
        m=m,
        multiplicities=tuple(mults),
        full_matrix=full,
        a=a,
        a_inv=a_inv,
        simple=simple,
        group=group,
        euler=_euler(kind),
        _snf_u=sf.u,
        _snf_factors=sf.invariant_factors,
        class_to_simple={},
    )
    # the simple components hit every class exactly once; build the inverse map
    mapping = {group.zero(): 0}
    for i in simple:
        cls = dual_class_of(data, i)
        if cls in mapping:
            raise AssertionError(f"catalog for {kind}: simple components not distinct in group")
        mapping[cls] = i
    if len(mapping) != group.order:
        raise AssertionError(f"catalog for {kind}: simple components miss some classes")
    data.class_to_simple.update(mapping)
    return data


def fiber_data(kind: str | FiberKind) -> ReducibleFiberData:
    return _fiber_data_cached(FiberKind.parse(kind))


def component_group(kind: str | FiberKind) -> AbelianGroup:
    return fiber_data(kind).group


def reduce_dual_vector(kind: str | FiberKind, x: Iterable) -> tuple[int, ...]:
    """Class of a dual-lattice vector x in R^dual / R.

    x is given in the Theta_1.. coordinate basis; membership in the dual
    lattice means (-A) x is integral.  The class is read off through the
    SNF row transform: coordinates (U (-A) x) mod the nontrivial factors.
    """
    data = fiber_data(kind)
    return dual_reduce(data, x)


def dual_reduce(data: ReducibleFiberData, x: Iterable) -> tuple[int, ...]:
    vec = tuple(Fraction(v) for v in x)
    if len(vec) != data.m - 1:
        raise ValueError(f"expected {data.m - 1} coordinates for {data.kind}")
    y = [-sum(data.a[i, j] * vec[j] for j in range(data.m - 1)) for i in range(data.m - 1)]
    if any(v.denominator != 1 for v in y):
        raise ValueError(f"vector {tuple(map(str, vec))} is not in the dual lattice of {data.kind}")
    z = [sum(u * int(v) for u, v in zip(row, y)) for row in data._snf_u]
    return tuple(
        int(zi) % f for zi, f in zip(z, data._snf_factors) if f > 1
    )


def dual_class(kind: str | FiberKind, i: int) -> tuple[int, ...]:
    """Class of component Theta_i, i.e. of the dual vector -A^{-1} e_i
    (i = 0 gives the identity class)."""
    data = fiber_data(kind)
    return dual_class_of(data, i)


def dual_class_of(data: ReducibleFiberData, i: int) -> tuple[int, ...]:
    if i == 0:
        return data.group.zero()
    if not 1 <= i < data.m:
        raise ValueError(f"{data.kind} has components 0..{data.m - 1}")
    col = tuple(-data.a_inv[r, i - 1] for r in range(data.m - 1))
    return dual_reduce(data, col)
