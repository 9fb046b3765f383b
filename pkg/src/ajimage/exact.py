"""Exact rational linear algebra: matrices over Fraction, Bareiss elimination,
linear solving and Smith normal form with unimodular transforms.

Everything here is exact; floats never appear.  Matrices are small (the
largest intersection matrix a fiber produces is a handful of rows), so
clarity wins over asymptotics, but the elimination core is still
fraction-free (Bareiss) to keep intermediate numerators small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import SingularMatrixError


def _as_fraction_rows(entries) -> tuple[tuple[Fraction, ...], ...]:
    rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        if width == 0:
            raise ValueError("empty rows")
    return rows


class QMatrix:
    """Immutable matrix with Fraction entries."""

    __slots__ = ("rows",)

    def __init__(self, entries):
        object.__setattr__(self, "rows", _as_fraction_rows(entries))

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.rows)))

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.transpose().rows
            return QMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
            )
        # matrix * vector
        vec = tuple(Fraction(x) for x in other)
        if self.ncols != len(vec):
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def __repr__(self):
        return f"QMatrix({[[str(x) for x in row] for row in self.rows]})"

    def __str__(self):
        cells = [[str(x) for x in row] for row in self.rows]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def _scaled_integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # Scale each row by the lcm of its denominators.  Row scaling is a left
    # multiplication, so solutions of [A | B] systems are unchanged.
    out = []
    for row in rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _bareiss_forward(m: list[list[int]]) -> tuple[int, list[int]]:
    """Fraction-free forward elimination in place on an n x w integer matrix
    (w >= n).  Returns (sign, pivots); raises SingularMatrixError if some
    leading column has no pivot.  Afterwards m is upper triangular on its
    left n columns and every entry is an exact integer (a minor of the input).
    """
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, len(m[i])):
                # One-step Bareiss update; the division is exact.
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign, [m[k][k] for k in range(n)]


def _back_substitute(m: list[list[int]], n: int, col: int) -> tuple[Fraction, ...]:
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][col])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return tuple(x)


def qmat_inverse(m: QMatrix) -> QMatrix:
    """Exact inverse of a square QMatrix via Bareiss elimination on [m | I]."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse needs a square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    work = _scaled_integer_rows(aug)
    _bareiss_forward(work)
    cols = [_back_substitute(work, n, n + j) for j in range(n)]
    return QMatrix(list(zip(*cols)))


def linear_solve(a: QMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Unique solution x of a x = b; raises SingularMatrixError otherwise."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("linear_solve needs a square matrix")
    bvec = [Fraction(x) for x in b]
    if len(bvec) != n:
        raise ValueError("shape mismatch")
    aug = [list(row) + [bvec[i]] for i, row in enumerate(a.rows)]
    work = _scaled_integer_rows(aug)
    _bareiss_forward(work)
    return _back_substitute(work, n, n)


def qmat_det(m: QMatrix) -> Fraction:
    """Exact determinant (Bareiss on a denominator-scaled copy)."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    work = []
    for row in m.rows:
        mult = lcm(*(x.denominator for x in row))
        scale *= mult
        work.append([int(x * mult) for x in row])
    try:
        sign, pivots = _bareiss_forward(work)
    except SingularMatrixError:
        return Fraction(0)
    return Fraction(sign * pivots[-1]) / scale


def qmat_rank(m: QMatrix) -> int:
    """Rank over the rationals (plain Gaussian elimination)."""
    work = [list(row) for row in m.rows]
    rank = 0
    col = 0
    while rank < len(work) and col < m.ncols:
        pivot_row = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot_row is None:
            col += 1
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            if work[r][col]:
                f = work[r][col] / prow[col]
                work[r] = [x - f * y for x, y in zip(work[r], prow)]
        rank += 1
        col += 1
    return rank


class SmithForm:
    """Result of smith_normal_form: unimodular U, V with U a V = S diagonal,
    invariant factors nonnegative, each dividing the next (zeros last)."""

    __slots__ = ("u", "s", "v", "invariant_factors")

    def __init__(self, u, s, v, invariant_factors):
        self.u = u
        self.s = s
        self.v = v
        self.invariant_factors = invariant_factors

    def __repr__(self):
        return f"SmithForm(invariant_factors={self.invariant_factors})"


def _int_rows(a) -> list[list[int]]:
    if isinstance(a, QMatrix):
        if not a.is_integral():
            raise ValueError("smith_normal_form needs integer entries")
        return [[int(x) for x in row] for row in a.rows]
    rows = [list(row) for row in a]
    for row in rows:
        for x in row:
            if x != int(x):
                raise ValueError("smith_normal_form needs integer entries")
    return [[int(x) for x in row] for row in rows]


def smith_normal_form(a) -> SmithForm:
    """Smith normal form over the integers with transform tracking.

    Standard pivot-reduce algorithm: bring the smallest nonzero entry of the
    trailing block to the pivot slot, clear its row and column by division
    with remainder, and when the pivot fails to divide some remaining entry,
    fold that row in and keep reducing.  All row ops mirror into u, column
    ops into v, so u @ a @ v == s exactly.
    """
    s = _int_rows(a)
    nr = len(s)
    nc = len(s[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def add_row(i, j, q):  # row i += q * row j
        s[i] = [x + q * y for x, y in zip(s[i], s[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(i, j, q):  # col i += q * col j
        for row in s:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nr, nc):
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t]:  # remainder strictly smaller: promote it
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # pivot must divide everything left below-right of it
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if s[i][j] % s[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    for i in range(min(nr, nc)):
        if s[i][i] < 0:
            negate_row(i)

    factors = tuple(s[i][i] for i in range(min(nr, nc)))
    freeze = lambda m: tuple(tuple(row) for row in m)
    return SmithForm(freeze(u), freeze(s), freeze(v), factors)
