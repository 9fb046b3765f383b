"""Divisibility in a rank-one Mordell-Weil group and what it decides.

Two consumers share the arithmetic here.  `is_divisible` answers whether a
point n*P_o + t admits an n-th root in Z x T, solving each cyclic factor of
the torsion group by gcd arithmetic and returning an explicit witness.  On
top of it, `d2n_cover_exists` runs the existence criterion for a dihedral
cover of order 2n branched along a four-line-plus-cubic arrangement: for a
Type I arrangement the two cubic preimages are linearly equivalent and the
attached point is O, so every n works; for Type II the decision reduces to
n-divisibility of P_{E+} - P_{E-} = 4*P_o (even n), while an odd prime
factor of n would have to divide the free coefficient 2 of the point
attached to E+ (odd n), which kills every odd n.

`verify_ns_relation` is the supporting check that two formal divisor
classes really are equal in the Neron-Severi group: it compares their
pairings against every table generator and their self-intersections.
Agreement is conclusive only when the generators span full rank, so a
rank-deficient table yields a distinct "inconclusive" verdict rather than
a silent pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import SchemaError
from .exact import QMatrix, qmat_rank
from .fourlines import four_line_surface
from .kodaira import AbelianGroup
from .mwgroup import MWPoint
from .nslattice import FormalClass, IntersectionTable, _sym_str


class ArrangementType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"

    @staticmethod
    def parse(text: "str | ArrangementType") -> "ArrangementType":
        if isinstance(text, ArrangementType):
            return text
        key = text.strip().upper()
        if key.startswith("TYPE"):
            key = key[4:].lstrip(" _-")
        try:
            return ArrangementType(key)
        except ValueError:
            raise SchemaError(
                f"unknown arrangement type {text!r}; expected 'I' or 'II'"
            ) from None

    def __str__(self):
        return f"Type {self.value}"


def _coords(point: MWPoint, group: AbelianGroup) -> tuple[int, ...]:
    # an empty torsion tuple means the zero element of any torsion group
    return group.reduce(point.torsion) if point.torsion else group.zero()


def mw_scale(n: int, point: MWPoint, group: AbelianGroup) -> MWPoint:
    """n * point in Z x T arithmetic (the name tag does not survive)."""
    return MWPoint(n * point.free_coeff, group.scale(n, _coords(point, group)))


@dataclass(frozen=True)
class DivisibilityVerdict:
    divisible: bool
    witness: MWPoint | None  # X with n*X = Q when divisible

    def __bool__(self):
        return self.divisible


def is_divisible(q: MWPoint, n: int, torsion_group: AbelianGroup) -> DivisibilityVerdict:
    """Does n*X = Q have a solution X in Z x T?

    The free part needs n | Q.free_coeff.  Each cyclic torsion factor Z/m
    contributes the congruence n*x = t (mod m), solvable exactly when
    gcd(n, m) divides t; the witness coordinate is then
    (t/g) * (n/g)^{-1} mod (m/g).
    """
    if n < 2:
        raise SchemaError(f"divisibility test needs n >= 2, got {n}")
    if q.free_coeff % n:
        return DivisibilityVerdict(False, None)
    coords = _coords(q, torsion_group)
    witness = []
    for t, m in zip(coords, torsion_group.invariant_factors):
        g = gcd(n, m)
        if t % g:
            return DivisibilityVerdict(False, None)
        mm = m // g
        witness.append((t // g) * pow(n // g, -1, mm) % mm if mm > 1 else 0)
    return DivisibilityVerdict(True, MWPoint(q.free_coeff // n, tuple(witness)))


@dataclass(frozen=True)
class CoverVerdict:
    arrangement_type: ArrangementType
    n: int
    exists: bool
    reasons: tuple[str, ...]
    witness: MWPoint | None = None

    def __bool__(self):
        return self.exists


def d2n_cover_exists(arrangement_type: "str | ArrangementType", n: int) -> CoverVerdict:
    """Does a dihedral cover of order 2n exist for this arrangement type?"""
    atype = ArrangementType.parse(arrangement_type)
    if n < 3:
        raise SchemaError(f"dihedral covers need n >= 3, got {n}")
    if atype is ArrangementType.TYPE_I:
        return CoverVerdict(
            atype,
            n,
            True,
            (
                "E+ and E- are linearly equivalent, so the splitting relation"
                f" required by a dihedral cover of order {2 * n} holds for every n",
                "the point attached to E+ is O, and O is n-divisible for every n",
            ),
        )
    if n % 2:
        p = min(f for f in range(3, n + 1) if n % f == 0)
        return CoverVerdict(
            atype,
            n,
            False,
            (
                f"n = {n} is odd; a cover of order {2 * n} would make the point"
                f" attached to E+ divisible by the prime {p}",
                f"that point has free coefficient 2, and {p} does not divide 2,"
                " so no such cover exists",
            ),
        )
    target = MWPoint(4)
    group = four_line_surface().torsion_group
    verdict = is_divisible(target, n, group)
    reasons = [
        f"n = {n} is even; a cover of order {2 * n} exists exactly when"
        " P_{E+} - P_{E-} = 4*P_o is n-divisible in the Mordell-Weil group",
    ]
    if verdict.divisible:
        reasons.append(f"4*P_o = {n}*({verdict.witness}), so the cover exists")
    else:
        reasons.append(
            f"no point X satisfies {n}*X = 4*P_o (the free coefficient 4 is not"
            f" divisible by {n}), so no cover exists"
        )
    return CoverVerdict(atype, n, verdict.divisible, tuple(reasons), verdict.witness)


class RelationStatus(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RelationVerdict:
    status: RelationStatus
    detail: str
    mismatches: tuple[str, ...] = ()

    def __bool__(self):
        return self.status is RelationStatus.HOLDS


def verify_ns_relation(table: IntersectionTable, lhs: FormalClass, rhs: FormalClass,
                       ns_rank: int | None = None) -> RelationVerdict:
    """Are two formal classes equal in the Neron-Severi group?

    Any disagreement of pairings (against a generator, or of the two
    self-intersections) disproves the relation outright.  Full agreement
    proves it only if the table generators span the declared Neron-Severi
    rank (default: 2 + sum(m_v - 1) + free rank); otherwise the difference
    could hide in the unseen part of the lattice and the verdict is
    "inconclusive", never a silent pass.
    """
    if lhs == rhs:
        return RelationVerdict(RelationStatus.HOLDS, "sides are syntactically identical")
    gens = table.generators()
    mismatches = []
    for g in gens:
        left = table.pair_class(lhs, FormalClass.of(g))
        right = table.pair_class(rhs, FormalClass.of(g))
        if left != right:
            mismatches.append(f"{_sym_str(g)}: {left} != {right}")
    sq_left = table.pair_class(lhs, lhs)
    sq_right = table.pair_class(rhs, rhs)
    if sq_left != sq_right:
        mismatches.append(f"self-intersection: {sq_left} != {sq_right}")
    if mismatches:
        return RelationVerdict(
            RelationStatus.FAILS, "intersection profiles disagree", tuple(mismatches)
        )
    if ns_rank is None:
        ns_rank = (
            2
            + sum(table.fiber_of(fid).m - 1 for fid, _ in table.cfg.fibers)
            + table.cfg.mw_free_rank
        )
    gram = QMatrix([[table.pair(a, b) for b in gens] for a in gens])
    rank = qmat_rank(gram)
    if rank < ns_rank:
        return RelationVerdict(
            RelationStatus.INCONCLUSIVE,
            f"all pairings agree, but the {len(gens)} generators only span rank"
            f" {rank} < {ns_rank}, which cannot separate classes",
        )
    return RelationVerdict(
        RelationStatus.HOLDS,
        f"all {len(gens)} generator pairings and the self-intersections agree"
        f" over a rank-{rank} spanning set",
    )
