"""Unramified double covers of hyperelliptic curves via branch partitions.

Splitting the 2g+2 branch points (infinity included when deg f is odd)
into two nonempty even parts gives the 2^{2g} - 1 connected unramified
double covers.  Each part cuts out a quotient curve, and the Prym of the
cover is isogenous to the product of the two quotient Jacobians, so its
p-rank is the sum of the two quotient p-ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .gf import FieldCtx, FieldElement, element_str, field_spec_str, parse_element
from .poly import Poly, poly_str
from .cartier import HyperellipticCurve, p_rank

COVER_GENUS_CAP = 3


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()

BranchPoint = Union[FieldElement, _Infinity]


def _point_key(pt: BranchPoint) -> tuple:
    if pt is INF:
        return (1, 0)
    return (0, pt.code)


def _sort_points(pts) -> tuple:
    return tuple(sorted(pts, key=_point_key))


def point_str(pt: BranchPoint) -> str:
    return "INF" if pt is INF else element_str(pt)


def parse_point(text: str, ctx: FieldCtx) -> BranchPoint:
    return INF if text.strip() == "INF" else parse_element(text, ctx)


@dataclass(frozen=True)
class BranchSet:
    affine: tuple[FieldElement, ...]
    has_infinity: bool

    @property
    def points(self) -> tuple[BranchPoint, ...]:
        return self.affine + ((INF,) if self.has_infinity else ())

    def __len__(self) -> int:
        return len(self.affine) + (1 if self.has_infinity else 0)


def branch_set(curve: HyperellipticCurve) -> BranchSet:
    """Branch points of y^2 = f(x); requires f to split over its own field."""
    roots = curve.f.roots_in()
    if len(roots) != curve.f.degree():
        raise ValueError(
            f"only {len(roots)} of {curve.f.degree()} branch points are rational; "
            "extend the base field until f splits")
    bs = BranchSet(_sort_points(roots), curve.f.degree() % 2 == 1)
    assert len(bs) == 2 * curve.genus + 2
    return bs


@dataclass(frozen=True)
class EvenPartition:
    """Unordered split of the branch set into two nonempty even parts;
    canonical form puts the part containing the smallest point first."""
    part1: tuple[BranchPoint, ...]
    part2: tuple[BranchPoint, ...]

    @staticmethod
    def make(a, b) -> "EvenPartition":
        a, b = _sort_points(a), _sort_points(b)
        if len(a) % 2 or len(b) % 2 or not a or not b:
            raise ValueError("parts must be nonempty of even size")
        if _point_key(b[0]) < _point_key(a[0]):
            a, b = b, a
        return EvenPartition(a, b)

    def swapped(self) -> "EvenPartition":
        return EvenPartition(self.part2, self.part1)


def enumerate_even_partitions(bs: BranchSet) -> list[EvenPartition]:
    """All 2^{2g} - 1 even partitions, in deterministic order (part1 size,
    then position); part1 always contains the smallest branch point."""
    pts = bs.points
    n = len(pts)
    rest = pts[1:]
    out = []
    for size in range(2, n - 1, 2):
        for chosen in combinations(range(n - 1), size - 1):
            part1 = (pts[0],) + tuple(rest[i] for i in chosen)
            part2 = tuple(rest[i] for i in range(n - 1) if i not in chosen)
            out.append(EvenPartition(_sort_points(part1), _sort_points(part2)))
    return out


def subcurve_from_part(part, ctx: FieldCtx) -> Optional[HyperellipticCurve]:
    """y^2 = prod over the part's affine points of (x - b); None marks the
    genus-0 quotient of a size-2 part."""
    part = tuple(part)
    if len(part) % 2 or not part:
        raise ValueError("part must have even size >= 2")
    if len(part) == 2:
        return None
    f = Poly.from_roots(ctx, [b for b in part if b is not INF])
    curve = HyperellipticCurve(f)
    assert curve.genus == len(part) // 2 - 1
    return curve


def prym_p_rank(curve: HyperellipticCurve, partition: EvenPartition) -> int:
    """p-rank of the Prym: sum of the two quotient-curve p-ranks."""
    total = 0
    for part in (partition.part1, partition.part2):
        sub = subcurve_from_part(part, curve.ctx)
        if sub is not None:
            total += p_rank(sub)
    return total


@dataclass(frozen=True)
class CoverDatum:
    base: HyperellipticCurve
    partition: EvenPartition
    quotient1: Optional[HyperellipticCurve]
    quotient2: Optional[HyperellipticCurve]
    f: int
    f_prime: int

    @property
    def f_y(self) -> int:
        return self.f + self.f_prime

    def to_json_dict(self) -> dict:
        return {
            "field": field_spec_str(self.base.ctx),
            "f_coeffs": poly_str(self.base.f),
            "partition": [[point_str(b) for b in self.partition.part1],
                          [point_str(b) for b in self.partition.part2]],
            "f": self.f,
            "f_prime": self.f_prime,
            "f_Y": self.f_y,
        }


def cover_datum_from_json(d: dict) -> CoverDatum:
    from .gf import parse_field_spec
    from .poly import parse_poly
    ctx = parse_field_spec(d["field"])
    curve = HyperellipticCurve(parse_poly(d["f_coeffs"], ctx))
    parts = [[parse_point(t, ctx) for t in part] for part in d["partition"]]
    partition = EvenPartition.make(parts[0], parts[1])
    q1 = subcurve_from_part(partition.part1, ctx)
    q2 = subcurve_from_part(partition.part2, ctx)
    return CoverDatum(curve, partition, q1, q2, d["f"], d["f_prime"])


def cover_profile(curve: HyperellipticCurve,
                  genus_cap: int = COVER_GENUS_CAP) -> list[CoverDatum]:
    """One CoverDatum per even partition; the base p-rank is computed once."""
    if curve.genus > genus_cap:
        raise ValueError(f"genus {curve.genus} exceeds cover cap {genus_cap}")
    bs = branch_set(curve)
    f = p_rank(curve)
    out = []
    for partition in enumerate_even_partitions(bs):
        q1 = subcurve_from_part(partition.part1, curve.ctx)
        q2 = subcurve_from_part(partition.part2, curve.ctx)
        fp = (p_rank(q1) if q1 is not None else 0) + \
             (p_rank(q2) if q2 is not None else 0)
        out.append(CoverDatum(curve, partition, q1, q2, f, fp))
    return out


def theta_two_torsion_report(curve: HyperellipticCurve,
                             profile: Optional[list[CoverDatum]] = None) -> dict:
    """Does the theta divisor contain a point of order 2?  Equivalent to some
    cover having a non-ordinary Prym (f' < g - 1); witnesses list those covers."""
    if profile is None:
        profile = cover_profile(curve)
    g = curve.genus
    witnesses = [c.partition for c in profile if c.f_prime < g - 1]
    return {"contains_order_2": bool(witnesses), "witnesses": witnesses}
