"""Cartier operator matrices of hyperelliptic curves and the p-rank.

For y^2 = f(x) with f squarefree of degree >= 3, the matrix of the Cartier
operator on regular differentials (basis dx/y, x dx/y, ...) has entry
(i, j) = c_{ip-j} (1-indexed), where c_m is the x^m coefficient of
f^{(p-1)/2}.  The p-rank is the rank of the g-fold semilinear product
M^{(p^{g-1})} ... M^{(p)} M, where (p) raises entries to the p-th power.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .gf import FieldCtx, FieldElement, build_field, field_spec_str, parse_field_spec
from .poly import Poly, parse_poly, poly_str

GENUS_CAP = 4


class HyperellipticCurve:
    """y^2 = f(x) over an odd-characteristic field; genus = floor((deg f - 1)/2)."""

    __slots__ = ("ctx", "f", "genus")

    def __init__(self, f: Poly):
        if f.degree() < 3:
            raise ValueError("need deg f >= 3 for genus >= 1")
        if not f.is_squarefree():
            raise ValueError("f must be squarefree")
        self.ctx = f.ctx
        self.f = f
        self.genus = (f.degree() - 1) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self) -> int:
        return hash(self.f)

    def __repr__(self) -> str:
        return f"HyperellipticCurve(y^2 = [{poly_str(self.f)}], q={self.ctx.q})"

    def spec_str(self) -> str:
        return f"{field_spec_str(self.ctx)};f={poly_str(self.f)}"

    @classmethod
    def from_spec(cls, text: str) -> "HyperellipticCurve":
        try:
            field_part, f_part = text.split(";", 1)
        except ValueError as exc:
            raise ValueError(f"curve spec {text!r} needs '<field>;f=<coeffs>'") from exc
        if not f_part.startswith("f="):
            raise ValueError(f"curve spec {text!r} is missing 'f='")
        ctx = parse_field_spec(field_part)
        return cls(parse_poly(f_part[2:], ctx))


@dataclass(frozen=True)
class CartierMatrix:
    entries: tuple[tuple[FieldElement, ...], ...]
    ctx: FieldCtx

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def det2(self) -> FieldElement:
        if self.size != 2:
            raise ValueError("det2 needs a 2x2 matrix")
        (a, b), (c, d) = self.entries
        return a * d - b * c


def cartier_matrix(curve: HyperellipticCurve) -> CartierMatrix:
    h = curve.f.half_power()
    p, g = curve.ctx.p, curve.genus
    rows = tuple(tuple(h.coefficient(i * p - j) for j in range(1, g + 1))
                 for i in range(1, g + 1))
    return CartierMatrix(rows, curve.ctx)


def frobenius_twist(m: CartierMatrix) -> CartierMatrix:
    return CartierMatrix(tuple(tuple(e.frobenius() for e in row) for row in m.entries),
                         m.ctx)


def mat_mul(a: CartierMatrix, b: CartierMatrix) -> CartierMatrix:
    n = a.size
    zero = a.ctx.zero()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for t in range(n):
                acc = acc + a.entries[i][t] * b.entries[t][j]
            row.append(acc)
        rows.append(tuple(row))
    return CartierMatrix(tuple(rows), a.ctx)


def mat_rank(m: CartierMatrix) -> int:
    """Rank by exact Gaussian elimination; no pivot tolerance exists here."""
    rows = [list(r) for r in m.entries]
    n = m.size
    rank = 0
    col = 0
    while rank < n and col < n:
        pivot = next((r for r in range(rank, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [e * inv for e in rows[rank]]
        for r in range(n):
            if r != rank and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [e - factor * pe for e, pe in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def stable_matrix(curve: HyperellipticCurve) -> CartierMatrix:
    """The g-fold twisted product M^{(p^{g-1})} ... M^{(p)} M."""
    m = cartier_matrix(curve)
    product = m
    twisted = m
    for _ in range(curve.genus - 1):
        twisted = frobenius_twist(twisted)
        product = mat_mul(twisted, product)
    return product


def p_rank(curve: HyperellipticCurve, genus_cap: int = GENUS_CAP) -> int:
    """p-rank of the Jacobian: rank of the g-fold twisted Cartier product."""
    if curve.genus > genus_cap:
        raise ValueError(f"genus {curve.genus} exceeds cap {genus_cap}")
    return mat_rank(stable_matrix(curve))


def deuring_polynomial(p: int) -> Poly:
    """sum_i binom((p-1)/2, i)^2 t^i over F_p; its roots are exactly the
    Legendre parameters of supersingular elliptic curves y^2 = x(x-1)(x-t)."""
    fp = build_field(p)
    m = (p - 1) // 2
    return Poly.from_ints(fp, [comb(m, i) ** 2 for i in range(m + 1)])


def is_supersingular_lambda(lam: FieldElement) -> bool:
    """True iff y^2 = x(x-1)(x-lam) is supersingular; lam must avoid {0, 1}."""
    ctx = lam.ctx
    if lam.is_zero() or lam == ctx.one():
        raise ValueError("lambda in {0, 1} is a degenerate Legendre parameter")
    h = deuring_polynomial(ctx.p).lift_to(ctx)
    return h.evaluate(lam).is_zero()


def legendre_curve(lam: FieldElement) -> HyperellipticCurve:
    """y^2 = x(x-1)(x-lam)."""
    ctx = lam.ctx
    return HyperellipticCurve(Poly.from_roots(ctx, [ctx.zero(), ctx.one(), lam]))
