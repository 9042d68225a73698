"""Sparse trivariate polynomials over F_p in (lam, t1, t2).

Carries the symbolic Cartier coefficients of the genus-2 family
y^2 = x(x-1)(x-lam)(x-t1)(x-t2) and the ordinariness determinant
D = c_{p-1} c_{2p-2} - c_{p-2} c_{2p-1}, including specialization of lam
to values in extension fields.
"""

from __future__ import annotations

from typing import Optional, Union

from .gf import ContextMismatch, FieldCtx, FieldElement, embed

VARS = ("l", "t1", "t2")
Expo = tuple[int, int, int]


class MvPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict[Expo, FieldElement]):
        clean = {}
        for e, c in terms.items():
            if c.ctx != ctx:
                raise ContextMismatch("coefficient from a different field context")
            if not c.is_zero():
                clean[e] = c
        self.ctx = ctx
        self.terms = clean

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "MvPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, c: FieldElement) -> "MvPoly":
        return cls(c.ctx, {(0, 0, 0): c})

    @classmethod
    def var(cls, ctx: FieldCtx, index: int) -> "MvPoly":
        e = [0, 0, 0]
        e[index] = 1
        return cls(ctx, {tuple(e): ctx.one()})

    @classmethod
    def from_int_terms(cls, ctx: FieldCtx, terms: dict[Expo, int]) -> "MvPoly":
        return cls(ctx, {e: ctx.scalar(c) for e, c in terms.items()})

    # -- basics ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, MvPoly) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.ctx.key(), frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MvPoly[{mv_str(self)}]"

    def _check(self, other: "MvPoly") -> None:
        if not isinstance(other, MvPoly) or self.ctx != other.ctx:
            raise ContextMismatch("polynomials from different field contexts")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "MvPoly") -> "MvPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return MvPoly(self.ctx, out)

    def __neg__(self) -> "MvPoly":
        return MvPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MvPoly") -> "MvPoly":
        return self + (-other)

    def __mul__(self, other: "MvPoly") -> "MvPoly":
        self._check(other)
        out: dict[Expo, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                prod = c1 * c2
                cur = out.get(e)
                out[e] = prod if cur is None else cur + prod
        return MvPoly(self.ctx, out)

    def lift_to(self, big: FieldCtx) -> "MvPoly":
        if big == self.ctx:
            return self
        return MvPoly(big, {e: embed(c, big) for e, c in self.terms.items()})

    def specialize(self, lam: Optional[FieldElement] = None,
                   t1: Optional[FieldElement] = None,
                   t2: Optional[FieldElement] = None
                   ) -> Union["MvPoly", FieldElement]:
        """Substitute any subset of the variables; values may live in an
        extension, in which case the coefficients are lifted first.  Full
        substitution returns the field element."""
        values = (lam, t1, t2)
        given = [v for v in values if v is not None]
        if not given:
            return self
        target = given[0].ctx
        for v in given[1:]:
            if v.ctx != target:
                raise ContextMismatch("substituted values must share one context")
        lifted = self.lift_to(target)
        out: dict[Expo, FieldElement] = {}
        for e, c in lifted.terms.items():
            new_e = list(e)
            for i, v in enumerate(values):
                if v is not None and e[i]:
                    c = c * v ** e[i]
                    new_e[i] = 0
            key = tuple(new_e)
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        result = MvPoly(target, out)
        if all(v is not None for v in values):
            return result.terms.get((0, 0, 0), target.zero())
        return result


def mv_arith(a: MvPoly, b: MvPoly, op: str) -> MvPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def mv_str(m: MvPoly) -> str:
    """Render with terms in descending exponent order, matching how the
    genus-2 determinant data is usually displayed."""
    if m.is_zero():
        return "0"
    parts = []
    for e in sorted(m.terms, reverse=True):
        c = m.terms[e]
        if c.ctx.k == 1:
            coeff = str(c.coeffs[0])
            show_coeff = coeff != "1" or e == (0, 0, 0)
        else:
            coeff = "(" + ",".join(str(x) for x in c.coeffs) + ")"
            show_coeff = True
        monos = [f"{v}^{d}" if d > 1 else v
                 for v, d in zip(VARS, e) if d > 0]
        body = "*".join(([coeff] if show_coeff else []) + monos)
        parts.append(body if body else coeff)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# symbolic Cartier entries of the genus-2 family


def _xpoly_mul_trunc(a: list[MvPoly], b: list[MvPoly], trunc: int,
                     ctx: FieldCtx) -> list[MvPoly]:
    n = min(len(a) + len(b) - 1, trunc + 1)
    out = [MvPoly.zero(ctx) for _ in range(n)]
    for i, ai in enumerate(a):
        if ai.is_zero() or i >= n:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            out[i + j] = out[i + j] + ai * bj
    return out


def symbolic_cartier_entries(p: int,
                             ) -> tuple[MvPoly, MvPoly, MvPoly, MvPoly]:
    """(c_{p-1}, c_{p-2}, c_{2p-1}, c_{2p-2}) of f^{(p-1)/2} for the family
    f = x(x-1)(x-lam)(x-t1)(x-t2), as polynomials in (lam, t1, t2).

    Expansion truncates in x above degree 2p-1 since higher coefficients
    are never consulted; p is capped to keep the expansion desk-sized.
    """
    if p not in (3, 5, 7, 11, 13):
        raise ValueError("symbolic expansion supported for p in {3,5,7,11,13}")
    from .gf import build_field
    ctx = build_field(p)
    one = MvPoly.const(ctx.one())
    zero = MvPoly.zero(ctx)
    lam, t1, t2 = (MvPoly.var(ctx, i) for i in range(3))
    # f as a polynomial in x, constant term first
    f = [zero, one]  # x
    for root in (one, lam, t1, t2):
        f = _xpoly_mul_trunc(f, [-root, one], 6, ctx)
    trunc = 2 * p - 1
    h = [one]
    e = (p - 1) // 2
    base = f
    while e > 0:
        if e & 1:
            h = _xpoly_mul_trunc(h, base, trunc, ctx)
        e >>= 1
        if e:
            base = _xpoly_mul_trunc(base, base, trunc, ctx)

    def coeff(i: int) -> MvPoly:
        return h[i] if i < len(h) else zero

    return coeff(p - 1), coeff(p - 2), coeff(2 * p - 1), coeff(2 * p - 2)


def d_poly(p: int) -> MvPoly:
    """The ordinariness determinant c_{p-1} c_{2p-2} - c_{p-2} c_{2p-1}."""
    c_a, c_b, c_c, c_d = symbolic_cartier_entries(p)
    return c_a * c_d - c_b * c_c


def supersingular_determinant_factorization(a: FieldElement) -> dict:
    """Factor D at lam = a^4 for a root a of x^2+4x+2 over F_25 (p = 5).

    Returns the exact identity pieces:
        D|_{lam=a^4} = unit * (t1 + 4 t2)^2 * inner
    with inner = t1^2 t2 + t1 t2^2 + a^17 (t1^2 + t2^2) + a^5 t1 t2
               + a^4 (t1 + t2),
    checking it by exact polynomial equality.  The unit (a^15) is reported
    with its exponent; 'matches' records whether the identity held.
    """
    ctx = a.ctx
    if ctx.p != 5 or ctx.k % 2 != 0:
        raise ValueError("needs a quadratic extension of F_5")
    two = ctx.scalar(2)
    if not (a * a + ctx.scalar(4) * a + two).is_zero():
        raise ValueError("a must be a root of x^2 + 4x + 2")
    d_spec = d_poly(5).specialize(lam=a ** 4)
    t1, t2 = MvPoly.var(ctx, 1), MvPoly.var(ctx, 2)
    lin = t1 + MvPoly.const(ctx.scalar(4)) * t2
    inner = (t1 * t1 * t2 + t1 * t2 * t2
             + MvPoly.const(a ** 17) * (t1 * t1 + t2 * t2)
             + MvPoly.const(a ** 5) * t1 * t2
             + MvPoly.const(a ** 4) * (t1 + t2))
    unit = a ** 15
    product = MvPoly.const(unit) * lin * lin * inner
    return {
        "root": a,
        "unit": unit,
        "unit_exponent": 15,
        "matches": d_spec == product,
        "specialized": d_spec,
    }
