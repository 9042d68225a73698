"""Dense univariate polynomials over a finite field context.

Coefficients are stored constant-term first and always normalized (no
trailing zeros; the zero polynomial is the empty tuple).  This carries
the curve equations y^2 = f(x) and the half-power f^{(p-1)/2} whose
coefficients feed the Cartier matrix.
"""

from __future__ import annotations

from math import lcm
from typing import Iterable, Optional

from .gf import (CapExceeded, ContextMismatch, DEFAULT_ENUM_CAP, FieldCtx,
                 FieldElement, embed, enumerate_field)


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[FieldElement]):
        cs = list(coeffs)
        for c in cs:
            if c.ctx != ctx:
                raise ContextMismatch("coefficient from a different field context")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, [ctx.one()])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, [ctx.zero(), ctx.one()])

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Iterable[int]) -> "Poly":
        return cls(ctx, [ctx.scalar(n) for n in ints])

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots: Iterable[FieldElement],
                   leading: Optional[FieldElement] = None) -> "Poly":
        out = cls.one(ctx) if leading is None else cls(ctx, [leading])
        for r in roots:
            out = out * cls(ctx, [-r, ctx.one()])
        return out

    # -- basics ----------------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff_tuple(self) -> tuple:
        return tuple(c.coeffs for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ctx.key(), self.coeff_tuple()))

    def __repr__(self) -> str:
        return f"Poly[{poly_str(self)}]"

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or self.ctx != other.ctx:
            raise ContextMismatch("polynomials from different field contexts")

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ctx)
        zero = self.ctx.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    def scale(self, s: FieldElement) -> "Poly":
        return Poly(self.ctx, [c * s for c in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.ctx)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quot = [self.ctx.zero()] * max(0, self.degree() - other.degree() + 1)
        rem = list(self.coeffs)
        inv_lead = other.leading().inverse()
        d = other.degree()
        while len(rem) - 1 >= d and rem:
            coef = rem[-1] * inv_lead
            shift = len(rem) - 1 - d
            quot[shift] = coef
            for i, oc in enumerate(other.coeffs):
                rem[i + shift] = rem[i + shift] - coef * oc
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.ctx, quot), Poly(self.ctx, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- analysis ----------------------------------------------------------------

    def evaluate(self, x: FieldElement) -> FieldElement:
        if x.ctx != self.ctx:
            raise ContextMismatch("evaluation point from a different context")
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.scalar(i) * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        self._check(other)
        a, b = self, other
        if a.is_zero() and b.is_zero():
            raise ValueError("gcd(0, 0) is undefined")
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        if self.is_zero():
            raise ValueError("zero polynomial")
        if self.degree() == 0:
            return True
        d = self.derivative()
        if d.is_zero():
            return False
        return self.gcd(d).degree() == 0

    def half_power(self) -> "Poly":
        """f^{(p-1)/2}, computed in full; degrees stay desk-sized here."""
        return self ** ((self.ctx.p - 1) // 2)

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.ctx)
        base = self % m
        while e > 0:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def lift_to(self, big: FieldCtx) -> "Poly":
        if big == self.ctx:
            return self
        return Poly(big, [embed(c, big) for c in self.coeffs])

    def roots_in(self, ctx2: Optional[FieldCtx] = None,
                 cap: int = DEFAULT_ENUM_CAP) -> list[FieldElement]:
        """All roots in ctx2 (an extension of the coefficient field), found
        by exhaustive evaluation; each root reported once."""
        target = ctx2 if ctx2 is not None else self.ctx
        f = self.lift_to(target)
        if f.is_zero():
            raise ValueError("zero polynomial has every element as a root")
        return [x for x in enumerate_field(target, cap) if f.evaluate(x).is_zero()]

    def splitting_degree(self, cap_degree: int = 12) -> int:
        """Smallest m such that f splits into linear factors over F_{q^m}:
        the lcm of the distinct-degree factor degrees."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        f = self.monic()
        sf = f // f.gcd(f.derivative()) if f.degree() > 0 else f
        q = self.ctx.q
        result = 1
        x = Poly.x(self.ctx)
        t = x
        remaining = sf
        d = 0
        while remaining.degree() > 0:
            d += 1
            if d > cap_degree:
                raise CapExceeded(f"splitting degree exceeds {cap_degree}")
            t = t.powmod(q, remaining)
            g = remaining.gcd(t - x)
            if g.degree() > 0:
                result = lcm(result, d)
                remaining = remaining // g
                t = t % remaining if remaining.degree() > 0 else t
        return result


# ---------------------------------------------------------------------------
# module-level names mirroring the operation surface


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def half_power_coeffs(f: Poly) -> Poly:
    return f.half_power()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return a.gcd(b)


def is_squarefree(f: Poly) -> bool:
    return f.is_squarefree()


def roots_in(f: Poly, ctx2: FieldCtx, cap: int = DEFAULT_ENUM_CAP) -> list[FieldElement]:
    return f.roots_in(ctx2, cap)


# -- text format: comma-separated element encodings, constant term first ------


def poly_str(f: Poly) -> str:
    from .gf import element_str
    if f.is_zero():
        return "0" if f.ctx.k == 1 else ",".join(["0"] * f.ctx.k)
    return ";".join(element_str(c) for c in f.coeffs) if f.ctx.k > 1 \
        else ",".join(str(c.coeffs[0]) for c in f.coeffs)


def parse_poly(text: str, ctx: FieldCtx) -> Poly:
    """Parse the coefficient list, constant first.  Prime fields use commas
    ("0,4,0,0,0,1" for x^5+4x); extensions separate elements with ';'."""
    from .gf import parse_element
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    if ctx.k == 1:
        return Poly.from_ints(ctx, [int(t) for t in text.split(",")])
    return Poly(ctx, [parse_element(t, ctx) for t in text.split(";")])
