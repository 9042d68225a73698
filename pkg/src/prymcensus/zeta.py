"""Brute-force point counting and L-polynomials: the independent p-rank oracle.

Point counts over F_{q^m} come from quadratic-character sums; the
L-polynomial is rebuilt from g counts via Newton's identities plus the
functional equation, and the p-rank is the degree of L mod p.  Nothing
here touches the Cartier machinery, which is the point: the two paths
must agree and are checked against each other wholesale in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import (CapExceeded, ContextMismatch, FieldCtx, FieldElement,
                 build_field, enumerate_field)
from .cartier import HyperellipticCurve
from .poly import Poly

DEFAULT_COUNT_CAP = 1 << 22
_VECTOR_THRESHOLD = 4096  # below this, plain loops beat table setup

_square_cache: dict[tuple, frozenset] = {}


def _square_codes(ctx: FieldCtx) -> frozenset:
    key = ctx.key()
    cached = _square_cache.get(key)
    if cached is None:
        cached = frozenset((e * e).code for e in enumerate_field(ctx) if not e.is_zero())
        _square_cache[key] = cached
    return cached


def chi(e: FieldElement) -> int:
    """Quadratic character: 1 on nonzero squares, -1 on nonsquares, 0 at 0."""
    if e.is_zero():
        return 0
    return 1 if e.code in _square_codes(e.ctx) else -1


def extension_ctx(ctx: FieldCtx, m: int) -> FieldCtx:
    if m == 1:
        return ctx
    return build_field(ctx.p, ctx.k * m)


def _count_infinity(f: Poly) -> int:
    if f.degree() % 2 == 1:
        return 1
    return 2 if chi(f.leading()) == 1 else 0


def count_points(curve: HyperellipticCurve, m: int = 1,
                 cap: int = DEFAULT_COUNT_CAP) -> int:
    """#X(F_{q^m}) for the smooth projective model of y^2 = f(x)."""
    big = extension_ctx(curve.ctx, m)
    if big.q > cap:
        raise CapExceeded(f"field size {big.q} exceeds counting cap {cap}")
    f = curve.f.lift_to(big)
    if big.q > _VECTOR_THRESHOLD:
        from . import fastscan
        affine = fastscan.chi_sum_poly(f) + big.q
    else:
        affine = sum(1 + chi(f.evaluate(x)) for x in enumerate_field(big))
    return affine + _count_infinity(f)


@dataclass(frozen=True)
class LPolynomial:
    """Numerator of the zeta function: integer coefficients, degree 2g."""
    coeffs: tuple[int, ...]
    q: int
    g: int

    def point_count(self, m: int) -> int:
        """#X(F_{q^m}) implied by this L-polynomial."""
        return self.q ** m + 1 - self.power_sum(m)

    def power_sum(self, m: int) -> int:
        ps: list[int] = [0]
        for n in range(1, m + 1):
            acc = n * self._a(n)
            for j in range(1, n):
                acc += self._a(j) * ps[n - j]
            ps.append(-acc)
        return ps[m]

    def _a(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def reduced_degree(self, p: int) -> int:
        deg = 0
        for i, c in enumerate(self.coeffs):
            if c % p != 0:
                deg = i
        return deg


def l_polynomial(curve: HyperellipticCurve, cap: int = DEFAULT_COUNT_CAP) -> LPolynomial:
    """Reconstruct L(t) from point counts over F_{q^m}, m = 1..g."""
    g = curve.genus
    q = curve.ctx.q
    power_sums = [0]
    for m in range(1, g + 1):
        power_sums.append(q ** m + 1 - count_points(curve, m, cap))
    a = [1] + [0] * (2 * g)
    for n in range(1, g + 1):
        acc = power_sums[n]
        for j in range(1, n):
            acc += a[j] * power_sums[n - j]
        if acc % n != 0:
            raise ArithmeticError(f"inconsistent point counts at degree {n}")
        a[n] = -acc // n
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    lp = LPolynomial(tuple(a), q, g)
    for m in range(1, 2 * g + 1):
        if lp.point_count(m) < 0:
            raise ArithmeticError(f"L-polynomial implies negative count at m={m}")
    return lp


def p_rank_zeta(curve: HyperellipticCurve, cap: int = DEFAULT_COUNT_CAP) -> int:
    """p-rank as the degree of L(t) mod p."""
    return l_polynomial(curve, cap).reduced_degree(curve.ctx.p)


def trace(curve: HyperellipticCurve, cap: int = DEFAULT_COUNT_CAP) -> int:
    """a = q + 1 - #X(F_q), the Frobenius trace term."""
    return curve.ctx.q + 1 - count_points(curve, 1, cap)


# ---------------------------------------------------------------------------
# fiber products


def _check_fiber_inputs(f1: Poly, f2: Poly) -> None:
    if f1.ctx != f2.ctx:
        raise ContextMismatch("fiber product factors over different contexts")
    if not (f1 * f2).is_squarefree():
        raise ValueError("branch loci overlap: f1*f2 is not squarefree")


def count_fiber_product_points(c1, c2, m: int = 1,
                               cap: int = DEFAULT_COUNT_CAP) -> int:
    """Points on the smooth model of the normalized fiber product of the two
    double covers y1^2 = f1(x), y2^2 = f2(x) over F_{q^m}.

    Affine points: sum over x of (1 + chi(f1(x)))(1 + chi(f2(x))); at a
    simple zero of one factor the other factor's term counts alone, which
    the formula already does since chi(0) = 0.  Above x = infinity the
    count depends only on (deg f1 mod 2, deg f2 mod 2) and the leading
    coefficients l1, l2:

        (even, even) -> (1 + chi(l1)) * (1 + chi(l2))
        (odd,  even) -> 1 + chi(l2)
        (even, odd)  -> 1 + chi(l1)
        (odd,  odd)  -> 1 + chi(l1 * l2)

    i.e. one factor of (1 + chi) per unramified direction.  The table is
    pinned by the trace identity #Y = #X + #C1 + #C2 - 2(q^m + 1) in tests.
    """
    f1 = c1.f if isinstance(c1, HyperellipticCurve) else c1
    f2 = c2.f if isinstance(c2, HyperellipticCurve) else c2
    _check_fiber_inputs(f1, f2)
    big = extension_ctx(f1.ctx, m)
    if big.q > cap:
        raise CapExceeded(f"field size {big.q} exceeds counting cap {cap}")
    g1, g2 = f1.lift_to(big), f2.lift_to(big)
    if big.q > _VECTOR_THRESHOLD:
        from . import fastscan
        total = fastscan.fiber_affine_sum(g1, g2)
    else:
        total = sum((1 + chi(g1.evaluate(x))) * (1 + chi(g2.evaluate(x)))
                    for x in enumerate_field(big))
    d1_odd = g1.degree() % 2 == 1
    d2_odd = g2.degree() % 2 == 1
    l1, l2 = g1.leading(), g2.leading()
    if not d1_odd and not d2_odd:
        total += (1 + chi(l1)) * (1 + chi(l2))
    elif d1_odd and not d2_odd:
        total += 1 + chi(l2)
    elif not d1_odd and d2_odd:
        total += 1 + chi(l1)
    else:
        total += 1 + chi(l1 * l2)
    return total
