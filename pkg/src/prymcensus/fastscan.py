"""Vectorized engine for bulk field work: census sweeps and point counting.

Elements are numpy digit arrays of shape (..., k) over F_p (int64 while
computing); a whole parameter grid is one array.  Two layers live here:

  * VField -- table-free vectorized arithmetic (add/mul/frobenius), enough
    for the census pipelines, which are division-free by construction.
  * FieldTables -- full exp/log/character tables of one field, used for
    quadratic-character sums when counting points over large fields.

Everything in this module is an internal fast path: the scalar gf/poly/
cartier layer is the reference implementation and the test suite checks
the two against each other on random batches.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .gf import CapExceeded, FieldCtx, FieldElement
from .poly import Poly

_vf_cache: dict[tuple, "VField"] = {}
_tables_cache: dict[tuple, "FieldTables"] = {}

TABLES_CAP = 1 << 22


class VField:
    """Vectorized F_{p^k} arithmetic on (..., k) int64 digit arrays."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.p
        self.k = ctx.k
        self.q = ctx.q
        k = ctx.k
        if k > 1:
            self.red = np.array(ctx._reduction_rows(), dtype=np.int64)  # (k-1, k)
            self.frob_mat = np.array(ctx._frobenius_rows(), dtype=np.int64)  # (k, k)
        else:
            self.red = np.zeros((0, 1), dtype=np.int64)
            self.frob_mat = np.ones((1, 1), dtype=np.int64)
        self.p_pows = np.array([ctx.p ** i for i in range(k)], dtype=np.int64)

    # -- conversions ---------------------------------------------------------

    def scalar_digits(self, e: FieldElement) -> np.ndarray:
        if e.ctx != self.ctx:
            raise ValueError("element from a different context")
        return np.array(e.coeffs, dtype=np.int64)

    def int_digits(self, n: int) -> np.ndarray:
        out = np.zeros(self.k, dtype=np.int64)
        out[0] = n % self.p
        return out

    def from_codes(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty(codes.shape + (self.k,), dtype=np.int64)
        rem = codes
        for i in range(self.k):
            out[..., i] = rem % self.p
            rem = rem // self.p
        return out

    def to_codes(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self.p_pows

    def element(self, digits: np.ndarray) -> FieldElement:
        return self.ctx.element([int(d) for d in digits])

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        a = np.asarray(a)
        b = np.asarray(b)
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        conv = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            ai = a[..., i:i + 1]
            conv[..., i:i + k] += ai * b
        conv %= p
        out = conv[..., :k]
        for j in range(k - 1):
            out = out + conv[..., k + j:k + j + 1] * self.red[j]
        return out % p

    def frob(self, a):
        if self.k == 1:
            return np.asarray(a) % self.p
        return (np.asarray(a) @ self.frob_mat) % self.p

    def pow_small(self, a, n: int):
        result = np.broadcast_to(self.int_digits(1), np.shape(a)).copy()
        base = a
        while n > 0:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def iszero(self, a) -> np.ndarray:
        return (np.asarray(a) == 0).all(axis=-1)


def vf_for(ctx: FieldCtx) -> VField:
    vf = _vf_cache.get(ctx.key())
    if vf is None:
        vf = VField(ctx)
        _vf_cache[ctx.key()] = vf
    return vf


# ---------------------------------------------------------------------------
# exp/log/character tables


class FieldTables:
    """Multiplicative tables of one field: codes of g^i, discrete logs of
    codes, digit decodings, and the quadratic character by code."""

    def __init__(self, ctx: FieldCtx):
        if ctx.q > TABLES_CAP:
            raise CapExceeded(f"field size {ctx.q} exceeds table cap {TABLES_CAP}")
        vf = vf_for(ctx)
        self.ctx = ctx
        self.vf = vf
        Q = ctx.q
        self.Q = Q
        gen = _find_generator(vf)
        powers = np.empty((Q - 1, ctx.k), dtype=np.int64)
        powers[0] = vf.int_digits(1)
        filled = 1
        while filled < Q - 1:
            take = min(filled, Q - 1 - filled)
            step = vf.mul(powers[filled - 1], gen)  # g^filled
            powers[filled:filled + take] = vf.mul(powers[:take], step)
            filled += take
        codes = vf.to_codes(powers)
        self.exp = np.concatenate([codes, codes]).astype(np.int64)
        self.log = np.zeros(Q, dtype=np.int64)
        self.log[codes] = np.arange(Q - 1, dtype=np.int64)
        self.digits = vf.from_codes(np.arange(Q, dtype=np.int64)).astype(np.int16)
        chi = np.zeros(Q, dtype=np.int8)
        chi[codes[0::2]] = 1
        chi[codes[1::2]] = -1
        self.chi = chi


def _find_generator(vf: VField) -> np.ndarray:
    Q = vf.q
    factors = []
    n = Q - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    one = vf.int_digits(1)
    for code in range(2, Q):
        cand = vf.from_codes(np.array(code))
        if all(not np.array_equal(vf.pow_small(cand, (Q - 1) // ell), one)
               for ell in factors):
            return cand
    raise RuntimeError("no multiplicative generator found")  # unreachable


def tables_for(ctx: FieldCtx) -> FieldTables:
    t = _tables_cache.get(ctx.key())
    if t is None:
        t = FieldTables(ctx)
        _tables_cache[ctx.key()] = t
    return t


def _poly_codes_on_chunk(tab: FieldTables, f: Poly, lo: int, hi: int) -> np.ndarray:
    """Codes of f(x) for x with codes in [lo, hi), lo >= 1."""
    Q = tab.Q
    vf = tab.vf
    logs = tab.log[lo:hi]
    acc = np.zeros((hi - lo, vf.k), dtype=np.int64)
    for j, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        if j == 0:
            acc += vf.scalar_digits(c)
        else:
            idx = (j * logs + int(tab.log[c.code])) % (Q - 1)
            acc += tab.digits[tab.exp[idx]]
    acc %= vf.p
    return vf.to_codes(acc)


def chi_sum_poly(f: Poly, chunk: int = 1 << 20) -> int:
    """sum_x chi(f(x)) over every x in f's field."""
    tab = tables_for(f.ctx)
    from .zeta import chi as chi_scalar
    total = int(chi_scalar(f.coefficient(0)))
    for lo in range(1, tab.Q, chunk):
        hi = min(lo + chunk, tab.Q)
        codes = _poly_codes_on_chunk(tab, f, lo, hi)
        total += int(tab.chi[codes].sum())
    return total


def fiber_affine_sum(f1: Poly, f2: Poly, chunk: int = 1 << 20) -> int:
    """sum_x (1 + chi(f1(x)))(1 + chi(f2(x))) over every x in the field."""
    tab = tables_for(f1.ctx)
    from .zeta import chi as chi_scalar
    total = (1 + chi_scalar(f1.coefficient(0))) * (1 + chi_scalar(f2.coefficient(0)))
    for lo in range(1, tab.Q, chunk):
        hi = min(lo + chunk, tab.Q)
        s1 = 1 + tab.chi[_poly_codes_on_chunk(tab, f1, lo, hi)].astype(np.int64)
        s2 = 1 + tab.chi[_poly_codes_on_chunk(tab, f2, lo, hi)].astype(np.int64)
        total += int((s1 * s2).sum())
    return total


# ---------------------------------------------------------------------------
# vectorized polynomial pipelines for the census sweeps


def poly_from_roots(vf: VField, roots: list) -> list:
    """Monic coefficient arrays (constant first) of prod (x - r)."""
    shape = np.broadcast_shapes(*(np.shape(r)[:-1] for r in roots)) if roots else ()
    one = np.broadcast_to(vf.int_digits(1), shape + (vf.k,))
    coeffs = [one]
    for r in roots:
        nr = vf.neg(np.broadcast_to(r, shape + (vf.k,)))
        nxt = [vf.mul(coeffs[0], nr)]
        for i in range(1, len(coeffs)):
            nxt.append(vf.add(coeffs[i - 1], vf.mul(coeffs[i], nr)))
        nxt.append(one)
        coeffs = nxt
    return coeffs


def poly_mul_trunc(vf: VField, a: list, b: list, trunc: int) -> list:
    n = min(len(a) + len(b) - 1, trunc + 1)
    shape = np.broadcast_shapes(a[0].shape[:-1], b[0].shape[:-1])
    out = [np.zeros(shape + (vf.k,), dtype=np.int64) for _ in range(n)]
    for i, ai in enumerate(a):
        if i >= n:
            break
        for j, bj in enumerate(b):
            t = i + j
            if t >= n:
                break
            out[t] = vf.add(out[t], vf.mul(ai, bj))
    return out


def poly_pow_trunc(vf: VField, coeffs: list, e: int, trunc: int) -> list:
    result = [np.broadcast_to(vf.int_digits(1), coeffs[0].shape)]
    base = coeffs
    while e > 0:
        if e & 1:
            result = poly_mul_trunc(vf, result, base, trunc)
        e >>= 1
        if e:
            base = poly_mul_trunc(vf, base, base, trunc)
    return result


def _coeff(coeffs: list, i: int, vf: VField):
    if 0 <= i < len(coeffs):
        return coeffs[i]
    return np.broadcast_to(vf.int_digits(0), coeffs[0].shape)


def _half_power_coeffs(vf: VField, roots: list, trunc: int) -> list:
    f = poly_from_roots(vf, roots)
    return poly_pow_trunc(vf, f, (vf.p - 1) // 2, trunc)


def _rank2(vf: VField, n11, n12, n21, n22) -> np.ndarray:
    det = vf.sub(vf.mul(n11, n22), vf.mul(n12, n21))
    nonzero_any = ~(vf.iszero(n11) & vf.iszero(n12) & vf.iszero(n21) & vf.iszero(n22))
    rank = np.where(~vf.iszero(det), 2, np.where(nonzero_any, 1, 0))
    return rank.astype(np.int8)


def _mat_mul3(vf: VField, A, B):
    return [[_dot3(vf, A, B, i, j) for j in range(3)] for i in range(3)]


def _dot3(vf: VField, A, B, i, j):
    acc = vf.mul(A[i][0], B[0][j])
    acc = vf.add(acc, vf.mul(A[i][1], B[1][j]))
    return vf.add(acc, vf.mul(A[i][2], B[2][j]))


def _rank3(vf: VField, m) -> np.ndarray:
    def mul(a, b):
        return vf.mul(a, b)

    def minor(i0, i1, j0, j1):
        return vf.sub(mul(m[i0][j0], m[i1][j1]), mul(m[i0][j1], m[i1][j0]))

    m00, m01, m02 = minor(1, 2, 1, 2), minor(1, 2, 0, 2), minor(1, 2, 0, 1)
    det = vf.sub(vf.add(mul(m[0][0], m00), mul(m[0][2], m02)), mul(m[0][1], m01))
    minors_nonzero = ~vf.iszero(m00) | ~vf.iszero(m01) | ~vf.iszero(m02)
    for (i0, i1) in ((0, 1), (0, 2)):
        for (j0, j1) in ((0, 1), (0, 2), (1, 2)):
            minors_nonzero |= ~vf.iszero(minor(i0, i1, j0, j1))
    entries_nonzero = np.zeros(minors_nonzero.shape, dtype=bool)
    for i in range(3):
        for j in range(3):
            entries_nonzero |= ~vf.iszero(m[i][j])
    rank = np.where(~vf.iszero(det), 3,
                    np.where(minors_nonzero, 2, np.where(entries_nonzero, 1, 0)))
    return rank.astype(np.int8)


def _genus2_prank(vf: VField, roots: list) -> np.ndarray:
    """p-rank array of y^2 = prod (x - r) with 5 or 6 roots (genus 2)."""
    p = vf.p
    h = _half_power_coeffs(vf, roots, 2 * p - 1)
    a = _coeff(h, p - 1, vf)
    b = _coeff(h, p - 2, vf)
    c = _coeff(h, 2 * p - 1, vf)
    d = _coeff(h, 2 * p - 2, vf)
    at, bt, ct, dt = vf.frob(a), vf.frob(b), vf.frob(c), vf.frob(d)
    n11 = vf.add(vf.mul(at, a), vf.mul(bt, c))
    n12 = vf.add(vf.mul(at, b), vf.mul(bt, d))
    n21 = vf.add(vf.mul(ct, a), vf.mul(dt, c))
    n22 = vf.add(vf.mul(ct, b), vf.mul(dt, d))
    return _rank2(vf, n11, n12, n21, n22)


def _elliptic_prank(vf: VField, roots: list) -> np.ndarray:
    """0/1 array: Hasse invariant nonzero for y^2 = prod (x - r), 3 or 4 roots."""
    p = vf.p
    h = _half_power_coeffs(vf, roots, p - 1)
    return (~vf.iszero(_coeff(h, p - 1, vf))).astype(np.int8)


def _deuring_ints(p: int) -> list[int]:
    from math import comb
    m = (p - 1) // 2
    return [comb(m, i) ** 2 % p for i in range(m + 1)]


def _elliptic_prank_cross_ratio(vf: VField, pts: list) -> np.ndarray:
    """0/1 array for the elliptic curve branched at 4 points (INF allowed as
    the marker None): ordinary iff the Legendre parameter, a cross-ratio of
    the branch points, misses the supersingular locus.

    The supersingular parameter set is stable under the six cross-ratio
    reorderings, so any fixed ordering decides correctly; the homogenized
    evaluation sum_i h_i num^i den^{m-i} avoids division."""
    p = vf.p
    inf_at = next((i for i, pt in enumerate(pts) if pt is None), None)
    # factor pairs of the cross-ratio ((P3-P1)(P4-P2)) / ((P3-P2)(P4-P1));
    # an infinite point knocks out one factor upstairs and one downstairs
    def diff(i, j):
        return None if inf_at in (i, j) else vf.sub(pts[i], pts[j])

    def prod2(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return vf.mul(a, b)

    num = prod2(diff(2, 0), diff(3, 1))
    den = prod2(diff(2, 1), diff(3, 0))
    h = _deuring_ints(p)
    m = len(h) - 1
    # Horner: acc_m = h_m; acc_{i} = acc_{i+1} * num + h_i * den^{m-i}
    acc = np.broadcast_to(vf.int_digits(h[m]), num.shape).copy()
    den_pow = den
    for i in range(m - 1, -1, -1):
        term = den_pow if h[i] == 1 else vf.mul(den_pow, vf.int_digits(h[i]))
        acc = vf.add(vf.mul(acc, num), term)
        if i > 0:
            den_pow = vf.mul(den_pow, den)
    return (~vf.iszero(acc)).astype(np.int8)


def _genus3_prank(vf: VField, roots: list) -> np.ndarray:
    """p-rank array of y^2 = prod (x - r) with 7 or 8 roots (genus 3)."""
    p = vf.p
    h = _half_power_coeffs(vf, roots, 3 * p - 1)
    M = [[_coeff(h, i * p - j, vf) for j in (1, 2, 3)] for i in (1, 2, 3)]
    M1 = [[vf.frob(e) for e in row] for row in M]
    M2 = [[vf.frob(e) for e in row] for row in M1]
    prod = _mat_mul3(vf, M2, _mat_mul3(vf, M1, M))
    return _rank3(vf, prod)


# label indices: genus 2 sweeps use (0, 1, lam, t1, t2, INF)
G2_LABELS = ("0", "1", "L", "T1", "T2", "INF")
G2_TWO_PARTS = tuple(combinations(range(6), 2))
G2_LEGENDRE_COVER = G2_TWO_PARTS.index((3, 4))  # 2-part {t1, t2}

# genus 3 sweeps use (0, 1, b1..b5, INF); partitions stored as frozen 2-part
# or first 4-part, complement implied
G3_LABELS = ("0", "1", "B1", "B2", "B3", "B4", "B5", "INF")
G3_PARTS: tuple[tuple[int, ...], ...] = tuple(
    [part for part in combinations(range(8), 2)]
    + [part for part in combinations(range(8), 4) if 0 in part])
# 28 two-element parts + 35 four-element parts containing the label 0


def _g2_points(vf: VField, lam, t1, t2) -> list:
    shape = np.broadcast_shapes(np.shape(lam)[:-1], np.shape(t1)[:-1],
                                np.shape(t2)[:-1])
    k = vf.k
    return [np.broadcast_to(vf.int_digits(0), shape + (k,)),
            np.broadcast_to(vf.int_digits(1), shape + (k,)),
            np.broadcast_to(lam, shape + (k,)),
            np.broadcast_to(t1, shape + (k,)),
            np.broadcast_to(t2, shape + (k,))]


def genus2_f(vf: VField, lam, t1, t2) -> np.ndarray:
    """Base-curve p-rank array for y^2 = x(x-1)(x-lam)(x-t1)(x-t2)."""
    return _genus2_prank(vf, _g2_points(vf, lam, t1, t2))


def genus2_covers(vf: VField, lam, t1, t2) -> np.ndarray:
    """Prym p-ranks stacked over the 15 covers in G2_TWO_PARTS order."""
    pts = _g2_points(vf, lam, t1, t2)
    shape = pts[0].shape[:-1]
    fprime = np.empty((len(G2_TWO_PARTS),) + shape, dtype=np.int8)
    for idx, two_part in enumerate(G2_TWO_PARTS):
        four_part = [i for i in range(6) if i not in two_part]
        pts4 = [pts[i] if i != 5 else None for i in four_part]
        fprime[idx] = _elliptic_prank_cross_ratio(vf, pts4)
    return fprime


def genus2_pranks(vf: VField, lam, t1, t2) -> tuple[np.ndarray, np.ndarray]:
    """(f, fprime) for the curves y^2 = x(x-1)(x-lam)(x-t1)(x-t2).

    f has the grid shape; fprime is stacked over the 15 covers in
    G2_TWO_PARTS order, each entry the Prym p-rank (0 or 1 here: the
    complementary quotient of a 2-part is elliptic, the 2-part itself
    rational)."""
    return (genus2_f(vf, lam, t1, t2), genus2_covers(vf, lam, t1, t2))


def _g3_points(vf: VField, bs: list) -> list:
    shape = np.broadcast_shapes(*(np.shape(b)[:-1] for b in bs))
    k = vf.k
    return [np.broadcast_to(vf.int_digits(0), shape + (k,)),
            np.broadcast_to(vf.int_digits(1), shape + (k,))] + \
           [np.broadcast_to(b, shape + (k,)) for b in bs]


def genus3_f(vf: VField, bs: list) -> np.ndarray:
    """Base-curve p-rank array for y^2 = x(x-1) prod (x-b_i)."""
    return _genus3_prank(vf, _g3_points(vf, bs))


def genus3_covers(vf: VField, bs: list) -> np.ndarray:
    """Prym p-ranks stacked over the 63 covers in G3_PARTS order."""
    pts = _g3_points(vf, bs)
    shape = pts[0].shape[:-1]
    fprime = np.empty((len(G3_PARTS),) + shape, dtype=np.int8)
    for idx, part in enumerate(G3_PARTS):
        comp = [i for i in range(8) if i not in part]
        if len(part) == 2:
            roots = [pts[i] for i in comp if i != 7]
            fprime[idx] = _genus2_prank(vf, roots)
        else:
            pts_a = [pts[i] if i != 7 else None for i in part]
            pts_b = [pts[i] if i != 7 else None for i in comp]
            fprime[idx] = (_elliptic_prank_cross_ratio(vf, pts_a)
                           + _elliptic_prank_cross_ratio(vf, pts_b))
    return fprime


def genus3_pranks(vf: VField, bs: list) -> tuple[np.ndarray, np.ndarray]:
    """(f, fprime) for y^2 = x(x-1) prod (x-b_i); covers in G3_PARTS order."""
    return (genus3_f(vf, bs), genus3_covers(vf, bs))
