"""Exact arithmetic in F_p and its extensions F_{p^k}, p an odd prime.

Elements are residue vectors modulo a monic irreducible polynomial; all
coefficient arithmetic stays in Python ints (p < 2^16, so every product
fits comfortably in 64 bits).  Contexts are immutable and hashable;
elements of different contexts never mix silently.
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator, Optional

MAX_PRIME = 1 << 16
MAX_DEGREE = 12
DEFAULT_ENUM_CAP = 1 << 22


class ContextMismatch(ValueError):
    """Raised when elements from different field contexts are combined."""


class CapExceeded(RuntimeError):
    """Raised when an enumeration or counting cap would be exceeded."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# int-list polynomial helpers over F_p (used for modulus bookkeeping only;
# coefficient lists are little-endian: index i holds the x^i coefficient)

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _ptrim(a)
        if len(a) - 1 < dm:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[i + shift] = (a[i + shift] - coef * mi) % p
        a = _ptrim(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e > 0:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pext_inverse(a: list[int], m: list[int], p: int) -> list[int]:
    # extended Euclid in F_p[x]: returns a^{-1} mod m
    r0, r1 = list(m), _pmod(a, m, p)
    t0, t1 = [], [1]
    while r1:
        # divide r0 by r1
        q = []
        r = list(r0)
        dm = len(r1) - 1
        inv_lead = pow(r1[-1], p - 2, p)
        while len(r) - 1 >= dm and r:
            coef = r[-1] * inv_lead % p
            shift = len(r) - 1 - dm
            qq = [0] * (shift + 1)
            qq[shift] = coef
            q = _ptrim([(qa + qb) % p for qa, qb in
                        zip(q + [0] * (len(qq) - len(q)), qq + [0] * (len(q) - len(qq)))])
            for i, mi in enumerate(r1):
                r[i + shift] = (r[i + shift] - coef * mi) % p
            r = _ptrim(r)
        r0, r1 = r1, r
        prod = _pmul(q, t1, p)
        t_next = _ptrim([(x - y) % p for x, y in
                         zip(t0 + [0] * max(0, len(prod) - len(t0)),
                             prod + [0] * max(0, len(t0) - len(prod)))])
        t0, t1 = t1, t_next
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible")
    inv_lead = pow(r0[0], p - 2, p)
    return [c * inv_lead % p for c in t0]


def _is_irreducible(m: list[int], p: int) -> bool:
    """Rabin test: m (monic, degree k) is irreducible over F_p iff
    x^{p^k} = x mod m and gcd(x^{p^{k/l}} - x, m) = 1 for every prime l | k."""
    k = len(m) - 1
    if k < 1:
        return False
    x = [0, 1]
    # t_i = x^{p^i} mod m, stepping by p-th powers
    t = list(x)
    powers = []
    for _ in range(k):
        t = _ppowmod(t, p, m, p)
        powers.append(list(t))
    if _ptrim([(a - b) % p for a, b in
               zip(powers[-1] + [0, 0], x + [0] * len(powers[-1]))]):
        return False
    for ell in _prime_divisors(k):
        d = k // ell
        diff = [(a - b) % p for a, b in
                zip(powers[d - 1] + [0, 0], x + [0] * len(powers[d - 1]))]
        diff = _ptrim(diff)
        g = _pgcd(m, diff, p) if diff else list(m)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


class FieldCtx:
    """Immutable description of F_{p^k}: prime, degree, and monic modulus.

    The modulus is stored constant-term first; for k = 1 it is the
    polynomial x, by convention.  Contexts compare and hash structurally.
    """

    __slots__ = ("p", "k", "modulus", "_frob_rows", "_red_rows", "_embed_cache")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self._frob_rows: Optional[list[tuple[int, ...]]] = None
        self._red_rows: Optional[list[tuple[int, ...]]] = None
        self._embed_cache: dict = {}

    @property
    def q(self) -> int:
        return self.p ** self.k

    def key(self) -> tuple:
        return (self.p, self.k, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, mod={list(self.modulus)})"

    # -- element constructors ------------------------------------------------

    def element(self, coeffs: Iterable[int]) -> "FieldElement":
        cs = tuple(c % self.p for c in coeffs)
        if len(cs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(cs)}")
        return FieldElement(cs, self)

    def scalar(self, n: int) -> "FieldElement":
        return FieldElement((n % self.p,) + (0,) * (self.k - 1), self)

    def zero(self) -> "FieldElement":
        return self.scalar(0)

    def one(self) -> "FieldElement":
        return self.scalar(1)

    def gen(self) -> "FieldElement":
        """The residue class of x (a root of the modulus); equals 1*x for k>1."""
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return FieldElement((0, 1) + (0,) * (self.k - 2), self)

    def from_code(self, code: int) -> "FieldElement":
        cs = []
        for _ in range(self.k):
            cs.append(code % self.p)
            code //= self.p
        return FieldElement(tuple(cs), self)

    # -- lazy tables ----------------------------------------------------------

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        # row j = coefficient vector of x^{k+j} mod modulus, j = 0..k-2
        if self._red_rows is None:
            rows = []
            cur = [(-c) % self.p for c in self.modulus[:-1]]  # x^k mod m
            rows.append(tuple(cur))
            for _ in range(self.k - 2):
                nxt = [0] + cur[:-1]
                lead = cur[-1]
                if lead:
                    for i in range(self.k):
                        nxt[i] = (nxt[i] - lead * self.modulus[i]) % self.p
                nxt = [c % self.p for c in nxt]
                rows.append(tuple(nxt))
                cur = nxt
            self._red_rows = rows
        return self._red_rows

    def _frobenius_rows(self) -> list[tuple[int, ...]]:
        if self._frob_rows is None:
            rows = [(1,) + (0,) * (self.k - 1)]
            xp = _ppowmod([0, 1], self.p, list(self.modulus), self.p)
            cur = [1]
            for _ in range(1, self.k):
                cur = _pmod(_pmul(cur, xp, self.p), list(self.modulus), self.p)
                rows.append(tuple(cur + [0] * (self.k - len(cur))))
            self._frob_rows = rows
        return self._frob_rows


class FieldElement:
    """Element of F_{p^k} as a length-k residue vector over its context."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: tuple[int, ...], ctx: FieldCtx):
        self.coeffs = coeffs
        self.ctx = ctx

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def code(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.ctx.p + c
        return n

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement)
                and self.ctx == other.ctx and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.coeffs, self.ctx.key()))

    def __repr__(self) -> str:
        return f"<{','.join(map(str, self.coeffs))}>"

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or self.ctx != other.ctx:
            raise ContextMismatch(f"cannot combine {self!r} with {other!r}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.ctx.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
                            self.ctx)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.ctx.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)),
                            self.ctx)

    def __neg__(self) -> "FieldElement":
        p = self.ctx.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.ctx)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        if k == 1:
            return FieldElement((self.coeffs[0] * other.coeffs[0] % p,), ctx)
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * k - 1)
        for i in range(k):
            ai = a[i]
            if ai:
                for j in range(k):
                    conv[i + j] += ai * b[j]
        out = [c % p for c in conv[:k]]
        rows = ctx._reduction_rows()
        for j in range(k - 1):
            hi = conv[k + j] % p
            if hi:
                row = rows[j]
                for i in range(k):
                    out[i] = (out[i] + hi * row[i]) % p
        return FieldElement(tuple(out), ctx)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement((pow(self.coeffs[0], ctx.p - 2, ctx.p),), ctx)
        inv = _pext_inverse(_ptrim(list(self.coeffs)), list(ctx.modulus), ctx.p)
        return FieldElement(tuple(inv + [0] * (ctx.k - len(inv))), ctx)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            if self.is_zero():
                raise ValueError("0^0 is undefined")
            return self.ctx.one()
        result = self.ctx.one()
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        """Return self^p via the precomputed linear action on the basis."""
        ctx = self.ctx
        if ctx.k == 1:
            return self
        rows = ctx._frobenius_rows()
        p, k = ctx.p, ctx.k
        out = [0] * k
        for i, ci in enumerate(self.coeffs):
            if ci:
                row = rows[i]
                for j in range(k):
                    out[j] = (out[j] + ci * row[j]) % p
        return FieldElement(tuple(out), ctx)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Binary field arithmetic by operation name: add | sub | mul | div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(e: FieldElement) -> FieldElement:
    return e.frobenius()


# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, k: int) -> tuple[int, ...]:
    # first monic irreducible of degree k, scanning the lower coefficients
    # (c_0, ..., c_{k-1}) in ascending code order (c_0 least significant)
    for code in range(p ** k):
        cs, n = [], code
        for _ in range(k):
            cs.append(n % p)
            n //= p
        m = cs + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


@functools.lru_cache(maxsize=None)
def _cached_ctx(p: int, k: int, modulus: tuple[int, ...]) -> FieldCtx:
    return FieldCtx(p, k, modulus)


def build_field(p: int, k: int = 1, modulus: Optional[Iterable[int]] = None) -> FieldCtx:
    """Construct F_{p^k}.

    p must be an odd prime below 2^16, 1 <= k <= 12.  When modulus is
    omitted, the deterministically first monic irreducible of degree k is
    chosen, so repeated runs agree.  A user modulus must be monic of
    degree k and irreducible; k = 1 always uses the polynomial x.
    """
    if p % 2 == 0:
        raise ValueError(f"p = {p} is even; only odd characteristic is supported")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p >= MAX_PRIME:
        raise ValueError(f"p = {p} exceeds the {MAX_PRIME} prime bound")
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"extension degree k = {k} outside [1, {MAX_DEGREE}]")
    if k == 1:
        mod = (0, 1)
        if modulus is not None:
            got = tuple(c % p for c in modulus)
            if got != mod:
                raise ValueError("prime fields use the modulus x")
        return _cached_ctx(p, 1, mod)
    if modulus is None:
        mod = _default_modulus(p, k)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(list(mod), p):
            raise ValueError(f"modulus {list(mod)} is reducible over F_{p}")
    return _cached_ctx(p, k, mod)


def enumerate_field(ctx: FieldCtx, cap: int = DEFAULT_ENUM_CAP) -> Iterator[FieldElement]:
    """Yield every element of the field once, in ascending code order."""
    q = ctx.q
    if q > cap:
        raise CapExceeded(f"field size {q} exceeds enumeration cap {cap}")
    p, k = ctx.p, ctx.k
    coeffs = [0] * k
    for _ in range(q):
        yield FieldElement(tuple(coeffs), ctx)
        for i in range(k):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0


# ---------------------------------------------------------------------------
# embeddings between a field and an extension of it


def _embedding_root(small: FieldCtx, big: FieldCtx) -> FieldElement:
    """Image in `big` of small's generator: a deterministic root of small's
    modulus over `big`.  Found by gcd splitting, so large targets stay cheap."""
    key = big.key()
    cached = small._embed_cache.get(key)
    if cached is not None:
        return cached
    if small.p != big.p or big.k % small.k != 0:
        raise ContextMismatch(f"{big!r} does not extend {small!r}")
    if small.k == 1:
        root = big.one()
        small._embed_cache[key] = root
        return root
    from .poly import Poly  # local import; poly depends on gf

    mod_lifted = Poly(big, [big.scalar(c) for c in small.modulus])
    f = mod_lifted
    shift = 0
    while f.degree() > 1:
        # split f with gcd(f, (x + s)^{(Q-1)/2} - 1); shifts s scan the big
        # field in code order (prime-field shifts cannot separate conjugates)
        if shift >= big.q:
            raise RuntimeError("embedding root search failed to split")
        base = Poly(big, [big.from_code(shift), big.one()])
        power = base.powmod((big.q - 1) // 2, f)
        cand = power - Poly.one(big)
        g = cand.gcd(f) if cand.degree() >= 0 else f
        shift += 1
        if g.degree() < 1 or g.degree() == f.degree():
            continue
        other = f // g
        pick, alt = (g, other) if g.degree() <= other.degree() else (other, g)
        if pick.degree() == alt.degree() and alt.coeff_tuple() < pick.coeff_tuple():
            pick = alt
        f = pick.monic()
    root = -f.coefficient(0) / f.coefficient(1)
    small._embed_cache[key] = root
    return root


def embed(e: FieldElement, big: FieldCtx) -> FieldElement:
    """Map e into an extension field along the deterministic embedding."""
    if e.ctx == big:
        return e
    root = _embedding_root(e.ctx, big)
    acc = big.zero()
    power = big.one()
    for c in e.coeffs:
        if c:
            acc = acc + big.scalar(c) * power
        power = power * root
    return acc


# ---------------------------------------------------------------------------
# text encodings: elements as "c0,c1,...", field specs as "p=5,k=2,mod=2,4,1"


def element_str(e: FieldElement) -> str:
    return ",".join(str(c) for c in e.coeffs)


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    try:
        coeffs = [int(t) for t in text.strip().split(",")]
    except ValueError as exc:
        raise ValueError(f"bad element encoding {text!r}") from exc
    if len(coeffs) == 1 and ctx.k > 1:
        coeffs = coeffs + [0] * (ctx.k - 1)
    if len(coeffs) != ctx.k:
        raise ValueError(f"element {text!r} needs {ctx.k} coefficients")
    return ctx.element(coeffs)


def field_spec_str(ctx: FieldCtx) -> str:
    return f"p={ctx.p},k={ctx.k},mod=" + ",".join(str(c) for c in ctx.modulus)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse "p=5,k=2,mod=2,4,1" (mod constant-to-leading, optional)."""
    parts = [t.strip() for t in text.strip().split(",")]
    p = k = None
    mod: Optional[list[int]] = None
    i = 0
    while i < len(parts):
        part = parts[i]
        if part.startswith("p="):
            p = int(part[2:])
        elif part.startswith("k="):
            k = int(part[2:])
        elif part.startswith("mod="):
            mod = [int(part[4:])] + [int(t) for t in parts[i + 1:]]
            i = len(parts)
            break
        else:
            raise ValueError(f"unrecognized field spec token {part!r}")
        i += 1
    if p is None:
        raise ValueError(f"field spec {text!r} is missing p=")
    if k is None:
        k = 1 if mod is None else len(mod) - 1
    return build_field(p, k, mod)
