"""Arithmetic in GF(p^s).

Elements are integers in ``[0, q)``. The base-p digits of an element are the
coefficients of its polynomial-basis representation, constant term first, so
``a = sum(c_i * p**i)`` stands for ``sum(c_i * x**i)`` modulo ``irr``.

All operations accept Python ints or integer numpy arrays and broadcast.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

MAX_ORDER = 1 << 16

# Conway polynomials, coefficients constant term first.
CONWAY = {
    (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1), (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1), (7, 4): (3, 4, 5, 0, 1),
    (11, 2): (2, 7, 1), (11, 3): (9, 2, 0, 1), (11, 4): (2, 10, 8, 0, 1),
}


def _out(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class NotCoprime(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- small helpers on coefficient lists over GF(p), used only at construction


def _polymod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    while len(a) >= len(m):
        c = a[-1]
        if c:
            shift = len(a) - len(m)
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    return a


def _divides(d: tuple[int, ...], a: tuple[int, ...], p: int) -> bool:
    return not any(_polymod(list(a), d, p))


def is_irreducible(irr: tuple[int, ...], p: int) -> bool:
    """Monic ``irr`` of degree s has no monic factor of degree <= s//2."""
    s = len(irr) - 1
    if s < 1 or irr[-1] != 1:
        return False
    for d in range(1, s // 2 + 1):
        for idx in range(p**d):
            cand = tuple((idx // p**i) % p for i in range(d)) + (1,)
            if _divides(cand, irr, p):
                return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    for idx in range(p**s):
        low = [(idx // p**i) % p for i in range(s)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible of degree {s} over GF({p})")


@dataclass(frozen=True, eq=False)
class Field:
    """Immutable arithmetic context for GF(p^s)."""

    p: int
    s: int
    irr: tuple[int, ...]
    conway: bool = False
    q: int = field(init=False)
    prim: int = field(init=False)
    exp: np.ndarray = field(init=False, repr=False)
    log: np.ndarray = field(init=False, repr=False)
    _inv: np.ndarray = field(init=False, repr=False)
    _digits: np.ndarray = field(init=False, repr=False)
    _add: np.ndarray | None = field(init=False, repr=False)

    def __post_init__(self):
        p, s = self.p, self.s
        q = p**s
        object.__setattr__(self, "q", q)
        pw = p ** np.arange(s, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // pw) % p
        object.__setattr__(self, "_digits", digits)
        if s > 1 and q <= 1024:
            a = np.arange(q)
            add = ((digits[a][:, None, :] + digits[a][None, :, :]) % p) @ pw
            object.__setattr__(self, "_add", add.astype(np.int64))
        else:
            object.__setattr__(self, "_add", None)
        prim = self._find_primitive()
        object.__setattr__(self, "prim", prim)
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, prim)
        exp[q - 1 :] = exp[: q - 1]
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]
        object.__setattr__(self, "_inv", inv)
        for arr in (exp, log, inv, digits):
            arr.setflags(write=False)

    # -- construction helpers

    def _slow_mul(self, a: int, b: int) -> int:
        p, s = self.p, self.s
        if s == 1:
            return (a * b) % p
        da = [(a // p**i) % p for i in range(s)]
        db = [(b // p**i) % p for i in range(s)]
        prod = [0] * (2 * s - 1)
        for i, u in enumerate(da):
            if u:
                for j, v in enumerate(db):
                    prod[i + j] = (prod[i + j] + u * v) % p
        r = _polymod(prod, self.irr, p)
        return sum(c * p**i for i, c in enumerate(r))

    def _find_primitive(self) -> int:
        q = self.q
        fac = prime_factors(q - 1)
        for g in range(1, q):
            if q == 2:
                return 1
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in fac):
                return g
        raise FieldError("no primitive element")  # unreachable for a field

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    # -- descriptors

    @property
    def is_prime(self) -> bool:
        return self.s == 1

    @property
    def descriptor(self) -> str:
        return f"gf({self.p}^{self.s}):irr=[{','.join(map(str, self.irr))}]"

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.s, self.irr) == (other.p, other.s, other.irr)

    def __hash__(self):
        return hash((self.p, self.s, self.irr))

    # -- vectorized arithmetic

    def add(self, a, b):
        if self.s == 1:
            return _out((np.asarray(a) + b) % self.p)
        if self._add is not None:
            return _out(self._add[a, b])
        if self.p == 2:
            return _out(np.bitwise_xor(a, b))
        pw = self.p ** np.arange(self.s, dtype=np.int64)
        return _out(((self._digits[a] + self._digits[b]) % self.p) @ pw)

    def neg(self, a):
        if self.s == 1:
            return _out((-np.asarray(a)) % self.p)
        pw = self.p ** np.arange(self.s, dtype=np.int64)
        return _out(((-self._digits[a]) % self.p) @ pw)

    def sub(self, a, b):
        if self.s == 1:
            return _out((np.asarray(a) - b) % self.p)
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.s == 1:
            return _out((np.asarray(a) * b) % self.p)
        a, b = np.asarray(a), np.asarray(b)
        r = self.exp[self.log[a] + self.log[b]]
        return _out(np.where((a == 0) | (b == 0), 0, r))

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("inverse of 0")
        return _out(self._inv[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a)
        if e == 0:
            return _out(np.ones_like(a))
        if e < 0 and np.any(a == 0):
            raise DivisionByZero("negative power of 0")
        r = self.exp[(self.log[a] * e) % (self.q - 1)]
        return _out(np.where(a == 0, 0, r))

    def trace(self, a):
        """Tr(a) = a + a^p + ... + a^(p^(s-1)), an element of GF(p)."""
        acc = np.zeros_like(np.asarray(a))
        x = np.asarray(a)
        for _ in range(self.s):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        return _out(acc)

    def element(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    def random(self, shape, rng: np.random.Generator, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=shape, dtype=np.int64)

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        return (self.q - 1) // gcd(int(self.log[a]), self.q - 1)


@lru_cache(maxsize=None)
def _cached_field(p: int, s: int, irr: tuple[int, ...], conway: bool) -> Field:
    return Field(p, s, irr, conway)


def field_new(p: int, s: int = 1, irr=None) -> Field:
    """Return GF(p^s), using the Conway polynomial when one is tabulated."""
    if not is_prime(p):
        raise NotPrime(p)
    if s < 1:
        raise FieldError("extension degree must be positive")
    if p**s > MAX_ORDER:
        raise FieldTooLarge(f"{p}^{s} exceeds {MAX_ORDER}")
    if irr is not None:
        irr = tuple(int(c) % p for c in irr)
        if s == 1 and irr == (0, 1):
            return _cached_field(p, 1, irr, False)
        if len(irr) != s + 1 or not is_irreducible(irr, p):
            raise FieldError(f"{irr} is not a monic irreducible of degree {s}")
        return _cached_field(p, s, irr, CONWAY.get((p, s)) == irr)
    if s == 1:
        return _cached_field(p, 1, (0, 1), False)
    if (p, s) in CONWAY:
        return _cached_field(p, s, CONWAY[(p, s)], True)
    return _cached_field(p, s, smallest_irreducible(p, s), False)


def GF(q: int) -> Field:
    """Shorthand: field of order q with the default polynomial."""
    for p in prime_factors(q)[:1]:
        s = 0
        n = q
        while n % p == 0:
            n //= p
            s += 1
        if n == 1:
            return field_new(p, s)
    raise NotPrime(q)


_DESC = re.compile(r"^gf\((\d+)\^(\d+)\)(?::irr=\[([\d,\s]*)\])?$")


def parse_field(text) -> Field:
    """Inverse of ``Field.descriptor``; also accepts a bare order like ``"9"``."""
    if isinstance(text, Field):
        return text
    t = str(text).strip().lower().replace(" ", "")
    if t.isdigit():
        return GF(int(t))
    m = re.match(r"^gf\((\d+)\)$", t)
    if m:
        return GF(int(m.group(1)))
    m = _DESC.match(t)
    if not m:
        raise FieldError(f"bad field descriptor {text!r}")
    p, s = int(m.group(1)), int(m.group(2))
    irr = None
    if m.group(3):
        irr = [int(c) for c in m.group(3).split(",") if c != ""]
    return field_new(p, s, irr)


@dataclass(frozen=True)
class RootOfUnity:
    m: int
    beta: int
    field: Field


def root_of_unity(F: Field, n: int) -> RootOfUnity:
    """Primitive n-th root of unity beta = w^((q^m - 1)/n) in GF(q^m), m minimal."""
    if n < 1:
        raise FieldError("n must be positive")
    if gcd(n, F.q) != 1:
        raise NotCoprime(f"gcd({n}, {F.q}) != 1")
    m = 1
    while (F.q**m - 1) % n:
        m += 1
    if F.q**m > MAX_ORDER:
        raise FieldTooLarge(f"GF({F.q}^{m}) exceeds {MAX_ORDER}")
    E = field_new(F.p, F.s * m)
    beta = int(E.exp[(E.q - 1) // n]) if n > 1 else 1
    return RootOfUnity(m, beta, E)


def embedding(F: Field, E: Field) -> np.ndarray:
    """Lookup table of an embedding GF(q) -> GF(q^t) (image of each element)."""
    if F.p != E.p or E.s % F.s:
        raise FieldError(f"{F!r} is not a subfield of {E!r}")
    if F.s == 1:
        return np.arange(F.p, dtype=np.int64)
    # a root of F.irr inside E fixes the image of x
    coeffs = np.array(F.irr, dtype=np.int64)
    root = None
    for r in range(E.q):
        acc = 0
        for c in coeffs[::-1]:
            acc = E.add(E.mul(acc, r), int(c))
        if acc == 0:
            root = r
            break
    assert root is not None
    table = np.zeros(F.q, dtype=np.int64)
    powers = [E.pow(root, i) if root else (1 if i == 0 else 0) for i in range(F.s)]
    for a in range(F.q):
        acc = 0
        for i in range(F.s):
            d = (a // F.p**i) % F.p
            acc = E.add(acc, E.mul(d, powers[i]))
        table[a] = acc
    return table
