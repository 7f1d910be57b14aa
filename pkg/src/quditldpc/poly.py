"""Polynomial rings over GF(q).

Univariate polynomials are coefficient arrays, constant term first. The
bivariate group algebra F_q[x, y]/(x^l - 1, y^m - 1) is represented by
:class:`BivariatePoly`, evaluated on x = S_l (x) I_m and y = I_l (x) S_m.
A third symbol ``z`` is accepted as shorthand for ``x*y`` (= S_l (x) S_m).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

import numpy as np

from .gf import Field, NotCoprime, prime_factors


class DuplicateMonomial(ValueError):
    pass


class BothZero(ValueError):
    pass


def shift_matrix(ell: int) -> np.ndarray:
    """Cyclic shift S: row i has its 1 in column (i+1) mod ell."""
    S = np.zeros((ell, ell), dtype=np.int64)
    S[np.arange(ell), (np.arange(ell) + 1) % ell] = 1
    return S


def circulant(F: Field, coeffs) -> np.ndarray:
    """C = sum_i c_i S^i."""
    c = np.asarray(coeffs, dtype=np.int64)
    n = len(c)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return c[idx]


# --- univariate F_q[x]


def trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    return f[: nz[-1] + 1] if nz.size else f[:0]


def degree(f) -> int:
    return len(trim(f)) - 1


def poly_add(F: Field, f, g) -> np.ndarray:
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def poly_sub(F: Field, f, g) -> np.ndarray:
    return poly_add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def poly_mul(F: Field, f, g) -> np.ndarray:
    f, g = trim(f), trim(g)
    if not len(f) or not len(g):
        return np.zeros(0, dtype=np.int64)
    if F.s == 1:
        return trim(np.convolve(f, g) % F.p)
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            out[i : i + len(g)] = F.add(out[i : i + len(g)], F.mul(int(c), g))
    return trim(out)


def poly_divmod(F: Field, f, g) -> tuple[np.ndarray, np.ndarray]:
    f, g = trim(f).copy(), trim(g)
    if not len(g):
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(int(g[-1]))
    dq = len(f) - len(g)
    quot = np.zeros(max(dq + 1, 0), dtype=np.int64)
    for shift in range(dq, -1, -1):
        c = int(f[shift + len(g) - 1])
        if c:
            t = F.mul(c, lead_inv)
            quot[shift] = t
            f[shift : shift + len(g)] = F.sub(f[shift : shift + len(g)], F.mul(t, g))
    return trim(quot), trim(f)


def monic(F: Field, f) -> np.ndarray:
    f = trim(f)
    if not len(f):
        return f
    return np.asarray(F.mul(F.inv(int(f[-1])), f), dtype=np.int64).reshape(-1)


def poly_gcd(F: Field, f, g) -> np.ndarray:
    """Monic gcd in F_q[x] by Euclid."""
    a, b = trim(f), trim(g)
    if not len(a) and not len(b):
        raise BothZero("gcd(0, 0) is undefined")
    while len(b):
        a, b = b, poly_divmod(F, a, b)[1]
    return monic(F, a)


def x_power_minus_one(F: Field, n: int) -> np.ndarray:
    f = np.zeros(n + 1, dtype=np.int64)
    f[0] = F.neg(1)
    f[n] = 1
    return f


def poly_powmod(F: Field, f, e: int, mod) -> np.ndarray:
    result = np.ones(1, dtype=np.int64)
    base = poly_divmod(F, f, mod)[1]
    while e:
        if e & 1:
            result = poly_divmod(F, poly_mul(F, result, base), mod)[1]
        base = poly_divmod(F, poly_mul(F, base, base), mod)[1]
        e >>= 1
    return result


def is_primitive_poly(F: Field, f) -> bool:
    """f is primitive of degree r iff x has multiplicative order q^r - 1 mod f."""
    f = trim(f)
    r = len(f) - 1
    if r < 1 or f[0] == 0:
        return False
    N = F.q**r - 1
    x = np.array([0, 1], dtype=np.int64)
    one = np.ones(1, dtype=np.int64)
    if not np.array_equal(poly_powmod(F, x, N, f), one):
        return False
    return all(not np.array_equal(poly_powmod(F, x, N // t, f), one) for t in prime_factors(N))


def cyclic_mul(F: Field, f, g, n: int) -> np.ndarray:
    """Product in F_q[x]/(x^n - 1), returned as a length-n vector."""
    prod = poly_mul(F, f, g)
    out = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(prod):
        if c:
            out[i % n] = F.add(int(out[i % n]), int(c))
    return out


# --- bivariate group algebra

_TERM = re.compile(r"^(\d*)\*?((?:[IXYZxyz](?:\^\d+)?\*?)*)$")
_FACTOR = re.compile(r"([IXYZxyz])(?:\^(\d+))?")


@dataclass(frozen=True)
class BivariatePoly:
    """sum c * x^a y^b over (l, m); terms keep their input order."""

    ell: int
    m: int
    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b, c in self.terms:
            if not (0 <= a < self.ell and 0 <= b < self.m):
                raise ValueError(f"exponent ({a},{b}) outside ({self.ell},{self.m})")
            if c == 0:
                raise ValueError("stored terms must have nonzero coefficients")
            if (a, b) in seen:
                raise DuplicateMonomial(f"x^{a} y^{b} appears twice")
            seen.add((a, b))

    @classmethod
    def parse(cls, text: str, ell: int, m: int, F: Field) -> BivariatePoly:
        """Parse strings such as ``"2*x^3*y + y^2 + I"``.

        Integer coefficients are taken modulo p for prime fields and as
        element indices for extension fields.
        """
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        pieces = re.findall(r"([+-]?)([^+-]+)", s)
        if "".join(sg + body for sg, body in pieces) != s:
            raise ValueError(f"cannot parse {text!r}")
        terms: list[tuple[int, int, int]] = []
        for sign, body in pieces:
            mt = _TERM.match(body)
            if not mt or (not mt.group(1) and not mt.group(2)):
                raise ValueError(f"cannot parse term {body!r}")
            c = int(mt.group(1)) if mt.group(1) else 1
            if F.s == 1:
                c %= F.p
            elif not 0 <= c < F.q:
                raise ValueError(f"coefficient {c} is not an element of {F!r}")
            if sign == "-":
                c = F.neg(c)
            a = b = 0
            for sym, e in _FACTOR.findall(mt.group(2)):
                e = int(e) if e else 1
                sym = sym.lower()
                if sym == "x":
                    a += e
                elif sym == "y":
                    b += e
                elif sym == "z":
                    a += e
                    b += e
            if c == 0:
                raise ValueError(f"term {body!r} has zero coefficient in {F!r}")
            terms.append((a % ell, b % m, int(c)))
        return cls(ell, m, tuple(terms))

    def __str__(self) -> str:
        parts = []
        for a, b, c in self.terms:
            mono = []
            if a:
                mono.append("x" if a == 1 else f"x^{a}")
            if b:
                mono.append("y" if b == 1 else f"y^{b}")
            body = "*".join(mono) or "I"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts) if parts else "0"

    @property
    def weight(self) -> int:
        return len(self.terms)

    def scaled(self, F: Field, c: int) -> BivariatePoly:
        return BivariatePoly(self.ell, self.m, tuple((a, b, F.mul(c, t)) for a, b, t in self.terms))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(a, b): c for a, b, c in self.terms}

    @classmethod
    def from_dict(cls, ell: int, m: int, d: dict[tuple[int, int], int]) -> BivariatePoly:
        return cls(ell, m, tuple((a, b, c) for (a, b), c in sorted(d.items()) if c))

    def mul(self, F: Field, other: BivariatePoly) -> BivariatePoly:
        acc: dict[tuple[int, int], int] = {}
        for a1, b1, c1 in self.terms:
            for a2, b2, c2 in other.terms:
                k = ((a1 + a2) % self.ell, (b1 + b2) % self.m)
                acc[k] = F.add(acc.get(k, 0), F.mul(c1, c2))
        return BivariatePoly.from_dict(self.ell, self.m, acc)

    def transpose(self, F: Field) -> BivariatePoly:
        """The polynomial whose matrix is the transpose (x -> x^-1, y -> y^-1)."""
        return BivariatePoly(
            self.ell, self.m, tuple(((-a) % self.ell, (-b) % self.m, c) for a, b, c in self.terms)
        )


def eval_bivariate(F: Field, P: BivariatePoly) -> np.ndarray:
    """The lm x lm matrix sum c x^a y^b with x = S_l (x) I_m, y = I_l (x) S_m."""
    ell, m = P.ell, P.m
    n = ell * m
    M = np.zeros((n, n), dtype=np.int64)
    i = np.arange(ell)[:, None]
    j = np.arange(m)[None, :]
    rows = (i * m + j).ravel()
    for a, b, c in P.terms:
        cols = (((i + a) % ell) * m + (j + b) % m).ravel()
        M[rows, cols] = F.add(M[rows, cols], c)
    return M


def psi_exponents(ell: int, m: int) -> tuple[int, int]:
    """Exponents e_x, e_y with x -> z^e_x and y -> z^e_y."""
    if gcd(ell, m) != 1:
        raise NotCoprime(f"gcd({ell}, {m}) != 1")
    ex = (pow(m, -1, ell) * m) % (ell * m) if ell > 1 else 0
    ey = (pow(ell, -1, m) * ell) % (ell * m) if m > 1 else 0
    return ex, ey


def psi_map(F: Field, P: BivariatePoly) -> np.ndarray:
    """Image of P in F_q[z]/(z^(lm) - 1) as a length-lm coefficient vector."""
    ex, ey = psi_exponents(P.ell, P.m)
    n = P.ell * P.m
    out = np.zeros(n, dtype=np.int64)
    for a, b, c in P.terms:
        k = (a * ex + b * ey) % n
        out[k] = F.add(int(out[k]), c)
    return out
