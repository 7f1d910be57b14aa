"""q-ary simplex codes and qudit SHYPS subsystem codes."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .gf import Field, GF
from .linalg import kron, matmul, rank, rref
from .poly import circulant, poly_gcd, degree, is_primitive_poly, x_power_minus_one

MAX_SIMPLEX_LENGTH = 4096


class TooLarge(ValueError):
    pass


@dataclass(eq=False)
class SimplexCode:
    F: Field
    r: int
    G: np.ndarray
    H: np.ndarray
    pivots: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def d(self) -> int:
        return self.q ** (self.r - 1)


def projective_points(F: Field, r: int) -> np.ndarray:
    """Columns: one representative per point of PG(r-1, q), first nonzero entry 1, lex order."""
    pts = [v for v in itertools.product(range(F.q), repeat=r) if any(v) and next(c for c in v if c) == 1]
    return np.array(pts, dtype=np.int64).T


def build_simplex(q: int | Field, r: int) -> SimplexCode:
    F = q if isinstance(q, Field) else GF(q)
    if r < 2:
        raise ValueError("r must be at least 2")
    n = (F.q**r - 1) // (F.q - 1)
    if n > MAX_SIMPLEX_LENGTH:
        raise TooLarge(f"n_r = {n}")
    G = projective_points(F, r)
    R, rk, piv = rref(F, G)
    free = [j for j in range(n) if j not in set(piv)]
    # H = [-P^T | I] placed on the original column order
    H = np.zeros((n - rk, n), dtype=np.int64)
    H[np.arange(len(free)), free] = 1
    H[:, piv] = np.asarray(F.neg(R[:rk, free]), dtype=np.int64).T
    return SimplexCode(F, r, G, H, tuple(piv))


@dataclass(eq=False)
class SubsystemCode:
    F: Field
    GX: np.ndarray
    GZ: np.ndarray
    SX: np.ndarray
    SZ: np.ndarray
    LX: np.ndarray
    LZ: np.ndarray
    k_analytic: int
    d_analytic: int

    @property
    def n(self) -> int:
        return self.GX.shape[1]

    @property
    def k(self) -> int:
        return rank(self.F, self.LX) - rank(self.F, self.SX)

    def commutation_ok(self) -> bool:
        F = self.F
        return not (np.any(matmul(F, self.SX, self.GZ.T)) or np.any(matmul(F, self.SZ, self.GX.T)))


def build_shyps(q: int | Field, r: int) -> SubsystemCode:
    """G_X = H (x) I, G_Z = I (x) H; S_X = H (x) G, S_Z = G (x) H; L_X = I (x) G, L_Z = G (x) I."""
    if r < 3:
        warnings.warn("SHYPS codes are normally taken with r >= 3", stacklevel=2)
    S = build_simplex(q, r)
    F, G, H = S.F, S.G, S.H
    I = np.eye(S.n, dtype=np.int64)
    code = SubsystemCode(
        F,
        GX=kron(F, H, I),
        GZ=kron(F, I, H),
        SX=kron(F, H, G),
        SZ=kron(F, G, H),
        LX=kron(F, I, G),
        LZ=kron(F, G, I),
        k_analytic=r * r,
        d_analytic=S.d,
    )
    if code.k != code.k_analytic:
        raise AssertionError(f"rank k {code.k} != r^2 = {r * r}")
    return code


def weight_stats(H) -> tuple[int, int]:
    H = np.asarray(H)
    if H.size == 0:
        return 0, 0
    w = np.count_nonzero(H, axis=1)
    return int(w.min()), int(w.max())


def gcd_is_primitive(F: Field, h, n: int, r: int) -> bool:
    """Does gcd(h, x^n - 1) have degree r and generate GF(q^r)^x?"""
    h = np.asarray(h, dtype=np.int64)
    if not np.any(h):
        return False
    g = poly_gcd(F, h, x_power_minus_one(F, n))
    return degree(g) == r and is_primitive_poly(F, g)


def cyclic_simplex_check(q: int, r: int) -> np.ndarray:
    """Circulant parity check of the simplex code from a three-term h (binary only).

    Searches h = 1 + x^a + x^b with gcd(h, x^n - 1) primitive of degree r.
    For q > 2 no such h exists, so this raises.
    """
    F = GF(q)
    if F.q != 2:
        raise ValueError("cyclic simplex construction only exists for q = 2")
    n = 2**r - 1
    for a in range(1, n):
        for b in range(a + 1, n):
            h = np.zeros(n, dtype=np.int64)
            h[[0, a, b]] = 1
            if gcd_is_primitive(F, h, n, r):
                return circulant(F, h)
    raise ValueError(f"no three-term h for r = {r}")


def nonexistence_trials(q: int, r: int, samples: int, rng: np.random.Generator) -> int:
    """How many random h have gcd(h, x^n_r - 1) primitive of degree r."""
    F = GF(q)
    n = (q**r - 1) // (q - 1)
    hits = 0
    for _ in range(samples):
        h = rng.integers(0, q, size=n)
        hits += gcd_is_primitive(F, h, n, r)
    return hits


def weights_table(q: int, r_max: int, r_min: int = 2) -> list[tuple[int, int, int]]:
    """Rows (r, min_w, max_w) of simplex parity-check weights."""
    rows = []
    for r in range(r_min, r_max + 1):
        H = cyclic_simplex_check(q, r) if q == 2 else build_simplex(q, r).H
        rows.append((r, *weight_stats(H)))
    return rows
