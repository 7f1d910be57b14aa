"""Hypergraph product codes and qudit La-cross codes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bb import CssCode, CssViolation, default_coeffs
from .distance import EXACT, classical_min_weight
from .gf import Field, parse_field
from .linalg import asmat, kron, rank, scale
from .poly import circulant


class DegenerateSeed(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class DistanceTimeout(RuntimeError):
    pass


@dataclass(eq=False)
class ClassicalCode:
    """Classical code given by its parity checks H (n^T x n)."""

    F: Field
    H: np.ndarray

    def __post_init__(self):
        self.H = asmat(self.H)

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def nT(self) -> int:
        return self.H.shape[0]

    @cached_property
    def rank(self) -> int:
        return rank(self.F, self.H)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @property
    def kT(self) -> int:
        return self.nT - self.rank

    def transpose(self) -> ClassicalCode:
        return ClassicalCode(self.F, self.H.T.copy())

    def distance(self, cap: int | None = None, budget: float = 600.0) -> int | None:
        """Minimum codeword weight; None when there is no nonzero codeword."""
        if self.k == 0:
            return None
        res = classical_min_weight(self.F, self.H, cap or self.n, budget)
        if res.status != EXACT:
            raise DistanceTimeout(f"classical distance not certified ({res.status})")
        return res.weight


def classical_params(F: Field, H, cap: int | None = None, budget: float = 600.0):
    """(n, k, d) with d = None when the code has no nonzero codeword."""
    C = ClassicalCode(F, H)
    return C.n, C.k, C.distance(cap, budget)


def build_hgp(CA: ClassicalCode, CB: ClassicalCode, coeffs=None) -> CssCode:
    """Hypergraph product with n = n_A n_B^T + n_A^T n_B and k = k_A k_B^T + k_A^T k_B.

    H_X = [g1 H_A (x) I_nB^T | g2 I_nA^T (x) H_B]
    H_Z = [d1 I_nA (x) H_B^T | d2 H_A^T (x) I_nB]

    This is the block form written with H_B^T in place of H_B, i.e. the CSS
    code of the tensor product of the two-term complexes of the seeds.
    Passing CB.transpose() gives n_A n_B + n_A^T n_B^T instead.
    """
    if CA.F != CB.F:
        raise FieldMismatch(f"{CA.F!r} vs {CB.F!r}")
    F = CA.F
    g1, g2, d1, d2 = coeffs or default_coeffs(F)
    if 0 in (g1, g2, d1, d2) or F.add(F.mul(g1, d1), F.mul(g2, d2)) != 0:
        raise CssViolation(f"block coefficients {(g1, g2, d1, d2)} break the CSS condition")
    HA, HB = CA.H, CB.H
    I = lambda k: np.eye(k, dtype=np.int64)
    HX = np.hstack([scale(F, g1, kron(F, HA, I(CB.nT))), scale(F, g2, kron(F, I(CA.nT), HB))])
    HZ = np.hstack([scale(F, d1, kron(F, I(CA.n), HB.T)), scale(F, d2, kron(F, HA.T, I(CB.n)))])
    return CssCode(
        F,
        HX,
        HZ,
        {
            "family": "hgp",
            "seeds": [(CA.n, CA.k, CA.nT, CA.kT), (CB.n, CB.k, CB.nT, CB.kT)],
            "k_formula": CA.k * CB.kT + CA.kT * CB.k,
        },
    )


@dataclass(frozen=True)
class LacrossSpec:
    F: Field
    n_c: int
    k: int
    alphas: tuple[int, int, int]
    boundary: str = "open"

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if any(a % self.F.q == 0 for a in self.alphas):
            raise ValueError("La-cross coefficients must be nonzero")
        if not 1 < self.k <= self.n_c:
            raise ValueError("need 1 < k <= n_c")

    def check_polynomial(self) -> np.ndarray:
        h = np.zeros(self.k + 1, dtype=np.int64)
        h[0], h[1] = self.alphas[0], self.alphas[1]
        h[self.k] = self.alphas[2]
        return h

    def seed_matrix(self) -> np.ndarray:
        h = self.check_polynomial()
        n = self.n_c
        if self.boundary == "periodic":
            c = np.zeros(n, dtype=np.int64)
            for i, v in enumerate(h):
                c[i % n] = self.F.add(int(c[i % n]), int(v))
            return circulant(self.F, c)
        H = np.zeros((n - self.k, n), dtype=np.int64)
        for i in range(n - self.k):
            H[i, i : i + self.k + 1] = h
        return H

    def to_dict(self) -> dict:
        return {
            "family": "lacross",
            "field": self.F.descriptor,
            "n_c": self.n_c,
            "k": self.k,
            "alphas": list(self.alphas),
            "boundary": self.boundary,
        }

    @classmethod
    def from_dict(cls, d: dict) -> LacrossSpec:
        F = parse_field(d["field"])
        al = tuple(int(a) % F.q for a in d["alphas"])
        return cls(F, int(d["n_c"]), int(d["k"]), al, d.get("boundary", "open"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def build_lacross(spec: LacrossSpec) -> CssCode:
    """H_X = [I_n (x) H | H^T (x) I_nT], H_Z = [H (x) I_n | -I_nT (x) H^T]."""
    F = spec.F
    H = spec.seed_matrix()
    if spec.boundary == "open" and rank(F, H) != spec.n_c - spec.k:
        raise DegenerateSeed(f"rank {rank(F, H)} != n_c - k = {spec.n_c - spec.k}")
    nT, n = H.shape
    I = lambda k: np.eye(k, dtype=np.int64)
    HX = np.hstack([kron(F, I(n), H), kron(F, H.T, I(nT))])
    HZ = np.hstack([kron(F, H, I(n)), scale(F, F.neg(1), kron(F, I(nT), H.T))])
    seed = ClassicalCode(F, H)
    return CssCode(
        F,
        HX,
        HZ,
        {
            "family": "lacross",
            "definition": spec.to_dict(),
            "seed": (seed.n, seed.k, seed.nT, seed.kT),
            "k_formula": seed.k**2 + seed.kT**2,
        },
    )


def random_seed(F: Field, rng: np.random.Generator, n_max: int = 8, density: float = 0.5) -> ClassicalCode:
    """Random classical seed with 1 <= rows, cols <= n_max."""
    n = int(rng.integers(1, n_max + 1))
    r = int(rng.integers(1, n_max + 1))
    H = rng.integers(1, F.q, size=(r, n)) * (rng.random((r, n)) < density)
    return ClassicalCode(F, H)
