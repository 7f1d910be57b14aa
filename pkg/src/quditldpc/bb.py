"""Qudit bivariate bicycle codes and the shared CSS code object."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .gf import Field, field_new, embedding, parse_field
from .linalg import matmul, rank, scale, stack_kernel_intersection
from .poly import (
    BivariatePoly,
    degree,
    eval_bivariate,
    poly_gcd,
    psi_map,
    x_power_minus_one,
)


class CssViolation(ValueError):
    pass


class NotMutuallyCoprime(ValueError):
    pass


@dataclass(eq=False)
class CssCode:
    """A CSS code given by H_X and H_Z over a common field."""

    F: Field
    HX: np.ndarray
    HZ: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.HX = np.asarray(self.HX, dtype=np.int64)
        self.HZ = np.asarray(self.HZ, dtype=np.int64)
        if self.HX.shape[1] != self.HZ.shape[1]:
            raise ValueError(f"H_X has {self.HX.shape[1]} columns, H_Z has {self.HZ.shape[1]}")
        if np.any(matmul(self.F, self.HX, self.HZ.T)):
            raise CssViolation("H_X H_Z^T != 0")

    @property
    def n(self) -> int:
        return self.HX.shape[1]

    @cached_property
    def rank_x(self) -> int:
        return rank(self.F, self.HX)

    @cached_property
    def rank_z(self) -> int:
        return rank(self.F, self.HZ)

    @property
    def k(self) -> int:
        return self.n - self.rank_x - self.rank_z

    def row_weights(self) -> tuple[np.ndarray, np.ndarray]:
        return np.count_nonzero(self.HX, axis=1), np.count_nonzero(self.HZ, axis=1)

    def dual(self) -> CssCode:
        """Swap the roles of X and Z."""
        return CssCode(self.F, self.HZ, self.HX, dict(self.metadata))

    def __repr__(self):
        return f"CssCode(n={self.n}, k={self.k}, field={self.F!r})"


def default_coeffs(F: Field) -> tuple[int, int, int, int]:
    return (1, 1, 1, F.neg(1))


@dataclass(frozen=True)
class BBSpec:
    F: Field
    ell: int
    m: int
    A: BivariatePoly
    B: BivariatePoly
    coeffs: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        if self.coeffs is None:
            object.__setattr__(self, "coeffs", default_coeffs(self.F))
        g1, g2, d1, d2 = self.coeffs
        if 0 in self.coeffs:
            raise CssViolation("block coefficients must be nonzero")
        F = self.F
        if F.add(F.mul(g1, d1), F.mul(g2, d2)) != 0:
            raise CssViolation(f"gamma1*delta1 + gamma2*delta2 != 0 for {self.coeffs}")
        for P in (self.A, self.B):
            if (P.ell, P.m) != (self.ell, self.m):
                raise ValueError("polynomial ring does not match (l, m)")

    @classmethod
    def from_strings(cls, q_or_field, ell: int, m: int, A: str, B: str, coeffs=None) -> BBSpec:
        F = q_or_field if isinstance(q_or_field, Field) else parse_field(q_or_field)
        return cls(
            F,
            ell,
            m,
            BivariatePoly.parse(A, ell, m, F),
            BivariatePoly.parse(B, ell, m, F),
            tuple(int(c) % F.q if F.s == 1 else int(c) for c in coeffs) if coeffs else None,
        )

    @property
    def weight(self) -> int:
        return self.A.weight + self.B.weight

    @property
    def is_coprime(self) -> bool:
        """l, m and q pairwise coprime."""
        return gcd(self.ell, self.m) == 1 and gcd(self.ell * self.m, self.F.p) == 1

    def to_dict(self) -> dict:
        return {
            "family": "bb",
            "field": self.F.descriptor,
            "l": self.ell,
            "m": self.m,
            "A": str(self.A),
            "B": str(self.B),
            "coeffs": list(self.coeffs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> BBSpec:
        if d.get("family", "bb") != "bb":
            raise ValueError(f"not a bb definition: {d.get('family')}")
        return cls.from_strings(parse_field(d["field"]), int(d["l"]), int(d["m"]), d["A"], d["B"], d.get("coeffs"))


def build_bb(spec: BBSpec) -> CssCode:
    """H_X = [g1 A | g2 B], H_Z = [d1 B^T | d2 A^T]."""
    F = spec.F
    g1, g2, d1, d2 = spec.coeffs
    A = eval_bivariate(F, spec.A)
    B = eval_bivariate(F, spec.B)
    HX = np.hstack([scale(F, g1, A), scale(F, g2, B)])
    HZ = np.hstack([scale(F, d1, B.T), scale(F, d2, A.T)])
    code = CssCode(
        F,
        HX,
        HZ,
        {
            "family": "bb",
            "definition": spec.to_dict(),
            "weight": spec.weight,
            "coprime": spec.is_coprime,
        },
    )
    k_kernel = 2 * stack_kernel_intersection(F, A, B).shape[0]
    code.metadata["k_kernel"] = k_kernel
    if k_kernel != code.k:
        # never expected; kept as a loud failure rather than a silent pick
        raise AssertionError(f"rank k {code.k} != 2 dim(ker A cap ker B) {k_kernel}")
    return code


def bb_k_coprime(spec: BBSpec) -> int:
    """k = 2 deg gcd(A(z), B(z), z^(lm) - 1) for coprime l, m, q."""
    if not spec.is_coprime:
        raise NotMutuallyCoprime(f"(l, m, q) = ({spec.ell}, {spec.m}, {spec.F.q})")
    F = spec.F
    n = spec.ell * spec.m
    h = poly_gcd(F, poly_gcd(F, psi_map(F, spec.A), psi_map(F, spec.B)), x_power_minus_one(F, n))
    return 2 * degree(h)


def extend_scalars(code: CssCode, t: int) -> CssCode:
    """Same H_X, H_Z read over GF(q^t)."""
    if t == 1:
        return code
    F = code.F
    E = field_new(F.p, F.s * t)
    emb = embedding(F, E)
    meta = dict(code.metadata)
    meta["extended_from"] = F.descriptor
    return CssCode(E, emb[code.HX], emb[code.HZ], meta)


def normalize_bb(spec: BBSpec) -> BBSpec:
    """Equivalent spec with coefficients (1, 1, 1, -1) and leading A coefficient 1.

    Dividing H_X by g2 and H_Z by d1 leaves both row spaces unchanged and
    turns the blocks into [(g1/g2) A | B] and [B^T | -(g1/g2) A^T]. Scaling A
    afterwards is a qudit-wise relabelling, which keeps n, k and d.
    """
    F = spec.F
    g1, g2, _, _ = spec.coeffs
    A = spec.A.scaled(F, F.div(g1, g2))
    if A.terms:
        A = A.scaled(F, F.inv(A.terms[0][2]))
    return BBSpec(F, spec.ell, spec.m, A, spec.B, default_coeffs(F))


def check_coprime_flag(spec: BBSpec, flagged: bool) -> bool:
    """Compare a tabulated coprime flag with the pairwise test; warn on mismatch."""
    if spec.is_coprime != flagged:
        warnings.warn(
            f"coprime flag {flagged} disagrees with pairwise gcd test for "
            f"(l, m, q) = ({spec.ell}, {spec.m}, {spec.F.q})",
            stacklevel=2,
        )
        return False
    return True


def random_bb_spec(
    F: Field, ell: int, m: int, rng: np.random.Generator, terms: tuple[int, int] = (3, 3)
) -> BBSpec:
    """Uniform monomials (distinct within each polynomial) with nonzero coefficients."""
    polys = []
    for t in terms:
        cells = rng.choice(ell * m, size=t, replace=False)
        coef = rng.integers(1, F.q, size=t)
        polys.append(BivariatePoly(ell, m, tuple((int(c) // m, int(c) % m, int(a)) for c, a in zip(cells, coef))))
    return BBSpec(F, ell, m, polys[0], polys[1])
