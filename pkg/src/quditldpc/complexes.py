"""Chain complexes over GF(q).

A :class:`ChainComplex` stores grade dimensions ``dims[0..N]`` and boundary
maps ``d[j]: C_j -> C_{j-1}`` for ``j = 1..N`` (``d[0]`` is an empty map).
A :class:`CochainComplex` stores ``delta[j]: C^j -> C^{j+1}``.

Also here: Koszul tensor products, homology, CSS codes from 3-term
complexes, the HDX product complex, systoles, and twisted circle bundles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bb import CssCode
from .distance import EXACT, DistanceQuery, min_logical_weight
from .gf import Field
from .linalg import asmat, kernel, kron, matmul, rank, solve


class ComplexError(ValueError):
    pass


class GradeOutOfRange(ComplexError):
    pass


class WrongLength(ComplexError):
    pass


class ShapeMismatch(ComplexError):
    pass


class FieldMismatch(ComplexError):
    pass


def _zeros(r, c):
    return np.zeros((r, c), dtype=np.int64)


@dataclass(eq=False)
class ChainComplex:
    F: Field
    dims: list[int]
    d: list[np.ndarray]

    def __post_init__(self):
        self.dims = [int(x) for x in self.dims]
        if len(self.d) == len(self.dims) - 1:
            self.d = [_zeros(0, self.dims[0])] + list(self.d)
        if len(self.d) != len(self.dims):
            raise ShapeMismatch("need one boundary map per positive grade")
        self.d = [np.asarray(m, dtype=np.int64).reshape(self.dims[j - 1] if j else 0, self.dims[j]) for j, m in enumerate(self.d)]

    @classmethod
    def from_maps(cls, F: Field, maps, dims=None) -> ChainComplex:
        """Complex C_N -> ... -> C_0 from maps listed as [d_1, d_2, ..., d_N]."""
        maps = [asmat(m) if np.size(m) else np.asarray(m, dtype=np.int64) for m in maps]
        if dims is None:
            dims = [maps[0].shape[0]] + [m.shape[1] for m in maps]
        return cls(F, list(dims), [_zeros(0, dims[0])] + list(maps))

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, j: int) -> np.ndarray:
        if 1 <= j <= self.top:
            return self.d[j]
        lo = self.dims[j - 1] if 1 <= j <= self.top + 1 and j - 1 <= self.top else 0
        hi = self.dims[j] if 0 <= j <= self.top else 0
        return _zeros(lo, hi)

    def squares_to_zero(self) -> bool:
        return all(not np.any(matmul(self.F, self.d[j - 1], self.d[j])) for j in range(2, self.top + 1))

    def check(self) -> ChainComplex:
        if not self.squares_to_zero():
            raise ComplexError("boundary map does not square to zero")
        return self

    def homology_dim(self, j: int) -> int:
        if not 0 <= j <= self.top:
            raise GradeOutOfRange(j)
        rk_in = rank(self.F, self.d[j]) if j >= 1 and self.d[j].size else 0
        rk_out = rank(self.F, self.d[j + 1]) if j < self.top and self.d[j + 1].size else 0
        return self.dims[j] - rk_in - rk_out

    def betti(self) -> list[int]:
        return [self.homology_dim(j) for j in range(self.top + 1)]

    def dual(self) -> CochainComplex:
        return CochainComplex(self.F, list(self.dims), [self.d[j + 1].T.copy() for j in range(self.top)])


@dataclass(eq=False)
class CochainComplex:
    F: Field
    dims: list[int]
    delta: list[np.ndarray]  # delta[j]: C^j -> C^{j+1}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def squares_to_zero(self) -> bool:
        return all(
            not np.any(matmul(self.F, self.delta[j + 1], self.delta[j])) for j in range(len(self.delta) - 1)
        )

    def cohomology_dim(self, j: int) -> int:
        if not 0 <= j <= self.top:
            raise GradeOutOfRange(j)
        rk_out = rank(self.F, self.delta[j]) if j < self.top and self.delta[j].size else 0
        rk_in = rank(self.F, self.delta[j - 1]) if j >= 1 and self.delta[j - 1].size else 0
        return self.dims[j] - rk_out - rk_in

    def dual(self) -> ChainComplex:
        return ChainComplex(self.F, list(self.dims), [_zeros(0, self.dims[0])] + [m.T.copy() for m in self.delta])


def _blocks(A_dims, B_dims):
    """Per total grade k, the list of (i, j, offset) blocks in C_k, ordered by i."""
    out = {}
    for k in range(len(A_dims) + len(B_dims) - 1):
        off = 0
        blocks = []
        for i in range(len(A_dims)):
            j = k - i
            if 0 <= j < len(B_dims):
                blocks.append((i, j, off))
                off += A_dims[i] * B_dims[j]
        out[k] = (blocks, off)
    return out


def tensor_complex(A: ChainComplex, B: ChainComplex, koszul: bool = True) -> ChainComplex:
    """d(a (x) b) = dA a (x) b + (-1)^i a (x) dB b for a of grade i.

    ``koszul=False`` drops the sign; that variant is only for demonstrating
    why the sign is needed.
    """
    if A.F != B.F:
        raise FieldMismatch(f"{A.F!r} vs {B.F!r}")
    F = A.F
    blk = _blocks(A.dims, B.dims)
    dims = [blk[k][1] for k in range(len(blk))]
    maps = [_zeros(0, dims[0])]
    for k in range(1, len(dims)):
        src, tgt = blk[k][0], blk[k - 1][0]
        M = _zeros(dims[k - 1], dims[k])
        tpos = {(i, j): off for i, j, off in tgt}
        for i, j, off in src:
            a, b = A.dims[i], B.dims[j]
            if i >= 1 and (i - 1, j) in tpos:
                o = tpos[(i - 1, j)]
                M[o : o + A.dims[i - 1] * b, off : off + a * b] = kron(F, A.d[i], np.eye(b, dtype=np.int64))
            if j >= 1 and (i, j - 1) in tpos:
                o = tpos[(i, j - 1)]
                blockm = kron(F, np.eye(a, dtype=np.int64), B.d[j])
                if koszul and i % 2:
                    blockm = np.asarray(F.neg(blockm), dtype=np.int64)
                M[o : o + a * B.dims[j - 1], off : off + a * b] = blockm
        maps.append(M)
    return ChainComplex(F, dims, maps)


def cotensor_complex(A: CochainComplex, B: CochainComplex, koszul: bool = True) -> CochainComplex:
    """delta(a (x) b) = deltaA a (x) b + (-1)^i a (x) deltaB b."""
    if A.F != B.F:
        raise FieldMismatch(f"{A.F!r} vs {B.F!r}")
    F = A.F
    blk = _blocks(A.dims, B.dims)
    dims = [blk[k][1] for k in range(len(blk))]
    maps = []
    for k in range(len(dims) - 1):
        src, tgt = blk[k][0], blk[k + 1][0]
        M = _zeros(dims[k + 1], dims[k])
        tpos = {(i, j): off for i, j, off in tgt}
        for i, j, off in src:
            a, b = A.dims[i], B.dims[j]
            if (i + 1, j) in tpos and i < A.top:
                o = tpos[(i + 1, j)]
                M[o : o + A.dims[i + 1] * b, off : off + a * b] = kron(F, A.delta[i], np.eye(b, dtype=np.int64))
            if (i, j + 1) in tpos and j < B.top:
                o = tpos[(i, j + 1)]
                blockm = kron(F, np.eye(a, dtype=np.int64), B.delta[j])
                if koszul and i % 2:
                    blockm = np.asarray(F.neg(blockm), dtype=np.int64)
                M[o : o + a * B.dims[j + 1], off : off + a * b] = blockm
        maps.append(M)
    return CochainComplex(F, dims, maps)


def two_term(F: Field, H) -> ChainComplex:
    """The classical code H as the complex C_1 (bits) -> C_0 (checks)."""
    H = asmat(H)
    return ChainComplex(F, [H.shape[0], H.shape[1]], [_zeros(0, H.shape[0]), H])


def cycle_graph(F: Field, n: int) -> ChainComplex:
    """C_n with edge e_i running v_i -> v_(i+1): d e_i = v_(i+1) - v_i."""
    D = _zeros(n, n)
    for i in range(n):
        D[(i + 1) % n, i] = F.add(int(D[(i + 1) % n, i]), 1)
        D[i, i] = F.sub(int(D[i, i]), 1)
    return two_term(F, D)


def simplicial_complex(F: Field, facets) -> ChainComplex:
    """Oriented simplicial chain complex of the closure of the given facets.

    Faces are sorted vertex tuples; d[v0..vk] = sum (-1)^i [.. omit vi ..].
    """
    faces: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            for sub in itertools.combinations(f, k):
                faces.setdefault(k - 1, set()).add(sub)
    top = max(faces)
    order = {k: sorted(faces[k]) for k in range(top + 1)}
    index = {k: {s: i for i, s in enumerate(order[k])} for k in order}
    maps = [_zeros(0, len(order[0]))]
    for k in range(1, top + 1):
        M = _zeros(len(order[k - 1]), len(order[k]))
        for c, s in enumerate(order[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                M[index[k - 1][face], c] = 1 if i % 2 == 0 else F.neg(1)
        maps.append(M)
    cx = ChainComplex(F, [len(order[k]) for k in range(top + 1)], maps)
    cx.faces = order
    return cx


def truncate(C: ChainComplex, lo: int, hi: int) -> ChainComplex:
    """Grades lo..hi of C, re-indexed to start at 0."""
    if not 0 <= lo <= hi <= C.top:
        raise GradeOutOfRange((lo, hi))
    dims = C.dims[lo : hi + 1]
    maps = [_zeros(0, dims[0])] + [C.d[j] for j in range(lo + 1, hi + 1)]
    return ChainComplex(C.F, dims, maps)


def css_from_complex(C: ChainComplex) -> CssCode:
    """C_2 -> C_1 -> C_0 gives H_X = d_1 and H_Z = d_2^T."""
    if C.top != 2:
        raise WrongLength(f"need three grades, got {C.top + 1}")
    return CssCode(C.F, C.d[1], C.d[2].T, {"family": "complex", "dims": list(C.dims)})


def build_hdx_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """0 -> X2(x)A -> X1(x)A + X2(x)B -> X0(x)A + X1(x)B -> 0.

    X is a 3-term complex X2 -> X1 -> X0 and Y is dY: A -> B.

    d2 = (dX2 (x) I_A, I_X2 (x) dY)
    d1(u, v) = (dX1 (x) I_A u,  -(I_X1 (x) dY) u + (dX2 (x) I_B) v)
    """
    if X.F != Y.F:
        raise FieldMismatch(f"{X.F!r} vs {Y.F!r}")
    if X.top != 2 or Y.top != 1:
        raise ShapeMismatch("X needs grades 0..2 and Y grades 0..1")
    F = X.F
    x0, x1, x2 = X.dims
    nB, nA = Y.dims
    dY = Y.d[1]
    I = lambda k: np.eye(k, dtype=np.int64)
    d2 = np.vstack([kron(F, X.d[2], I(nA)), kron(F, I(x2), dY)])
    top = np.hstack([kron(F, X.d[1], I(nA)), _zeros(x0 * nA, x2 * nB)])
    bottom = np.hstack([np.asarray(F.neg(kron(F, I(x1), dY)), dtype=np.int64), kron(F, X.d[2], I(nB))])
    d1 = np.vstack([top, bottom])
    C = ChainComplex(F, [x0 * nA + x1 * nB, x1 * nA + x2 * nB, x2 * nA], [_zeros(0, x0 * nA + x1 * nB), d1, d2])
    return C.check()


def _cap_query(F, H, R, cap, budget):
    res = min_logical_weight(DistanceQuery(F, H, R, weight_cap=cap, time_budget=budget))
    return res.weight if res.status == EXACT else None


def systole(C: ChainComplex, j: int, cap: int = 12, budget: float = 600.0) -> int | None:
    """min |v| over ker d_j minus im d_(j+1); None if above cap (or no class)."""
    if not 0 <= j <= C.top:
        raise GradeOutOfRange(j)
    H = C.d[j] if j >= 1 else _zeros(0, C.dims[0])
    R = C.d[j + 1].T if j < C.top else _zeros(0, C.dims[j])
    return _cap_query(C.F, H, R, cap, budget)


def cosystole(C: ChainComplex, j: int, cap: int = 12, budget: float = 600.0) -> int | None:
    """min |v| over ker d_(j+1)^T minus im d_j^T."""
    if not 0 <= j <= C.top:
        raise GradeOutOfRange(j)
    H = C.d[j + 1].T if j < C.top else _zeros(0, C.dims[j])
    R = C.d[j] if j >= 1 else _zeros(0, C.dims[0])
    return _cap_query(C.F, H, R, cap, budget)


# --- twisted circle bundles


class ConditionViolated(ComplexError):
    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"condition {condition} violated {detail}".strip())
        self.condition = condition


@dataclass(frozen=True)
class FiberAutomorphism:
    """Pair of matrices (on F_0, on F_1) commuting with the fiber boundary."""

    name: str
    on0: np.ndarray
    on1: np.ndarray


def rotation(F: Field, n: int, r: int) -> FiberAutomorphism:
    P = np.zeros((n, n), dtype=np.int64)
    P[(np.arange(n) + r) % n, np.arange(n)] = 1
    return FiberAutomorphism(f"rot{r % n}", P, P.copy())


def signed_reflection(F: Field, n: int) -> FiberAutomorphism:
    """v_i -> v_(-i), e_i -> -e_(-i-1): reverses the orientation of the cycle."""
    P0 = np.zeros((n, n), dtype=np.int64)
    P0[(-np.arange(n)) % n, np.arange(n)] = 1
    P1 = np.zeros((n, n), dtype=np.int64)
    P1[(-np.arange(n) - 1) % n, np.arange(n)] = F.neg(1)
    return FiberAutomorphism("reflect", P0, P1)


@dataclass(eq=False)
class TwistedBundle:
    base: ChainComplex
    fiber: ChainComplex
    connection: dict
    total: ChainComplex
    conditions: dict = field(default_factory=dict)

    @property
    def code(self) -> CssCode:
        return css_from_complex(self.total)


def _as_automorphism(F, fiber, g):
    if isinstance(g, FiberAutomorphism):
        return g
    return rotation(F, fiber.dims[1], int(g))


def bundle_boundaries(base: ChainComplex, fiber: ChainComplex, connection: dict):
    """Boundary maps of E = B1(x)F1 -> B1(x)F0 + B0(x)F1 -> B0(x)F0.

    d(b0 (x) f) = b0 (x) df and
    d(b1 (x) f) = -b1 (x) df + sum_a H[a, b] a (x) phi(b, a) f.
    """
    F = base.F
    H = base.d[1]
    mB, nB = H.shape
    dF = fiber.d[1]
    mF, nF = dF.shape
    T1 = _zeros(mB * nF, nB * nF)  # B1(x)F1 -> B0(x)F1
    T0 = _zeros(mB * mF, nB * mF)  # B1(x)F0 -> B0(x)F0
    for a, b in zip(*np.nonzero(H)):
        g = _as_automorphism(F, fiber, connection.get((int(b), int(a)), 0))
        c = int(H[a, b])
        T1[a * nF : (a + 1) * nF, b * nF : (b + 1) * nF] = F.mul(c, g.on1)
        T0[a * mF : (a + 1) * mF, b * mF : (b + 1) * mF] = F.mul(c, g.on0)
    I = lambda k: np.eye(k, dtype=np.int64)
    d2 = np.vstack([np.asarray(F.neg(kron(F, I(nB), dF)), dtype=np.int64), T1])
    d1 = np.hstack([T0, kron(F, I(mB), dF)])
    dims = [mB * mF, nB * mF + mB * nF, nB * nF]
    return ChainComplex(F, dims, [_zeros(0, dims[0]), d1, d2])


def check_bundle_conditions(base: ChainComplex, fiber: ChainComplex, connection: dict) -> dict:
    """Conditions (i)-(v), each as {"ok": bool, "witness": ...}."""
    F = base.F
    out = {}
    out["i"] = {"ok": base.top == 1, "witness": None if base.top == 1 else f"base has {base.top + 1} grades"}
    dF = fiber.d[1] if fiber.top >= 1 else _zeros(fiber.dims[0], 0)
    sums = np.asarray(dF.sum(axis=0) % F.p) if F.s == 1 else np.array([_field_sum(F, col) for col in dF.T])
    bad = np.flatnonzero(sums)
    out["ii"] = {"ok": bad.size == 0, "witness": None if bad.size == 0 else int(bad[0])}
    # (iii) zero-sum 0-chains are boundaries: basis e_0 - e_i
    m = dF.shape[0]
    wit = None
    for i in range(1, m):
        c = np.zeros(m, dtype=np.int64)
        c[0], c[i] = 1, F.neg(1)
        if solve(F, dF, c) is None:
            wit = c
            break
    out["iii"] = {"ok": wit is None, "witness": None if wit is None else wit.tolist()}
    if base.top >= 1:
        Hb = base.d[1]
        left = kernel(F, Hb.T) if Hb.size else np.eye(base.dims[0], dtype=np.int64)
        out["iv"] = {"ok": left.shape[0] == 0, "witness": None if left.shape[0] == 0 else left[0].tolist()}
    else:
        out["iv"] = {"ok": base.dims[0] == 0, "witness": "no 1-cells"}
    # (v) each automorphism used fixes H_1(F) = ker dF pointwise
    cycles = kernel(F, dF)
    wit = None
    for key, g in connection.items():
        g = _as_automorphism(F, fiber, g)
        moved = np.asarray(F.sub(matmul(F, cycles, g.on1.T), cycles)) if cycles.size else np.zeros(0)
        if np.any(moved):
            wit = {"edge": list(key), "automorphism": g.name}
            break
    out["v"] = {"ok": wit is None, "witness": wit}
    return out


def _field_sum(F, v):
    acc = 0
    for x in v:
        acc = F.add(acc, int(x))
    return acc


def build_twisted_bundle(base: ChainComplex, fiber: ChainComplex, connection: dict, strict: bool = True):
    """Circle bundle over a 1-complex base. Conditions i-iii are enforced when strict."""
    conds = check_bundle_conditions(base, fiber, connection)
    if strict:
        for c in ("i", "ii", "iii"):
            if not conds[c]["ok"]:
                raise ConditionViolated(c, str(conds[c]["witness"]))
    total = bundle_boundaries(base, fiber, connection).check()
    return TwistedBundle(base, fiber, dict(connection), total, conds)


def random_circle_bundle(F: Field, rng: np.random.Generator, nB=(4, 7), nF=(3, 5), full_rank=True):
    """Random full-rank base code, fiber C_nF, uniform random rotations."""
    while True:
        n = int(rng.integers(nB[0], nB[1] + 1))
        m = int(rng.integers(1, n))
        H = rng.integers(1, F.q, size=(m, n)) * (rng.random((m, n)) < 0.6)
        if not full_rank or rank(F, H) == m:
            break
    base = two_term(F, H)
    k = int(rng.integers(nF[0], nF[1] + 1))
    fiber = cycle_graph(F, k)
    conn = {(int(b), int(a)): int(rng.integers(0, k)) for a, b in zip(*np.nonzero(H))}
    return base, fiber, conn
