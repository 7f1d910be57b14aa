"""Exact minimum-weight logical search over GF(q).

The query asks for the smallest Hamming weight of a vector in ker(H) that is
not in rs(R), where rs(R) must lie inside ker(H).

Two observations make an exhaustive search cheap at desk scale.

* A minimum-weight logical v is supported on a circuit of the column matroid
  of H, i.e. a minimal set of linearly dependent columns. Otherwise some
  kernel vector u has strictly smaller support inside supp(v); cancelling one
  coordinate of v with u gives a lighter vector, and either it or u is a
  logical.
* A circuit is connected in the column graph (columns adjacent when they
  share a check). Two halves with no common check would each be kernel
  vectors on their own.

So the search enumerates connected column sets by increasing size, keeps an
incremental echelon basis along each branch and abandons a branch as soon as
its columns become dependent (no superset can be a circuit). Connected sets
are generated once each by extension-set enumeration (Wernicke's ESU).
"""

from __future__ import annotations

import time
from itertools import combinations
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf import Field
from .linalg import asmat, kernel, matmul, rank, rref, solve

EXACT = "exact"
LOWER_BOUND_ONLY = "lower_bound_only"
TIMEOUT = "timeout"


@dataclass
class DistanceQuery:
    F: Field
    kernel_of: np.ndarray
    excluded_rowspace: np.ndarray | None = None
    weight_cap: int = 10
    time_budget: float = 600.0
    seed: int = 0
    threads: int = 1
    warm_start: int = 64

    def __post_init__(self):
        self.kernel_of = asmat(self.kernel_of)
        n = self.kernel_of.shape[1]
        if self.excluded_rowspace is None or np.size(self.excluded_rowspace) == 0:
            self.excluded_rowspace = np.zeros((0, n), dtype=np.int64)
        self.excluded_rowspace = np.asarray(self.excluded_rowspace, dtype=np.int64).reshape(-1, n)


@dataclass
class DistanceResult:
    status: str
    weight: int | None
    witness: np.ndarray | None
    certified_lower_bound: int
    upper_bound: int | None = None
    elapsed: float = 0.0
    nodes: int = 0
    info: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == EXACT

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "weight": self.weight,
            "witness": None if self.witness is None else self.witness.tolist(),
            "certified_lower_bound": self.certified_lower_bound,
            "upper_bound": self.upper_bound,
            "elapsed": round(self.elapsed, 3),
            "nodes": self.nodes,
            **self.info,
        }


class _Timeout(Exception):
    pass


def _logical_detector(F: Field, H: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Rows L with: for v in ker H, v in rs R  <=>  L v = 0.

    ker(R) contains rs(H); any complement of rs(H) inside ker(R) works.
    """
    n = H.shape[1]
    KR = kernel(F, R) if R.shape[0] else np.eye(n, dtype=np.int64)
    RH, rH, _ = rref(F, H)
    base = RH[:rH]
    out = []
    cur = base
    r = rH
    for v in KR:
        trial = np.vstack([cur, v[None, :]])
        rt = rank(F, trial)
        if rt > r:
            out.append(v)
            cur, r = trial, rt
    return np.array(out, dtype=np.int64).reshape(len(out), n)


class _Engine:
    """State shared by all branches of one query (picklable for workers)."""

    def __init__(self, F: Field, H: np.ndarray, L: np.ndarray):
        self.F = F
        self.p = F.p
        self.prime = F.s == 1
        H = H[np.any(H, axis=1)] if H.size else H
        self.H = H
        self.n = H.shape[1]
        self.cols = np.ascontiguousarray(H.T)  # one row per column of H
        self.L = L
        self.LT = np.ascontiguousarray(L.T)
        support = [set(np.flatnonzero(H[:, j])) for j in range(self.n)]
        rows_of = [np.flatnonzero(H[i]) for i in range(H.shape[0])]
        adj = []
        for j in range(self.n):
            nb = set()
            for i in support[j]:
                nb.update(rows_of[i].tolist())
            nb.discard(j)
            adj.append(sorted(nb))
        self.adj = adj
        self.adjset = [set(a) for a in adj]

    # arithmetic helpers over vectors / small matrices
    def _mm(self, A, B):
        if self.prime:
            return (A @ B) % self.p
        return matmul(self.F, A, B)

    def _scale(self, c, v):
        return (c * v) % self.p if self.prime else np.asarray(self.F.mul(c, v))

    def _sub(self, a, b):
        return (a - b) % self.p if self.prime else np.asarray(self.F.sub(a, b))

    def _neg(self, a):
        return (-a) % self.p if self.prime else np.asarray(self.F.neg(a))

    def is_logical(self, V: np.ndarray) -> np.ndarray:
        if self.L.shape[0] == 0:
            return np.zeros(V.shape[0], dtype=bool)
        return np.any(self._mm(V, self.LT), axis=1)

    def search_level(self, w: int, roots, deadline: float, first_only: bool):
        """All (or the first) weight-w logicals whose smallest index is in roots."""
        self.hits: list[np.ndarray] = []
        self.nodes = 0
        self.deadline = deadline
        self.first_only = first_only
        try:
            for v in roots:
                self._root(v, w)
                if self.hits and first_only:
                    break
        except _Timeout:
            return self.hits, self.nodes, False
        return self.hits, self.nodes, True

    def _root(self, v: int, w: int):
        col = self.cols[v]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            if w == 1:
                e = np.zeros((1, self.n), dtype=np.int64)
                e[0, v] = 1
                if self.is_logical(e)[0]:
                    self.hits.append(e[0])
            return
        if w == 1:
            return
        piv = int(nz[0])
        b = self._scale(self.F.inv(int(col[piv])), col)
        T = np.array([[self.F.inv(int(col[piv]))]], dtype=np.int64)
        ext = [u for u in self.adj[v] if u > v]
        closed = set(self.adj[v])
        closed.add(v)
        self._extend([v], b[None, :], [piv], T, ext, closed, v, w)

    def _extend(self, S, B, piv, T, ext, closed, root, w):
        self.nodes += 1
        if (self.nodes & 255) == 0 and time.perf_counter() > self.deadline:
            raise _Timeout
        t = len(S)
        if t == w - 1:
            self._final(S, B, piv, T, ext)
            return
        ext = list(ext)
        while ext:
            u = ext.pop(0)
            col = self.cols[u]
            c = col[piv]
            r = self._sub(col, self._mm(c[None, :], B)[0])
            nz = np.flatnonzero(r)
            if nz.size == 0:
                continue  # dependent before reaching size w: no circuit above
            np_ = int(nz[0])
            alpha = self.F.inv(int(r[np_]))
            r = self._scale(alpha, r)
            # coordinates of r in the original columns: alpha * (e_u - c T)
            Tr = np.concatenate([self._neg(self._mm(c[None, :], T)[0]), [1]])
            Tr = self._scale(alpha, Tr)
            f = B[:, np_].copy()
            B2 = self._sub(B, self._mm(f[:, None], r[None, :]))
            T2 = np.hstack([T, np.zeros((t, 1), dtype=np.int64)])
            T2 = self._sub(T2, self._mm(f[:, None], Tr[None, :]))
            B2 = np.vstack([B2, r[None, :]])
            T2 = np.vstack([T2, Tr[None, :]])
            excl = [x for x in self.adj[u] if x > root and x not in closed]
            closed2 = closed | self.adjset[u]
            closed2.add(u)
            self._extend(S + [u], B2, piv + [np_], T2, ext + excl, closed2, root, w)
            if self.hits and self.first_only:
                return

    def _final(self, S, B, piv, T, ext):
        if not ext:
            return
        E = np.asarray(ext, dtype=np.int64)
        C = self.cols[E]
        c = C[:, piv]
        R = self._sub(C, self._mm(c, B))
        dep = ~np.any(R, axis=1)
        if not dep.any():
            return
        E, c = E[dep], c[dep]
        coef = self._mm(c, T)
        full = np.all(coef != 0, axis=1)
        if not full.any():
            return
        E, coef = E[full], coef[full]
        V = np.zeros((len(E), self.n), dtype=np.int64)
        V[:, S] = coef
        V[np.arange(len(E)), E] = self._neg(np.ones(len(E), dtype=np.int64))
        ok = self.is_logical(V)
        for v in V[ok]:
            self.hits.append(v)
            if self.first_only:
                return


def _worker(args):
    engine, w, roots, deadline, first_only = args
    hits, nodes, done = engine.search_level(w, roots, deadline, first_only)
    return hits, nodes, done


def _normalize(F: Field, v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v
    return np.asarray(F.mul(F.inv(int(v[nz[0]])), v), dtype=np.int64)


def _lex_min(F: Field, vs) -> np.ndarray:
    return min((_normalize(F, v) for v in vs), key=lambda v: tuple(v.tolist()))


def information_set_bound(F: Field, K: np.ndarray, eng: _Engine, iters: int, rng) -> np.ndarray | None:
    """Lightest logical seen among reduced kernel bases under random column orders."""
    if K.shape[0] == 0 or iters <= 0:
        return None
    best = None
    n = K.shape[1]
    for _ in range(iters):
        perm = rng.permutation(n)
        R = rref(F, K[:, perm])[0]
        V = np.zeros_like(R)
        V[:, perm] = R
        if V.shape[0] > 1:
            # also pairwise differences of the two lightest rows classes
            V = np.vstack([V, eng._sub(V[:-1], V[1:])])
        ok = eng.is_logical(V)
        for v in V[ok]:
            if best is None or np.count_nonzero(v) < np.count_nonzero(best):
                best = v
    return best


def _verify_witness(F: Field, H: np.ndarray, L: np.ndarray, v: np.ndarray) -> bool:
    if H.size and np.any(matmul(F, H, v)):
        return False
    return bool(L.shape[0]) and bool(np.any(matmul(F, L, v)))


def min_logical_weight(qy: DistanceQuery, lex_min: bool = False) -> DistanceResult:
    """Iterative deepening over weight; exact when a hit is found within cap and budget.

    With ``lex_min`` the final level is completed so the witness is the
    lexicographically smallest normalized minimum-weight logical; otherwise
    the witness is the first one met in the fixed enumeration order (or the
    warm-start witness when that already matches the certified bound).
    """
    t0 = time.perf_counter()
    deadline = t0 + qy.time_budget
    F = qy.F
    H, R = qy.kernel_of, qy.excluded_rowspace
    if R.shape[0] and H.size and np.any(matmul(F, H, R.T)):
        raise ValueError("excluded row space is not contained in the kernel")
    L = _logical_detector(F, H, R)
    eng = _Engine(F, H, L)
    n = H.shape[1]
    if L.shape[0] == 0:
        return DistanceResult(
            LOWER_BOUND_ONLY, None, None, qy.weight_cap + 1, None, time.perf_counter() - t0, 0, {"no_logicals": True}
        )
    rng = np.random.default_rng(qy.seed)
    K = kernel(F, H) if H.size else np.eye(n, dtype=np.int64)
    warm = information_set_bound(F, K, eng, qy.warm_start, rng)
    ub = int(np.count_nonzero(warm)) if warm is not None else None
    nodes = 0
    pool = ProcessPoolExecutor(qy.threads) if qy.threads > 1 else None
    try:
        for w in range(1, qy.weight_cap + 1):
            if ub is not None and ub == w and not lex_min:
                return _done(F, H, L, EXACT, w, warm, w, ub, t0, nodes, {"witness_source": "warm_start"})
            hits, level_nodes, complete = _run_level(eng, pool, qy.threads, w, deadline, not lex_min)
            nodes += level_nodes
            if hits:
                wit = _lex_min(F, hits) if (lex_min and complete) else _normalize(F, hits[0])
                info = {"witness_source": "search", "lex_min": bool(lex_min and complete)}
                return _done(F, H, L, EXACT, w, wit, w, w, t0, nodes, info)
            if not complete:
                return _done(F, H, L, TIMEOUT, None, None, w, ub, t0, nodes, {})
        return _done(F, H, L, LOWER_BOUND_ONLY, None, None, qy.weight_cap + 1, ub, t0, nodes, {})
    finally:
        if pool is not None:
            pool.shutdown()


def _run_level(eng: _Engine, pool, threads: int, w: int, deadline: float, first_only: bool):
    roots = list(range(eng.n))
    if pool is None:
        return eng.search_level(w, roots, deadline, first_only)
    chunks = [roots[i :: threads * 4] for i in range(threads * 4)]
    hits, nodes, complete = [], 0, True
    for h, nd, done in pool.map(_worker, [(eng, w, c, deadline, first_only) for c in chunks]):
        hits.extend(h)
        nodes += nd
        complete &= done
    if hits:
        # deterministic value; keep witness choice independent of scheduling
        hits.sort(key=lambda v: tuple(v.tolist()))
    return hits, nodes, complete or bool(hits)


def _done(F, H, L, status, weight, witness, lb, ub, t0, nodes, info) -> DistanceResult:
    if witness is not None:
        if not _verify_witness(F, H, L, witness) or np.count_nonzero(witness) != weight:
            raise AssertionError("witness failed independent verification")
    return DistanceResult(status, weight, witness, lb, ub, time.perf_counter() - t0, nodes, info)


def css_distance(code, budget: float = 600.0, cap: int = 10, seed: int = 0, threads: int = 1, lex_min: bool = False):
    """(d_X, d_Z) with d_X over ker H_Z minus rs H_X and d_Z the mirror."""
    dx = min_logical_weight(DistanceQuery(code.F, code.HZ, code.HX, cap, budget, seed, threads), lex_min)
    dz = min_logical_weight(DistanceQuery(code.F, code.HX, code.HZ, cap, budget, seed, threads), lex_min)
    return dx, dz


def combined_distance(dx: DistanceResult, dz: DistanceResult) -> tuple[int | None, int]:
    """(exact d or None, certified lower bound on d)."""
    lb = min(dx.certified_lower_bound, dz.certified_lower_bound)
    ws = [r.weight for r in (dx, dz) if r.exact]
    if dx.exact and dz.exact:
        return min(ws), min(ws)
    if ws and min(ws) <= lb:
        return min(ws), min(ws)
    return None, lb


def classical_min_weight(F: Field, H, cap: int = 10, budget: float = 600.0, seed: int = 0) -> DistanceResult:
    return min_logical_weight(DistanceQuery(F, asmat(H), None, cap, budget, seed))


def min_weight_solution(F: Field, H, s, budget: float = 60.0, max_weight: int | None = None):
    """Minimum-weight x with H x = s by increasing-support search.

    Returns (x, exact). If the budget expires, x is some feasible solution and
    exact is False. A support S of the current size w admits a solution iff s
    lies in the span of H[:, S]; no lighter solution exists at that point, so
    every solution on S has full support.
    """
    H = asmat(H)
    s = np.asarray(s, dtype=np.int64)
    n = H.shape[1]
    if not np.any(s):
        return np.zeros(n, dtype=np.int64), True
    fallback = solve(F, H, s)
    if fallback is None:
        raise ValueError("syndrome is not in the column space of H")
    t0 = time.perf_counter()
    max_weight = n if max_weight is None else max_weight
    for w in range(1, max_weight + 1):
        for count, S in enumerate(combinations(range(n), w)):
            if (count & 1023) == 1023 and time.perf_counter() - t0 > budget:
                return fallback, False
            R, r, piv = rref(F, np.hstack([H[:, S], s[:, None]]))
            if piv and piv[-1] == w:
                continue
            x = np.zeros(n, dtype=np.int64)
            x[np.asarray(S)[piv]] = R[:r, -1]
            return x, True
    return fallback, False
