"""Code-capacity simulation of qudit X errors with minimum-weight decoding."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations, product

import numpy as np

from .bb import CssCode
from .distance import min_weight_solution
from .gf import Field
from .linalg import RowSpace, ShapeMismatch, asmat, matmul, rref

BLOCK = 1024  # trials per RNG substream
TABLE_LIMIT = 1 << 21


class InsufficientData(ValueError):
    pass


class GridOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ChannelModel:
    """Each qudit independently suffers X^i, i = 1..q-1, with probability p_err/(q-1) each."""

    p_err: float
    q: int

    def __post_init__(self):
        if not 0.0 <= self.p_err <= 1.0:
            raise ValueError(f"p_err = {self.p_err} outside [0, 1]")

    @property
    def per_power(self) -> float:
        return self.p_err / (self.q - 1)


def sample_error(ch: ChannelModel, n: int, rng: np.random.Generator, trials: int | None = None) -> np.ndarray:
    """One error of length n, or a (trials, n) batch."""
    shape = (n,) if trials is None else (trials, n)
    hit = rng.random(shape) < ch.p_err
    vals = rng.integers(1, ch.q, size=shape)
    return np.where(hit, vals, 0).astype(np.int64)


def syndrome(F: Field, H, e) -> np.ndarray:
    H = asmat(H)
    e = np.asarray(e, dtype=np.int64)
    if e.shape[-1] != H.shape[1]:
        raise ShapeMismatch(f"error length {e.shape[-1]} vs {H.shape[1]} columns")
    return matmul(F, e, H.T) if e.ndim > 1 else matmul(F, H, e[:, None])[:, 0]


def ml_decode(F: Field, H, s, budget: float = 60.0) -> tuple[np.ndarray, bool]:
    """Minimum-weight e with H e = s; (e, exact)."""
    return min_weight_solution(F, H, s, budget)


class SyndromeTable:
    """Minimum-weight coset leader for every syndrome, filled by increasing weight.

    Syndromes are indexed by their entries on a set of independent rows of H,
    which determine the rest. Within a weight, the first error in
    (support, values) lexicographic order wins.
    """

    def __init__(self, F: Field, H, limit: int = TABLE_LIMIT):
        H = asmat(H)
        self.F, self.H = F, H
        m, n = H.shape
        _, r, rows = rref(F, H.T)
        self.rows = np.asarray(rows, dtype=np.int64)
        self.size = F.q**r
        if self.size > limit:
            raise ValueError(f"table would hold {self.size} syndromes")
        self.radix = F.q ** np.arange(r, dtype=np.int64)
        self.leader = np.zeros((self.size, n), dtype=np.int8 if F.q < 128 else np.int64)
        filled = np.zeros(self.size, dtype=bool)
        filled[0] = True
        left = self.size - 1
        Hr = H[self.rows]
        # colmul[j, v] = v * H[rows, j]
        colmul = np.stack([np.asarray(F.mul(v, Hr.T), dtype=np.int64) for v in range(F.q)], axis=1)
        w = 0
        while left and w < n:
            w += 1
            vals = np.array(list(product(range(1, F.q), repeat=w)), dtype=np.int64)
            for supp in _chunks(combinations(range(n), w), max(1, 200_000 // len(vals))):
                S = np.asarray(supp, dtype=np.int64)  # (c, w)
                parts = colmul[S[:, None, :], vals[None, :, :]]  # (c, v, w, r)
                syn = _field_sum(F, parts, axis=2).reshape(-1, r)
                idx = syn @ self.radix
                idx_u, first = np.unique(idx, return_index=True)
                new = ~filled[idx_u]
                if not new.any():
                    continue
                idx_u, first = idx_u[new], first[new]
                ci, vi = np.divmod(first, len(vals))
                E = np.zeros((len(idx_u), n), dtype=self.leader.dtype)
                E[np.arange(len(idx_u))[:, None], S[ci]] = vals[vi]
                self.leader[idx_u] = E
                filled[idx_u] = True
                left -= len(idx_u)
                if not left:
                    break
        self.max_weight = w

    def index(self, S) -> np.ndarray:
        S = np.asarray(S, dtype=np.int64)
        return S[..., self.rows] @ self.radix

    def decode(self, S) -> np.ndarray:
        return self.leader[self.index(S)].astype(np.int64)


def _chunks(it, size):
    buf = []
    for x in it:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def _field_sum(F: Field, X, axis):
    if F.s == 1:
        return X.sum(axis=axis) % F.p
    X = np.moveaxis(X, axis, 0)
    acc = X[0]
    for Y in X[1:]:
        acc = np.asarray(F.add(acc, Y), dtype=np.int64)
    return acc


class Decoder:
    """Table decoder when it fits, support search otherwise."""

    def __init__(self, F: Field, H, budget: float = 60.0, table_limit: int = TABLE_LIMIT):
        self.F, self.H, self.budget = F, asmat(H), budget
        try:
            self.table = SyndromeTable(F, self.H, table_limit)
        except ValueError:
            self.table = None

    def decode_batch(self, S) -> tuple[np.ndarray, np.ndarray]:
        """Corrections for a batch of syndromes and a per-row exactness flag."""
        S = np.asarray(S, dtype=np.int64)
        if self.table is not None:
            return self.table.decode(S), np.ones(len(S), dtype=bool)
        out = np.zeros((len(S), self.H.shape[1]), dtype=np.int64)
        ok = np.ones(len(S), dtype=bool)
        for i, s in enumerate(S):
            out[i], ok[i] = ml_decode(self.F, self.H, s, self.budget)
        return out, ok


def substream(seed: int, point: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, point, block])))


@dataclass
class ExperimentRecord:
    code_id: str
    field: str
    seed: int
    grid: list[float]
    trials: list[int]
    failures: list[int]
    timeouts: list[int] = field(default_factory=list)
    p_L: list[float] = field(default_factory=list)
    stderr: list[float] = field(default_factory=list)
    fit: dict | None = None
    simulate_z: bool = False

    def __post_init__(self):
        for f, t in zip(self.failures, self.trials):
            if f > t:
                raise ValueError("failures exceed trials")
        if not self.timeouts:
            self.timeouts = [0] * len(self.grid)
        if not self.p_L:
            self.p_L = [f / t if t else 0.0 for f, t in zip(self.failures, self.trials)]
        if not self.stderr:
            self.stderr = [math.sqrt(p * (1 - p) / t) if t else 0.0 for p, t in zip(self.p_L, self.trials)]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentRecord:
        return cls(**d)


def logical_failures(F: Field, HZ, residuals) -> np.ndarray:
    """Residuals e - e_hat (already in ker H_X) that are not stabilizers."""
    return ~RowSpace(F, HZ, np.asarray(residuals).shape[-1]).contains(residuals)


def run_experiment(
    code: CssCode,
    grid,
    trials: int,
    seed: int = 0,
    code_id: str = "",
    budget: float = 60.0,
    simulate_z: bool = False,
    allow_high_p: bool = False,
) -> ExperimentRecord:
    """X errors, H_X syndromes, failure when the residual leaves rs(H_Z).

    With simulate_z the roles of H_X and H_Z are swapped.
    """
    grid = [float(p) for p in grid]
    if not allow_high_p and any(p > 0.5 for p in grid):
        raise GridOutOfRange("minimum weight is only the likely error for p_err <= 0.5")
    F = code.F
    H, R = (code.HZ, code.HX) if simulate_z else (code.HX, code.HZ)
    dec = Decoder(F, H, budget)
    rs = RowSpace(F, R, code.n)
    fails, touts = [], []
    for i, p in enumerate(grid):
        ch = ChannelModel(p, F.q)
        f = t_out = 0
        for b in range(-(-trials // BLOCK)):
            cnt = min(BLOCK, trials - b * BLOCK)
            E = sample_error(ch, code.n, substream(seed, i, b), cnt)
            S = syndrome(F, H, E)
            Ehat, ok = dec.decode_batch(S)
            resid = np.asarray(F.sub(E, Ehat), dtype=np.int64)
            bad = ~rs.contains(resid)
            f += int(np.sum(bad & ok))
            t_out += int(np.sum(~ok))
        fails.append(f)
        touts.append(t_out)
    eff = [trials - t for t in touts]
    return ExperimentRecord(code_id, F.descriptor, seed, grid, eff, fails, touts, simulate_z=simulate_z)


@dataclass(frozen=True)
class FitResult:
    d_fit: float
    c0: float
    c1: float
    c2: float
    degenerate: bool = False

    def curve(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return p ** ((self.d_fit + 1) / 2) * np.exp(self.c0 + self.c1 * p + self.c2 * p * p)

    def to_dict(self) -> dict:
        return asdict(self)


def fit_heuristic(record: ExperimentRecord) -> FitResult:
    """Weighted least squares for log p_L = a log p + c0 + c1 p + c2 p^2, a = (d_fit + 1) / 2.

    Weights are inverse variances of log p_L, i.e. (p_L / stderr)^2; points
    with zero stderr (noiseless input) get unit weight.
    """
    p = np.asarray(record.grid, dtype=float)
    pl = np.asarray(record.p_L, dtype=float)
    se = np.asarray(record.stderr, dtype=float)
    use = (pl > 0) & (p > 0)
    if use.sum() < 4:
        raise InsufficientData(f"{int(use.sum())} usable grid points, need 4")
    p, pl, se = p[use], pl[use], se[use]
    w = np.where(se > 0, (pl / np.where(se > 0, se, 1.0)) ** 2, 1.0)
    X = np.column_stack([np.log(p), np.ones_like(p), p, p * p])
    y = np.log(pl)
    sw = np.sqrt(w / w.max())
    coef, *_ = np.linalg.lstsq(X * sw[:, None], y * sw, rcond=None)
    a, c0, c1, c2 = (float(c) for c in coef)
    return FitResult(2 * a - 1, c0, c1, c2, degenerate=abs(a) < 1e-6)


def synthetic_record(d_fit: float, c0: float, c1: float, c2: float, grid) -> ExperimentRecord:
    """Noiseless record sampled exactly from the heuristic formula."""
    grid = [float(p) for p in grid]
    pl = FitResult(d_fit, c0, c1, c2).curve(grid).tolist()
    n = len(grid)
    return ExperimentRecord("synthetic", "none", 0, grid, [0] * n, [0] * n, p_L=pl, stderr=[0.0] * n)


def fit_csv(record: ExperimentRecord, fit: FitResult) -> str:
    lines = ["p_err,p_L,stderr,fit_curve"]
    for p, pl, se in zip(record.grid, record.p_L, record.stderr):
        lines.append(f"{p:.6g},{pl:.6g},{se:.6g},{float(fit.curve(p)):.6g}")
    return "\n".join(lines) + "\n"


def timed_experiment(*args, **kw) -> tuple[ExperimentRecord, float]:
    t0 = time.perf_counter()
    rec = run_experiment(*args, **kw)
    return rec, time.perf_counter() - t0
