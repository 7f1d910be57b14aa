"""Dense linear algebra over GF(q).

Matrices are 2-D ``int64`` numpy arrays of element indices; the field is
passed alongside. Pivoting always takes the first nonzero entry in column
order, so every result is deterministic.
"""

from __future__ import annotations

import json

import numpy as np

from .gf import Field, parse_field


class ShapeMismatch(ValueError):
    pass


def asmat(M) -> np.ndarray:
    return np.array(M, dtype=np.int64, ndmin=2)


def matmul(F: Field, A, B) -> np.ndarray:
    """Matrix (or matrix-vector) product over F."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise ShapeMismatch(f"{A.shape} @ {B.shape}")
    if F.s == 1:
        return (A @ B) % F.p
    vec = B.ndim == 1
    B2 = B[:, None] if vec else B
    out = np.zeros(A.shape[:-1] + B2.shape[1:], dtype=np.int64)
    for k in range(A.shape[-1]):
        out = F.add(out, F.mul(A[..., k, None], B2[k]))
    return out[..., 0] if vec else out


def kron(F: Field, A, B) -> np.ndarray:
    A, B = asmat(A), asmat(B)
    if F.s == 1:
        return np.kron(A, B) % F.p
    out = F.mul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def scale(F: Field, c: int, M) -> np.ndarray:
    return np.asarray(F.mul(c, np.asarray(M, dtype=np.int64)), dtype=np.int64)


def rref(F: Field, M) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    R = asmat(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    prime = F.s == 1
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.mul(F.inv(piv), R[r])
        f = R[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            if prime:
                R[hit] = (R[hit] - f[hit, None] * R[r]) % p
            else:
                R[hit] = F.sub(R[hit], F.mul(f[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: Field, M) -> int:
    M = asmat(M)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return rref(F, M)[1]


def kernel(F: Field, M) -> np.ndarray:
    """Basis of the right null space, one vector per row."""
    M = asmat(M)
    cols = M.shape[1]
    R, r, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        if r:
            K[t, pivots] = F.neg(R[:r, f])
    return K


def stack_kernel_intersection(F: Field, A, B) -> np.ndarray:
    A, B = asmat(A), asmat(B)
    if A.shape[1] != B.shape[1]:
        raise ShapeMismatch(f"column counts {A.shape[1]} != {B.shape[1]}")
    return kernel(F, np.vstack([A, B]))


def row_basis(F: Field, M) -> np.ndarray:
    """Rows of the RREF spanning rs(M)."""
    R, r, _ = rref(F, M)
    return R[:r]


def in_row_space(F: Field, M, v) -> bool:
    M = asmat(M)
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != M.shape[1]:
        raise ShapeMismatch(f"vector length {v.shape[-1]} != {M.shape[1]}")
    return rank(F, np.vstack([M, v])) == rank(F, M)


def solve(F: Field, M, b) -> np.ndarray | None:
    """Some x with M x = b, or None when the system is inconsistent."""
    M = asmat(M)
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (M.shape[0],):
        raise ShapeMismatch(f"rhs length {b.shape} vs {M.shape[0]} rows")
    R, r, pivots = rref(F, np.hstack([M, b[:, None]]))
    if pivots and pivots[-1] == M.shape[1]:
        return None
    x = np.zeros(M.shape[1], dtype=np.int64)
    x[pivots] = R[:r, -1]
    return x


class RowSpace:
    """Precomputed membership test for rs(M), vectorized over many vectors.

    Uses rs(M) = ker(M)^perp: v is in the row space iff N v = 0 where the
    rows of N span ker(M).
    """

    def __init__(self, F: Field, M, n: int | None = None):
        M = np.asarray(M, dtype=np.int64)
        if M.ndim != 2:
            M = M.reshape(0, n) if M.size == 0 else asmat(M)
        self.F = F
        self.n = M.shape[1]
        self.dim = rank(F, M)
        self.detector = kernel(F, M)

    def contains(self, V) -> np.ndarray | bool:
        V = np.asarray(V, dtype=np.int64)
        if self.detector.shape[0] == 0:
            return True if V.ndim == 1 else np.ones(V.shape[0], dtype=bool)
        S = matmul(self.F, V, self.detector.T)
        return ~np.any(S, axis=-1)


def weight(v) -> int:
    return int(np.count_nonzero(v))


def matrix_to_json(F: Field, M) -> str:
    return json.dumps({"field": F.descriptor, "data": asmat(M).tolist()})


def matrix_from_json(text: str) -> tuple[Field, np.ndarray]:
    obj = json.loads(text)
    F = parse_field(obj["field"])
    data = obj["data"]
    M = np.array(data, dtype=np.int64).reshape(len(data), -1 if data else 0)
    if M.size and (M.min() < 0 or M.max() >= F.q):
        raise ValueError("matrix entry outside the field")
    return F, M
