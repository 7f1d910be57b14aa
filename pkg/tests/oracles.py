"""Brute-force reference implementations used only by the tests.

Everything here is plain numpy over prime fields and shares no code with the
package, so agreement is an independent check.
"""

import itertools

import numpy as np


def rank_mod_p(M, p):
    M = np.array(M, dtype=np.int64) % p
    r = 0
    rows, cols = M.shape if M.ndim == 2 else (0, 0)
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
    return r


def all_vectors(q, n):
    return np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)


def span(R, p):
    R = np.asarray(R, dtype=np.int64)
    n = R.shape[1]
    if R.shape[0] == 0:
        return {tuple([0] * n)}
    C = all_vectors(p, R.shape[0])
    return {tuple(v) for v in (C @ R) % p}


def min_logical_weight(H, R, p):
    """min |v| with H v = 0 and v outside rs(R); None if there is none."""
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[1]
    V = all_vectors(p, n)
    if H.shape[0]:
        V = V[~np.any((V @ H.T) % p, axis=1)]
    rs = span(np.asarray(R, dtype=np.int64).reshape(-1, n), p)
    ws = [int(np.count_nonzero(v)) for v in V if tuple(v) not in rs]
    return min(ws) if ws else None


def min_weight_coset(H, s, p):
    """Minimum weight of any e with H e = s."""
    H = np.asarray(H, dtype=np.int64)
    V = all_vectors(p, H.shape[1])
    ok = np.all((V @ H.T) % p == np.asarray(s) % p, axis=1)
    return int(np.count_nonzero(V[ok], axis=1).min())
