"""
Simplex codes and qudit SHYPS codes
===================================
"""

import warnings

import numpy as np

from quditldpc.shyps import build_simplex, build_shyps, nonexistence_trials, weights_table

# columns of G are the points of PG(r-1, q); every nonzero codeword has weight q^(r-1)
S = build_simplex(3, 3)
print("S(3,3): n =", S.n, "d =", S.d)
print(S.G)

# parity-check weights: min stays at 3, max grows like r + 1
for r, lo, hi in weights_table(3, 5, 3):
    print(f"q=3 r={r}: row weights {lo}..{hi}")

# SHYPS: n = n_r^2, k = r^2 from ranks of the bare logicals and stabilizers
for q, r in [(2, 3), (3, 3), (3, 4), (5, 3)]:
    code = build_shyps(q, r)
    print(f"SHYPS({q},{r}): n={code.n} k={code.k} d={code.d_analytic} commute={code.commutation_ok()}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    print("r=2 toy:", build_shyps(3, 2).k)

# no three-term cyclic check for odd q: random h never gives a primitive gcd
print("primitive gcd hits:", nonexistence_trials(3, 3, 200, np.random.default_rng(0)), "/ 200")
