"""
Bivariate bicycle codes over GF(q)
==================================

Rebuild the bundled BB golden rows, compare the two ways of getting k,
and certify distances for the small ones.
"""

import time

from quditldpc.bb import BBSpec, bb_k_coprime, build_bb, extend_scalars
from quditldpc.cli import load_golden
from quditldpc.distance import css_distance

rows = load_golden()["table2"]

# build every code; k comes from ranks of H_X and H_Z
t0 = time.perf_counter()
for r in rows:
    spec = BBSpec.from_strings(r["field"], r["l"], r["m"], r["A"], r["B"])
    code = build_bb(spec)
    # when l, m and q are pairwise coprime, k is also 2 deg gcd(A(z), B(z), z^lm - 1)
    short = bb_k_coprime(spec) if spec.is_coprime else "-"
    print(f"GF({r['field']}) l={r['l']} m={r['m']}  [[{code.n},{code.k}]]  gcd route: {short}")
print(f"built {len(rows)} codes in {time.perf_counter() - t0:.2f}s")

# exact distance on the smallest code, both sides
spec = BBSpec.from_strings("3", 4, 3, "x + x^2", "x^3 + 2*y + 2*y^2")
code = build_bb(spec)
dx, dz = css_distance(code, budget=60, cap=6)
print("d_X", dx.weight, dx.status, "witness", dx.witness)
print("d_Z", dz.weight, dz.status)

# same matrices read over GF(9): n, k and d do not move
big = extend_scalars(code, 2)
dx9, dz9 = css_distance(big, budget=60, cap=6)
print(big, "d =", min(dx9.weight, dz9.weight))
