"""
La-cross codes and a small random search
========================================
"""

from quditldpc.gf import GF
from quditldpc.hgp import ClassicalCode, LacrossSpec, build_lacross
from quditldpc.distance import css_distance
from quditldpc.search import SearchConfig, search

# open boundaries: the seed is an (n_c - k) x n_c band of h(x) = a0 + a1 x + a2 x^k
for q, n_c, k, al in [(3, 8, 3, (2, 1, 1)), (5, 6, 2, (4, 4, 3)), (7, 5, 2, (6, 5, 1))]:
    spec = LacrossSpec(GF(q), n_c, k, al)
    seed = ClassicalCode(spec.F, spec.seed_matrix())
    code = build_lacross(spec)
    dx, dz = css_distance(code, budget=120, cap=6)
    # the transposed seed has no codewords, so only k^2 survives
    print(f"GF({q}) seed [{seed.n},{seed.k}] k^T={seed.kT} -> [[{code.n},{code.k},{min(dx.weight, dz.weight)}]]")

# periodic boundaries double everything
per = build_lacross(LacrossSpec(GF(3), 6, 2, (1, 1, 1), "periodic"))
print("periodic", per)

# random search with k-first filtering; rejected candidates never reach the distance engine
cfg = SearchConfig(family="lacross", fields=[3], n_c=(3, 7), k_values=(2, 3), samples=60, seed=7,
                   distance_floor=4, distance_cap=6, distance_budget=30)
for e in search(cfg):
    print(e.id, e.definition["n_c"], e.definition["k"], e.definition["alphas"], e.params)
