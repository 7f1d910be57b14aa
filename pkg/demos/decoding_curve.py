"""
Logical error rate of a small BB code
=====================================

X errors on [[24,4,4]]_3, minimum-weight decoding, then the heuristic fit
p_L = p^((d_fit+1)/2) exp(c0 + c1 p + c2 p^2).
"""

import numpy as np

from quditldpc.bb import BBSpec, build_bb
from quditldpc.channel import fit_csv, fit_heuristic, run_experiment

code = build_bb(BBSpec.from_strings("3", 4, 3, "x + x^2", "x^3 + 2*y + 2*y^2"))
grid = np.linspace(0.02, 0.12, 6)

# every (seed, grid point, block of trials) gets its own Philox stream
rec = run_experiment(code, grid, trials=20000, seed=7, code_id="bb24")
for p, f, pl, se in zip(rec.grid, rec.failures, rec.p_L, rec.stderr):
    print(f"p={p:.3f}  failures={f:5d}  p_L={pl:.4f} +- {se:.4f}")

fit = fit_heuristic(rec)
print(f"d_fit = {fit.d_fit:.2f}, slope (d_fit+1)/2 = {(fit.d_fit + 1) / 2:.2f}")

# columns ready for plotting
print(fit_csv(rec, fit))
