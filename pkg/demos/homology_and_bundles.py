"""
Chain complexes, HDX products and twisted circle bundles
========================================================
"""

import numpy as np

from quditldpc.complexes import (
    build_hdx_complex,
    build_twisted_bundle,
    check_bundle_conditions,
    cosystole,
    cycle_graph,
    random_circle_bundle,
    signed_reflection,
    systole,
    tensor_complex,
    two_term,
)
from quditldpc.gf import GF

F = GF(3)
rng = np.random.default_rng(0)

# without the (-1)^i sign the tensor boundary squares to 2 dA (x) dB, nonzero over GF(3)
A = two_term(F, F.random((3, 4), rng))
B = two_term(F, F.random((2, 3), rng))
print("koszul d^2 = 0:", tensor_complex(A, B).squares_to_zero())
print("no sign d^2 = 0:", tensor_complex(A, B, koszul=False).squares_to_zero())

# Kunneth: betti numbers of the product are convolutions
C = tensor_complex(A, B)
print("betti A", A.betti(), "B", B.betti(), "A(x)B", C.betti())

# HDX product of a 3x3 torus with a 2-bit repetition map
X = tensor_complex(cycle_graph(F, 3), cycle_graph(F, 3))
Y = two_term(F, [[1, 2]])
H = build_hdx_complex(X, Y)
print("dims", H.dims, "k =", H.homology_dim(1), "=", X.homology_dim(1), "*", Y.homology_dim(1))
print("S_1 =", systole(H, 1), "=", systole(X, 1), "*", systole(Y, 1))
print("S^1 =", cosystole(H, 1), "=", cosystole(X, 1))

# a random circle bundle: k equals b_1 of the base
base, fiber, conn = random_circle_bundle(F, rng)
bun = build_twisted_bundle(base, fiber, conn)
print("bundle k =", bun.code.k, " b_1(base) =", base.homology_dim(1))

# reflections flip the fiber orientation, which the homology notices
bad = check_bundle_conditions(base, fiber, {next(iter(conn)): signed_reflection(F, fiber.dims[1])})
print("condition v:", bad["v"])
