"""The m*n-parameter family behind every placement.

Each feedback assigning the requested structure corresponds to a block
parameter matrix K.  Chains built from the shift pencils are linear in K,
the map is exactly invertible, and almost every K gives an invertible
eigenvector matrix.
"""

import numpy as np

import poleplace as pp

rng = np.random.default_rng(1)

A = rng.standard_normal((5, 5))
B = rng.standard_normal((5, 2))
sys = pp.System(A, B)
spec, _ = pp.normalize_ordering(
    pp.EigStructure((-1 + 2j, -1 - 2j, -3.0), ((1,), (1,), (3,)))
)
print("target eigenvalues:", spec.eigenvalues)
print("block orders:", spec.block_orders)
print("free real parameters: m*n =", sys.m * sys.n)

print()
print("Two different K draws give two different feedbacks, same structure:")
placer = pp.Placer(sys, spec)
for i in range(2):
    res = placer.place(pp.ParameterMatrix.random(spec, sys.m, rng))
    ev = np.sort_complex(np.round(np.linalg.eigvals(sys.A + sys.B @ res.F), 5))
    print(f"  draw {i}: |F| = {pp.fro_norm(res.F):8.3f}  eigenvalues = {ev}")

print()
print("Recovering K from a chain set is exact (orthonormal kernel bases):")
K = pp.ParameterMatrix.random(spec, sys.m, rng)
chains = placer.build_chains(K)
back = placer.recover_parameters(chains)
err = max(np.abs(a - b).max() for a, b in zip(K.blocks, back.blocks))
print(f"  max |K - recover(build(K))| = {err:.2e}")

print()
print("A feedback from any other tool joins the family too:")
import scipy.signal

poles = np.array([-1.0, -2.0, -3.0, -4.0, -5.0])
ext = scipy.signal.place_poles(sys.A, sys.B, poles)
F_ext = -ext.gain_matrix
simple = pp.EigStructure(tuple(poles.tolist()), tuple((1,) for _ in poles))
chains = pp.chains_from_feedback(sys, simple, F_ext)
K_ext = pp.recover_parameters(sys, simple, chains)
res = pp.place(sys, simple, K_ext)
print(f"  |F_external - F(K_recovered)| = {np.abs(res.F - F_ext).max():.2e}")

print()
print("Singular draws have measure zero; 200 random draws:")
failures = 0
for _ in range(200):
    try:
        placer.place(pp.ParameterMatrix.random(spec, sys.m, rng))
    except pp.SingularMatrixError:
        failures += 1
print(f"  singular eigenvector matrices: {failures}/200")
