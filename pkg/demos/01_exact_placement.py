"""Exact placement walkthrough: simple, repeated, and defective targets.

Every closed-loop Jordan structure that Rosenbrock's conditions allow can
be placed exactly, including eigenvalues that coincide with open-loop ones
and blocks larger than the geometric multiplicity.
"""

import numpy as np

import poleplace as pp

rng = np.random.default_rng(0)

print("=" * 70)
print("1. Double integrator, simple poles {-1, -2}")
print("=" * 70)
sys = pp.System(np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0], [1.0]]))
spec = pp.EigStructure((-1.0, -2.0), ((1,), (1,)))
K = pp.ParameterMatrix.random(spec, sys.m, rng)
res = pp.place(sys, spec, K)
print("F =", res.F)
print("closed-loop eigenvalues:", np.sort(np.linalg.eigvals(sys.A + sys.B @ res.F)))
print(f"residual = {res.residual:.2e}")

print()
print("=" * 70)
print("2. A defective request: both eigenvalues at zero in one Jordan block")
print("=" * 70)
spec = pp.EigStructure((0.0,), ((2,),))
res = pp.place(sys, spec, pp.ParameterMatrix.random(spec, sys.m, rng))
print("F =", res.F, " (the open loop already is a single nilpotent block)")

print()
print("=" * 70)
print("3. Conjugate pair with order-2 mini-blocks on a random (6,2) system")
print("=" * 70)
A = rng.standard_normal((6, 6))
B = rng.standard_normal((6, 2))
sys = pp.System(A, B)
raw = pp.EigStructure((-1.0, -2 + 1j, -2 - 1j), ((2,), (2,), (2,)))
spec, _ = pp.normalize_ordering(raw)
report = pp.check_admissible(spec, sys)
print("controllability indices:", report.controllability_indices)
print("requested invariant degrees:", report.invariant_degrees)
print("admissible:", report.satisfied)
res = pp.place(sys, spec, pp.ParameterMatrix.random(spec, sys.m, rng))
print(f"residual = {res.residual:.2e}, F is real: {np.isrealobj(res.F)}")
ev = np.linalg.eigvals(sys.A + sys.B @ res.F)
print("closed-loop eigenvalues:", np.sort_complex(np.round(ev, 6)))

print()
print("=" * 70)
print("4. Placing on top of an open-loop eigenvalue")
print("=" * 70)
lam_open = float(np.linalg.eigvals(A).real.max())
spec = pp.EigStructure(
    (lam_open, -3.0, -4.0, -5.0, -6.0, -7.0),
    ((1,), (1,), (1,), (1,), (1,), (1,)),
)
res = pp.place(sys, spec, pp.ParameterMatrix.random(spec, sys.m, rng))
print(f"kept open-loop eigenvalue {lam_open:.4f}, residual = {res.residual:.2e}")
