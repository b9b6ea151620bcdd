"""Riesz projections by contour quadrature, multiplicities, and the trace.

Run with: python3 demos/riesz_calculus.py
"""

import numpy as np

import soclelab as sl
from soclelab.sampling import random_element, random_maximal_element, rng_for

spec = sl.AlgebraSpec((3,))
a = sl.Element(spec, [np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 5.0]])])
print("spectrum:", [(v, m) for v, m in sl.spectrum(a).points])

# Contour-integrate the resolvent around 2; the result is the spectral
# projector onto the generalized eigenspace, here of rank two.
rep = sl.riesz_projection(a, [2.0])
print(f"projection at 2: multiplicity {rep.multiplicity}, "
      f"idempotency defect {rep.idempotency_defect:.2e}")

# Multiplicity has two independent routes: count perturbed spectral
# values near the target, or take the rank of the projection. They
# must agree, and both see the Jordan block at 2.
print(f"multiplicity at 2: {sl.multiplicity(a, 2.0)}")
print(f"multiplicity at 5: {sl.multiplicity(a, 5.0)}")

# The spectral trace is the multiplicity-weighted value sum, certified
# against the diagonal sum.
print(f"spectral trace {sl.spectral_trace(a):.6f}, "
      f"classical {sl.classical_trace(a):.6f}")

# Maximal elements split into rank-one spectral projections.
spec2 = sl.AlgebraSpec((2, 2))
b = random_maximal_element(spec2, rng_for(5))
d = sl.diagonalize_maximal(b)
print(f"maximal element over {spec2.block_sizes}: {len(d.values)} values, "
      f"reconstruction residual {d.residual:.2e}")
for v, p in zip(d.values, d.projections):
    print(f"  value {v:+.3f} -> projection of rank {sl.classical_rank(p)}")

# Corner consistency: computing inside p A p gives the same nonzero
# spectrum, rank, and trace as computing in the ambient algebra.
p = sl.matrix_unit(spec2, 0, 0, 0) + sl.matrix_unit(spec2, 1, 1, 1)
x = random_element(spec2, rng_for(6))
corner = sl.pAp_consistency(x, p)
print(f"corner algebra {corner.subalgebra.block_sizes}: "
      f"spectra match {corner.nonzero_spectra_match}, "
      f"rank {corner.rank_compressed} vs {corner.rank_ambient}, "
      f"traces agree {corner.trace_match}")
