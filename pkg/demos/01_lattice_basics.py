#!/usr/bin/env python3
"""Tour of the lattice layer: bases, duals, enumeration, minima, distances."""

import numpy as np

from latgauss import (
    LatticeBasis,
    dist_to_lattice,
    dual_basis,
    enumerate_in_ball,
    gram_schmidt,
    integer_lattice,
    successive_minima,
)

print("=" * 64)
print("A skewed basis of the integer lattice Z^2")
print("=" * 64)
basis = LatticeBasis.from_rows([[1, 0], [7, 1]])
print("rows:\n", basis.vectors)
print("covolume det =", basis.det)

gs = gram_schmidt(basis)
print("Gram-Schmidt norms:", gs.norms)
print("mu coefficients:\n", gs.mu)

dual = dual_basis(basis)
print("dual basis rows:\n", dual.vectors)
print("det * dual det =", basis.det * dual.det)

print()
print("=" * 64)
print("Every lattice point within distance 2.2 of (0.4, 0.4)")
print("=" * 64)
points = enumerate_in_ball(basis, [0.4, 0.4], 2.2)
for p in points:
    print(f"  ({p[0]:5.1f}, {p[1]:5.1f})   |v| = {np.linalg.norm(p):.4f}")
print("count:", len(points))

print()
print("=" * 64)
print("Successive minima and a closest-vector query")
print("=" * 64)
print("minima of the skewed Z^2 basis:", successive_minima(basis).values)
print("minima of diag(1, 2, 3):",
      successive_minima(LatticeBasis.from_rows(np.diag([1.0, 2.0, 3.0]))).values)

z3 = integer_lattice(3)
x = [0.4, 0.7, -1.2]
distance, closest = dist_to_lattice(z3, x)
print(f"dist({x}, Z^3) = {distance:.4f}, closest point {closest}")
