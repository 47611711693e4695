"""Build a matrix with prescribed bouquets and check they come back out."""

from markov_complexity import (BouquetSpec, IntMatrix, bouquets, generalized_lawrence, kernel_basis,
                               rank)
from markov_complexity.lawrence import kt_lawrence_specs

s = 4
base = IntMatrix([[1, s, s * s - s, s * s - 1] + [1] * 8])
specs = kt_lawrence_specs()
L = generalized_lawrence(base, specs)
print(f"{L.m}x{L.n} matrix of rank {rank(L)}")
for row in L.rows:
    print(" ".join(f"{x:5d}" for x in row))

dec = bouquets(L)
print(f"\n{dec.q} bouquets recovered")
for cols, cb in zip(dec.bouquets, dec.cB):
    print("  columns", [c + 1 for c in cols], "direction", [cb[c] for c in cols])
print("bouquet kernel equals base kernel:", kernel_basis(dec.AB).same_lattice(kernel_basis(base)))

# a one-line spec with lambda solved by extended Euclid
print("\nsolved lambda for (3, 7, 2021):", BouquetSpec.solved((3, 7, 2021)).lam)
