r"""
Finite fields and linear codes
==============================

Field arithmetic, RREF canonical forms, duals and Schur products.
"""

import numpy as np

from schurclosure import code_from_rows, dual, field_of_order, schur_product, square
from schurclosure import linalg

F = field_of_order(49)
print(F, "modulus", F.modulus, "primitive", F.primitive)
x = np.arange(1, 8)
print("x * x^-1:", F.mul(x, F.inv(x)))

# every code is stored as its RREF generator, so equality is array equality
G = F.random(np.random.default_rng(0), (4, 10))
C = code_from_rows(F, G)
print(C, "pivots", C.pivots)
print("same code from shuffled rows:", C == code_from_rows(F, G[::-1]))

D = dual(C)
print("dim C + dim C^perp =", C.k + D.k)
print("C * C^perp is zero?", not np.any(F.matmul(C.gen, D.gen.T)))

# Schur square of a random [10, 4] code: generically min(n, k(k+1)/2)
print("dim C^(2) =", square(C).k)
print("dim C * C^perp =", schur_product(C, D).k)

R, r, P = linalg.rref(field_of_order(2), [[1, 1, 0], [0, 1, 1]])
print(linalg.format_matrix(R))
