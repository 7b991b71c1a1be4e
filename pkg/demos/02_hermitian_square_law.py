r"""
Squares and closures of Hermitian codes
=======================================

For one-point Hermitian codes C(m) over GF(q0^2) the square is C(2m) once
m >= 2g+1, and a code with m <= (n-2)/2 equals its own 2-closure. Random
codes behave differently: their squares fill the space.
"""

from schurclosure import HermitianSpec, closure, hermitian_code, random_code, square
from schurclosure.experiments import verify_theorems

q0 = 4
n, g = q0**3, q0 * (q0 - 1) // 2
for m in (13, 18, 24, 31):
    C = hermitian_code(HermitianSpec(q0, m))
    S = square(C)
    print(f"m={m:2d}  k={C.k:2d}  dim C^(2)={S.k:2d}  "
          f"C^(2)==C(2m): {S == hermitian_code(HermitianSpec(q0, 2 * m))}  "
          f"closed: {closure(C) == C}")

R = random_code(HermitianSpec(q0, 0).field, n, 15, seed=0)
print("random [64,15]: dim square", square(R).k)

cases = verify_theorems((2, 3, 4))
print(sum(c.passed for c in cases), "of", len(cases), "exact checks hold")
