r"""
Recovering the secret code by closure
=====================================

Only the public matrix is used: the square of the public code, then the
closure. The result is compared with the secret code, and an ECP decoder
built from it reads ciphertexts.
"""

import time

import numpy as np

from schurclosure import HermitianSpec, encrypt, hermitian_code, keygen
from schurclosure.attack import attack_recover_code, distinguish, hermitian_full_attack

spec = HermitianSpec(7, 170)
pk, _ = keygen(spec, l=50, seed=11)

rep = distinguish(pk.code())
print(f"square dim {rep.sq_dim} vs random expectation {rep.random_expectation}: {rep.verdict}")

t0 = time.perf_counter()
rec = attack_recover_code(pk.code())
print(f"closure: [{rec.code.n}, {rec.code.k}] in {time.perf_counter() - t0:.2f} s")
print("equals the secret C(170 P):", rec.code == hermitian_code(spec))

_, attacker = hermitian_full_attack(pk, spec)
msg = pk.field.random(np.random.default_rng(3), pk.l)
print("attacker decrypts:", np.array_equal(attacker(encrypt(pk, msg, seed=4)), msg))
