r"""
Subcode McEliece: keys, encryption, decryption
==============================================

The public key spans a random l-dimensional subcode of a secret Hermitian
code; the owner decodes with an error-correcting pair.
"""

import numpy as np

from schurclosure import HermitianSpec, decrypt, encrypt, keygen
from schurclosure.cryptosystem import format_public_key

spec = HermitianSpec(7, 170)
pk, sk = keygen(spec, l=50, seed=1)
print(f"public key: n={pk.n} l={pk.l} t={pk.t}")
print(format_public_key(pk)[:120], "...")

rng = np.random.default_rng(7)
msg = pk.field.random(rng, pk.l)
y = encrypt(pk, msg, seed=2)
print("errors added:", np.count_nonzero(pk.field.sub(y, pk.field.matmul(msg, pk.G))))
print("decrypted ok:", np.array_equal(decrypt(sk, y, pk.t), msg))
