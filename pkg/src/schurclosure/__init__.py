"""Schur-product closures of linear codes and structural attacks on subcode McEliece."""

from .gf import GF, FieldError, field, field_of_order
from .codes import (CodeError, LinearCode, closure, code_from_rows, dual, intersect_codes,
                    puncture, random_code, random_subcode, schur_power, schur_product, shorten,
                    square, subfield_subcode, sum_codes)
from .families import (GrsSpec, HermitianSpec, code_of, grs_code, hermitian_code,
                       random_grs_spec, square_of)
from .ecp import (Certificate, DecodingError, EcpDecoder, EcpPair, build_ecp, ecp_decode,
                  ecp_validate)
from .cryptosystem import ConstraintWarning, FormatError, PublicKey, SecretKey, decrypt, \
    encrypt, keygen
from .attack import (AttackFailure, attack_recover_code, attack_with_shortening, distinguish,
                     grs_full_attack, hermitian_full_attack, ss_recover)

__version__ = "0.1.0"
