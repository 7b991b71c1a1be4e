"""McEliece-style encryption with a random subcode of an algebraic code.

The secret is the enclosing code's structure (a GRS or one-point
Hermitian spec) together with an ``l x k`` scrambler ``S``; the public
key is ``G_pub = S G`` and the error capacity ``t``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .codes import LinearCode, code_from_rows, random_full_rank
from .ecp import EcpDecoder, build_ecp, hermitian_ecp_capacity, DecodingError
from .families import GrsSpec, HermitianSpec, code_of, square_of
from .gf import GF, FieldError


class FormatError(ValueError):
    """A key or ciphertext file does not follow the documented grammar."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class ConstraintWarning(UserWarning):
    """The subcode is too small for its square to match the enclosing square."""


@dataclass(frozen=True, eq=False)
class PublicKey:
    field: GF
    G: np.ndarray
    t: int

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def l(self) -> int:
        return self.G.shape[0]

    def code(self) -> LinearCode:
        return code_from_rows(self.field, self.G, self.n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PublicKey) and self.field == other.field
                and self.t == other.t and np.array_equal(self.G, other.G))


@dataclass(frozen=True, eq=False)
class SecretKey:
    spec: GrsSpec | HermitianSpec
    S: np.ndarray
    seed: int
    perm: np.ndarray | None = None

    @property
    def field(self) -> GF:
        return self.spec.field

    def enclosing(self) -> LinearCode:
        return code_of(self.spec)

    def public_matrix(self) -> np.ndarray:
        G = self.field.matmul(self.S, self.enclosing().gen)
        return G[:, self.perm] if self.perm is not None else G

    def __eq__(self, other) -> bool:
        if not isinstance(other, SecretKey) or self.seed != other.seed:
            return False
        same_perm = (self.perm is None and other.perm is None) or (
            self.perm is not None and other.perm is not None
            and np.array_equal(self.perm, other.perm))
        return self.spec == other.spec and np.array_equal(self.S, other.S) and same_perm


def default_t(spec) -> int:
    """Error capacity of the scheme for an enclosing code spec.

    GRS: ``floor((n - k)/2)``. Hermitian: ``floor((d* - 1 - g)/2)`` with
    ``d* = m - 2g + 2``, clamped to ``[1, pair capacity]``.
    """
    if isinstance(spec, GrsSpec):
        return (spec.n - spec.k) // 2
    g = spec.genus
    d_star = spec.m - 2 * g + 2
    t = (d_star - 1 - g) // 2
    return max(1, min(t, hermitian_ecp_capacity(spec)))


def satisfies_square_constraint(spec, l: int) -> bool:
    """``binom(l+1, 2) >= dim C(2E)``: the subcode is large enough to be attacked."""
    return comb(l + 1, 2) >= square_of(spec).k


def keygen(spec, l: int, seed: int, t: int | None = None,
           permute: bool = False) -> tuple[PublicKey, SecretKey]:
    C = code_of(spec)
    if not 0 < l <= C.k:
        raise ValueError(f"subcode dimension l = {l} outside 1..{C.k}")
    if t is None:
        t = default_t(spec)
    if t < 1:
        raise ValueError("error capacity must be >= 1")
    if not satisfies_square_constraint(spec, l):
        warnings.warn(f"l = {l} is below the square constraint; key is attack-resistant "
                      "by size", ConstraintWarning, stacklevel=2)
    F = C.field
    rng = np.random.default_rng(seed)
    S = random_full_rank(F, l, C.k, rng)
    perm = rng.permutation(C.n) if permute else None
    sk = SecretKey(spec, S, seed, perm)
    return PublicKey(F, sk.public_matrix(), t), sk


def encrypt(pk: PublicKey, msg, seed: int, weight: int | None = None) -> np.ndarray:
    """``msg G_pub + e`` with ``e`` of weight exactly ``t`` (or ``weight``)."""
    F = pk.field
    msg = F.asarray(msg)
    if msg.shape != (pk.l,):
        raise ValueError(f"message must have length {pk.l}")
    w = pk.t if weight is None else weight
    rng = np.random.default_rng(seed)
    e = np.zeros(pk.n, dtype=np.int64)
    pos = rng.choice(pk.n, size=w, replace=False)
    e[pos] = F.random(rng, w, nonzero=True)
    return F.add(F.matmul(msg, pk.G), e)


def message_from_codeword(F: GF, G: np.ndarray, c) -> np.ndarray:
    msg = linalg.solve(F, G.T, np.asarray(c, dtype=np.int64))
    if msg is None:
        raise DecodingError("decoded codeword is not in the public code")
    return msg


class Decryptor:
    """Legitimate decryption: ECP decoding in the enclosing code."""

    def __init__(self, sk: SecretKey, t: int | None = None):
        self.sk = sk
        self.t = default_t(sk.spec) if t is None else t
        self.decoder = EcpDecoder(build_ecp(sk.spec, self.t))
        self.G = sk.public_matrix()
        if sk.perm is not None:
            self.inverse_perm = np.argsort(sk.perm)

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.int64)
        if self.sk.perm is not None:
            y = y[self.inverse_perm]
        c = self.decoder.decode(y)
        if self.sk.perm is not None:
            c = c[self.sk.perm]
        return message_from_codeword(self.sk.field, self.G, c)


def decrypt(sk: SecretKey, y, t: int | None = None) -> np.ndarray:
    return Decryptor(sk, t)(y)


# ------------------------------------------------------------------- files


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def format_public_key(pk: PublicKey) -> str:
    return "\n".join(["MCSUB-PUB v1", pk.field.serialize(), f"{pk.n} {pk.l} {pk.t}",
                      linalg.format_matrix(pk.G)]) + "\n"


def format_secret_key(sk: SecretKey) -> str:
    lines = ["MCSUB-SEC v1", sk.field.serialize()]
    spec = sk.spec
    if isinstance(spec, GrsSpec):
        lines += ["FAMILY grs", f"k {spec.k}", "a " + _row(spec.a), "b " + _row(spec.b)]
    else:
        lines += ["FAMILY hermitian", f"{spec.q0} {spec.m}"]
    lines.append(linalg.format_matrix(sk.S))
    lines.append(f"SEED {sk.seed}")
    if sk.perm is not None:
        lines.append("PERM " + _row(sk.perm))
    return "\n".join(lines) + "\n"


def format_ciphertext(F: GF, y) -> str:
    return F.serialize() + "\n" + _row(y) + "\n"


def _lines(text: str) -> list[tuple[int, str]]:
    return [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines()) if ln.strip()]


def _field(lineno: int, line: str) -> GF:
    try:
        return GF.parse(line)
    except (FieldError, ValueError) as exc:
        raise FormatError(lineno, str(exc)) from exc


def _matrix(lines: list[tuple[int, str]], start: int, F: GF) -> tuple[np.ndarray, int]:
    lineno = lines[start][0] if start < len(lines) else len(lines) + 1
    try:
        rows = int(lines[start][1].split()[0])
        M = linalg.parse_matrix([ln for _, ln in lines[start:start + rows + 1]], F)
    except (IndexError, ValueError) as exc:
        raise FormatError(lineno, f"bad matrix: {exc}") from exc
    return M, start + rows + 1


def _expect(lines, idx: int, what: str) -> tuple[int, str]:
    if idx >= len(lines):
        last = lines[-1][0] if lines else 0
        raise FormatError(last + 1, f"missing {what}")
    return lines[idx]


def _ints(lineno: int, tokens: list[str]) -> list[int]:
    try:
        return [int(v) for v in tokens]
    except ValueError as exc:
        raise FormatError(lineno, f"expected integers: {exc}") from exc


def parse_public_key(text: str) -> PublicKey:
    lines = _lines(text)
    no, head = _expect(lines, 0, "header")
    if head != "MCSUB-PUB v1":
        raise FormatError(no, f"expected 'MCSUB-PUB v1', got {head!r}")
    F = _field(*_expect(lines, 1, "field line"))
    no, dims = _expect(lines, 2, "'<n> <l> <t>' line")
    vals = _ints(no, dims.split())
    if len(vals) != 3:
        raise FormatError(no, "expected '<n> <l> <t>'")
    n, l, t = vals
    G, _ = _matrix(lines, 3, F)
    if G.shape != (l, n):
        raise FormatError(lines[3][0], f"matrix shape {G.shape} != ({l}, {n})")
    return PublicKey(F, G, t)


def parse_secret_key(text: str) -> SecretKey:
    lines = _lines(text)
    no, head = _expect(lines, 0, "header")
    if head != "MCSUB-SEC v1":
        raise FormatError(no, f"expected 'MCSUB-SEC v1', got {head!r}")
    F = _field(*_expect(lines, 1, "field line"))
    no, fam = _expect(lines, 2, "FAMILY line")
    if fam == "FAMILY grs":
        no, kline = _expect(lines, 3, "k line")
        if not kline.startswith("k "):
            raise FormatError(no, "expected 'k <k>'")
        k = _ints(no, kline.split()[1:])[0]
        no_a, aline = _expect(lines, 4, "a row")
        no_b, bline = _expect(lines, 5, "b row")
        if not aline.startswith("a ") or not bline.startswith("b "):
            raise FormatError(no_a, "expected 'a ...' and 'b ...' rows")
        try:
            spec = GrsSpec(F, _ints(no_a, aline.split()[1:]), _ints(no_b, bline.split()[1:]), k)
        except ValueError as exc:
            raise FormatError(no_a, str(exc)) from exc
        idx = 6
    elif fam == "FAMILY hermitian":
        no, qm = _expect(lines, 3, "'<q0> <m>' line")
        vals = _ints(no, qm.split())
        if len(vals) != 2:
            raise FormatError(no, "expected '<q0> <m>'")
        spec = HermitianSpec(*vals)
        if spec.field != F:
            raise FormatError(lines[1][0], "field does not match GF(q0^2)")
        idx = 4
    else:
        raise FormatError(no, f"expected 'FAMILY grs|hermitian', got {fam!r}")
    S, idx = _matrix(lines, idx, F)
    no, seedline = _expect(lines, idx, "SEED line")
    if not seedline.startswith("SEED "):
        raise FormatError(no, "expected 'SEED <seed>'")
    seed = _ints(no, seedline.split()[1:])[0]
    perm = None
    if idx + 1 < len(lines):
        no, pline = lines[idx + 1]
        if not pline.startswith("PERM "):
            raise FormatError(no, "unexpected trailing content")
        perm = np.array(_ints(no, pline.split()[1:]), dtype=np.int64)
    return SecretKey(spec, S, seed, perm)


def parse_ciphertext(text: str) -> tuple[GF, np.ndarray]:
    lines = _lines(text)
    F = _field(*_expect(lines, 0, "field line"))
    no, row = _expect(lines, 1, "vector row")
    y = np.array(_ints(no, row.split()), dtype=np.int64)
    try:
        F.asarray(y)
    except FieldError as exc:
        raise FormatError(no, str(exc)) from exc
    return F, y
