"""Command-line front end: keys, encryption, attacks, experiments, checks."""

from __future__ import annotations

import argparse
import sys
import warnings

import numpy as np

from . import experiments as ex
from .attack import AttackFailure, attack_blind_shortening, attack_recover_code, grs_full_attack, \
    hermitian_full_attack
from .codes import format_code, square
from .cryptosystem import (ConstraintWarning, Decryptor, FormatError, PublicKey, encrypt,
                           format_ciphertext, format_public_key, format_secret_key, keygen,
                           parse_ciphertext, parse_public_key, parse_secret_key)
from .ecp import DecodingError
from .families import HermitianSpec, grs_code, random_grs_spec
from .gf import field_of_order


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _spec_from_args(args):
    if args.family == "hermitian":
        if args.q0 is None or args.m is None:
            raise CliError("hermitian keys need --q0 and --m")
        return HermitianSpec(args.q0, args.m)
    if None in (args.q, args.n, args.k):
        raise CliError("grs keys need --q, --n and --k")
    F = field_of_order(args.q)
    return random_grs_spec(F, args.n, args.k, np.random.default_rng([args.seed, 1]))


def cmd_keygen(args) -> int:
    spec = _spec_from_args(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConstraintWarning)
        pk, sk = keygen(spec, args.l, args.seed, t=args.t, permute=args.permute)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(args.pub, format_public_key(pk))
    _write(args.sec, format_secret_key(sk))
    print(f"n={pk.n} l={pk.l} t={pk.t}")
    return 0


def _parse_msg(text: str, pk: PublicKey) -> np.ndarray:
    vals = [int(v) for v in text.replace(",", " ").split()]
    if len(vals) != pk.l:
        raise CliError(f"message needs {pk.l} entries, got {len(vals)}")
    return pk.field.asarray(vals)


def cmd_encrypt(args) -> int:
    pk = parse_public_key(_read(args.pub))
    if args.msg is not None:
        msg = _parse_msg(args.msg, pk)
    else:
        msg = pk.field.random(np.random.default_rng([args.seed, 2]), pk.l)
    y = encrypt(pk, msg, args.seed, weight=args.weight)
    _write(args.out, format_ciphertext(pk.field, y))
    print(" ".join(map(str, msg)))
    return 0


def cmd_decrypt(args) -> int:
    sk = parse_secret_key(_read(args.sec))
    F, y = parse_ciphertext(_read(args.ct))
    if F != sk.field:
        raise CliError("ciphertext field does not match the secret key")
    t = args.t
    if t is None and args.pub:
        t = parse_public_key(_read(args.pub)).t
    try:
        msg = Decryptor(sk, t)(y)
    except DecodingError as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return 1
    text = " ".join(map(str, msg))
    if args.out:
        _write(args.out, text + "\n")
    print(text)
    return 0


def cmd_attack(args) -> int:
    pk = parse_public_key(_read(args.pub))
    C = pk.code()
    clock = ex._Clock()
    row = ex.TrialRow(args.seed, args.mode, pk.n, -1, pk.l, "square", False)
    recovered = None
    try:
        if args.mode == "closure":
            rec = attack_recover_code(C)
            if rec.degenerate and args.shorten:
                sh = attack_blind_shortening(C, args.seed)
                recovered, degenerate = sh.code, sh.degenerate
            else:
                recovered, degenerate = rec.code, rec.degenerate
            row.sq_dim = rec.sq_dim
            clock.lap("closure")
            if degenerate:
                row.stage = "closure-degenerate"
            elif recovered == C:
                row.stage = "closure-identity"
            else:
                row.stage, row.success = "closure", True
            row.degree = recovered.k
        elif args.mode == "grs":
            rec, decoder = grs_full_attack(pk)
            clock.lap("recovery+ecp")
            recovered = grs_code(rec.spec)
            row.sq_dim, row.degree = 2 * rec.k - 1, rec.k
            row.stage = "decode"
            row.success = rec.certified and ex._decrypt_all(pk, decoder, args.seed, args.ciphertexts)
            clock.lap("decode")
            row.stage = "done" if row.success else "decode"
        else:
            if args.sec:
                oracle = parse_secret_key(_read(args.sec)).spec
            elif args.q0 is not None and args.m is not None:
                oracle = HermitianSpec(args.q0, args.m)
            else:
                raise CliError("hermitian mode needs --sec or --q0/--m for the ECP step")
            if not isinstance(oracle, HermitianSpec):
                raise CliError("oracle key is not a Hermitian key")
            row.family, row.size, row.degree = "hermitian", oracle.q0, oracle.m
            rec, decoder = hermitian_full_attack(pk, oracle, args.seed)
            clock.lap("closure+ecp")
            recovered, row.sq_dim = rec.code, rec.sq_dim
            row.success = ex._decrypt_all(pk, decoder, args.seed, args.ciphertexts)
            clock.lap("decode")
            row.stage = "done" if row.success else "decode"
    except AttackFailure as exc:
        row.stage = exc.stage
        if row.sq_dim < 0:
            row.sq_dim = square(C).k
    row.elapsed_ms, row.stage_ms = clock.total, clock.stages
    if recovered is not None and args.out:
        _write(args.out, format_code(recovered) + "\n")
    text = ex.write_csv([row], args.report, timings=not args.no_timings)
    sys.stdout.write(text)
    for name, ms in row.stage_ms.items():
        print(f"stage {name}: {ms:.0f} ms", file=sys.stderr)
    if args.strict and not row.success:
        return 1
    return 0


def _experiment_fn(args):
    kind = args.kind
    if kind == "conjecture1":
        spec = HermitianSpec(args.q0, args.m) if args.family == "hermitian" else \
            random_grs_spec(field_of_order(args.q), args.n, args.k, np.random.default_rng(args.seed))
        return ex.TrialFn(ex.conjecture1_trial, spec, args.l)
    if kind == "subfield":
        return ex.TrialFn(ex.subfield_trial, args.q, args.n, args.k, args.subfield)
    if kind == "control":
        return ex.TrialFn(ex.closure_control_trial, args.q, args.n, args.l)
    if kind == "distinguisher":
        if args.family == "random":
            return ex.TrialFn(ex.distinguisher_trial, "random", args.q, args.n, args.l)
        return ex.TrialFn(ex.distinguisher_trial, "subcode", HermitianSpec(args.q0, args.m),
                          HermitianSpec(args.q0, args.m).n, args.l)
    if kind == "grs":
        return ex.TrialFn(ex.grs_attack_trial, args.q, args.n, args.k, args.l,
                          ciphertexts=args.ciphertexts)
    if kind == "hermitian":
        row = ex.HERMITIAN_INSTANCES[args.row]
        if args.row != "7^2" and not args.force:
            raise CliError(f"instance {args.row} has inconsistent parameters; pass --force")
        l = args.l if args.l is not None else row["ls"][0]
        return ex.TrialFn(ex.hermitian_attack_trial, row["q0"], row["m"], l,
                          ciphertexts=args.ciphertexts, t=row["t"])
    raise CliError(f"unknown experiment {kind}")  # pragma: no cover


def cmd_experiment(args) -> int:
    if args.trials < 1:
        raise CliError("--trials must be >= 1")
    fn = _experiment_fn(args)
    rows = ex.run_trials(fn, args.seed, args.trials, args.jobs)
    text = ex.write_csv(rows, args.out, timings=not args.no_timings)
    if args.out is None:
        sys.stdout.write(text)
    s = ex.summarize(rows)
    print(f"frequency={s['frequency']:.4f} successes={s['successes']}/{s['trials']} "
          f"mean_ms={s['mean_ms']:.0f}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    q0s = (2, 3, 4) if args.slow else (2, 3)
    cases = ex.verify_theorems(q0s, corrupt=args.corrupt)
    ok = True
    for c in cases:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.claim} q0={c.q0} m={c.m}")
        ok &= c.passed
    print(f"{sum(c.passed for c in cases)}/{len(cases)} passed")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schurclosure", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def family_args(sp, family_choices=("grs", "hermitian")):
        sp.add_argument("--family", choices=family_choices, default=family_choices[0])
        sp.add_argument("--q0", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--q", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)

    sp = sub.add_parser("keygen", help="generate a key pair")
    family_args(sp)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--t", type=int, help="override the error capacity")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--permute", action="store_true")
    sp.add_argument("--pub", default="key.pub")
    sp.add_argument("--sec", default="key.sec")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt a message")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--msg", help="message entries (space or comma separated)")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--weight", type=int, help="error weight (default t)")
    sp.add_argument("--out", default="cipher.txt")
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt with the secret key")
    sp.add_argument("--sec", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--pub", help="public key (supplies t)")
    sp.add_argument("--t", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("attack", help="attack a public key")
    sp.add_argument("--pub", required=True)
    sp.add_argument("--mode", choices=("closure", "grs", "hermitian"), required=True)
    sp.add_argument("--sec", help="Hermitian oracle spec (key file)")
    sp.add_argument("--q0", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--shorten", action="store_true", help="blind shortening fallback")
    sp.add_argument("--ciphertexts", type=int, default=10)
    sp.add_argument("--out", help="recovered code file")
    sp.add_argument("--report", help="CSV report path")
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--no-timings", action="store_true")
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("experiment", help="seeded batch experiments")
    sp.add_argument("--kind", required=True,
                    choices=("conjecture1", "subfield", "control", "distinguisher", "grs", "hermitian"))
    family_args(sp, ("hermitian", "grs", "random"))
    sp.add_argument("--l", type=int)
    sp.add_argument("--subfield", type=int, default=4)
    sp.add_argument("--row", default="7^2", choices=tuple(ex.HERMITIAN_INSTANCES))
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--ciphertexts", type=int, default=10)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--no-timings", action="store_true")
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("verify", help="check the square law and closedness exactly")
    sp.add_argument("--slow", action="store_true", help="include q0 = 4")
    sp.add_argument("--corrupt", action="store_true", help="negative control")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
