"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Seeds are fixed, so reruns print identical frequencies. Criterion 9 reruns
the batch experiments of criteria 3-8 and compares the CSV bytes.
"""

import functools
import time
import warnings

import numpy as np
import pytest

from schurclosure.codes import all_codewords, closure, square
from schurclosure.ecp import EcpDecoder, build_ecp
from schurclosure.experiments import (TrialFn, closure_control_trial, conjecture1_trial,
                                      distinguisher_trial, grs_attack_trial,
                                      hermitian_attack_trial, run_trials, subfield_grs_spec,
                                      subfield_resistance_experiment, subfield_trial, write_csv)
from schurclosure.families import (GrsSpec, HermitianSpec, grs_code, grs_square_spec,
                                   hermitian_code)
from schurclosure.gf import field_of_order

from oracles import hamming

GF49 = dict(q0=7, m=170, t=54, l=50)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    return emit


# batch experiments shared with the determinism check --------------------------

def batch_conjecture1():
    return run_trials(TrialFn(conjecture1_trial, HermitianSpec(4, 20), 8), 3, 200)


def batch_hermitian_gf49():
    return run_trials(TrialFn(hermitian_attack_trial, GF49["q0"], GF49["m"], GF49["l"],
                              ciphertexts=10, t=GF49["t"]), 1, 30)


def batch_grs():
    return run_trials(TrialFn(grs_attack_trial, 61, 60, 20, 10, ciphertexts=50), 5, 50)


def batch_ecp_exhaustive():
    """Rows of (codeword index, position, value, decoded == nearest) as CSV-like text."""
    spec = HermitianSpec(2, 3)
    dec = EcpDecoder(build_ecp(spec, 1))
    F = field_of_order(4)
    words = all_codewords(hermitian_code(spec))
    out = []
    for i, c in enumerate(words):
        for pos in range(8):
            for v in range(1, 4):
                y = c.copy()
                y[pos] = F.add(y[pos], v)
                dists = np.array([hamming(w, y) for w in words])
                nearest = words[int(np.argmin(dists))]
                unique = np.count_nonzero(dists == dists.min()) == 1
                out.append((i, pos, v, int(unique and np.array_equal(dec(y), nearest))))
    return out


def batch_distinguisher():
    rand = run_trials(TrialFn(distinguisher_trial, "random", 49, 343, 50), 7, 100)
    sub = run_trials(TrialFn(distinguisher_trial, "subcode", HermitianSpec(7, 170), 343, 50),
                     7, 100)
    return rand, sub


def batch_controls():
    sub = run_trials(TrialFn(subfield_trial, 16, 15, 11, 4), 0, 50)
    ctrl = run_trials(TrialFn(closure_control_trial, 16, 20, 5), 0, 100)
    return sub, ctrl


def csv_of(result):
    if isinstance(result, tuple):
        return "".join(csv_of(r) for r in result)
    if result and isinstance(result[0], tuple):
        return "\n".join(",".join(map(str, r)) for r in result) + "\n"
    return write_csv(result, timings=False)


BATCHES = {3: batch_conjecture1, 4: batch_hermitian_gf49, 5: batch_grs, 6: batch_ecp_exhaustive,
           7: batch_distinguisher, 8: batch_controls}


@functools.lru_cache(maxsize=None)
def first_run(n):
    start = time.perf_counter()
    result = BATCHES[n]()
    return result, time.perf_counter() - start


def freq(rows):
    return sum(r.success for r in rows) / len(rows)


# criteria -----------------------------------------------------------------------

def test_criterion_1_hermitian_square_and_closure(report):
    start = time.perf_counter()
    failures, count = [], 0
    for q0 in (2, 3):
        n, g = q0**3, q0 * (q0 - 1) // 2
        for m in range(2 * g + 1, (n + 2 * g - 2) // 2 + 1):
            C = hermitian_code(HermitianSpec(q0, m))
            count += 1
            if square(C) != hermitian_code(HermitianSpec(q0, 2 * m)):
                failures.append(("square", q0, m))
            if 2 * m <= n - 2:
                count += 1
                if closure(C, 2, "both") != C:
                    failures.append(("closure", q0, m))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(1, ok, f"{count - len(failures)}/{count} exact equalities in {elapsed:.1f} s")
    assert ok, failures


def test_criterion_2_grs_square_law(report):
    checked, bad = 0, []
    for q in (5, 11, 16):
        F = field_of_order(q)
        rng = np.random.default_rng(q)
        for n in (q - 1, q):
            a = rng.permutation(q)[:n]
            b = F.random(rng, n, nonzero=True)
            for k in range(1, (n + 1) // 2 + 1):
                spec = GrsSpec(F, a, b, k)
                checked += 1
                if square(grs_code(spec)) != grs_code(grs_square_spec(spec)):
                    bad.append((q, n, k))
    report(2, not bad, f"{checked - len(bad)}/{checked} (q, n, k) cases exact")
    assert not bad


def test_criterion_3_subcode_square_frequency(report):
    rows, elapsed = first_run(3)
    f = freq(rows)
    ok = f >= 0.90 and elapsed < 120
    # reported, not fatal
    report(3, ok, f"frequency {f:.3f} over {len(rows)} trials (>= 0.90), {elapsed:.1f} s")
    if not ok:
        warnings.warn(f"square-match frequency below threshold: {f:.3f}")


def test_criterion_4_hermitian_gf49_attack(report):
    rows, elapsed = first_run(4)
    wins = [r for r in rows if r.success]
    f = len(wins) / len(rows)
    worst = max(r.elapsed_ms for r in rows) / 1000
    ok = f >= 0.95 and worst <= 600
    report(4, ok, f"{len(wins)}/{len(rows)} keys recovered C(170P) and decrypted 10/10; "
                  f"worst trial {worst:.1f} s, mean {elapsed / len(rows):.1f} s")
    assert all(r.stage == "done" for r in wins)
    assert ok


def test_criterion_5_grs_end_to_end(report):
    rows, _ = first_run(5)
    f = freq(rows)
    report(5, f == 1.0, f"{sum(r.success for r in rows)}/{len(rows)} keys, 50/50 ciphertexts each")
    assert f == 1.0


def test_criterion_6_ecp_matches_nearest_codeword(report):
    rows, elapsed = first_run(6)
    good = sum(r[3] for r in rows)
    ok = good == len(rows) == 64 * 24 and elapsed < 10
    report(6, ok, f"{good}/{len(rows)} decoded to the brute-force nearest codeword in {elapsed:.1f} s")
    assert ok


def test_criterion_7_distinguisher(report):
    (rand, sub), _ = first_run(7)
    f_rand = np.mean([r.sq_dim == 343 for r in rand])
    f_sub = np.mean([r.sq_dim == 320 for r in sub])
    ok = f_rand >= 0.95 and f_sub >= 0.90
    report(7, ok, f"random sq_dim=343 in {f_rand:.2f}; subcode sq_dim=320 in {f_sub:.2f}")
    assert ok


def test_criterion_8_resistance_controls(report):
    (sub, ctrl), _ = first_run(8)
    strict = []
    for seed in range(50):
        rep = subfield_resistance_experiment(subfield_grs_spec(16, 15, 11, seed), 4, seed)
        strict.append(rep.proper_subcode or rep.degenerate)
    f_strict, f_ne = float(np.mean(strict)), freq(sub)
    f_ctrl = freq(ctrl)
    ok = f_strict >= 0.90 and f_ctrl >= 0.95
    report(8, ok, f"subfield: proper-or-degenerate {f_strict:.2f}, != enclosing {f_ne:.2f}; "
                  f"random control closed {f_ctrl:.2f}")
    assert ok


def test_criterion_9_determinism(report):
    same = {}
    for n, fn in BATCHES.items():
        same[n] = csv_of(first_run(n)[0]).encode() == csv_of(fn()).encode()
    ok = all(same.values())
    report(9, ok, "byte-identical CSV for criteria " +
           ", ".join(f"{n}:{'ok' if s else 'DIFF'}" for n, s in same.items()))
    assert ok
