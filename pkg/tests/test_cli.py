import pytest

from schurclosure.cli import main


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def herm_keys(tmp_path, capsys):
    pub, sec = tmp_path / "h.pub", tmp_path / "h.sec"
    rc, out, _ = run(capsys, "keygen", "--family", "hermitian", "--q0", 3, "--m", 10, "--l", 6,
                     "--seed", 5, "--pub", pub, "--sec", sec)
    assert rc == 0 and out.strip() == "n=27 l=6 t=1"
    return pub, sec


def test_keygen_examples(tmp_path, capsys):
    rc, out, err = run(capsys, "keygen", "--family", "hermitian", "--q0", 2, "--m", 3, "--l", 2,
                       "--seed", 7, "--pub", tmp_path / "a", "--sec", tmp_path / "b")
    assert rc == 0 and out.strip() == "n=8 l=2 t=1"
    assert "warning" in err
    rc, out, _ = run(capsys, "keygen", "--family", "grs", "--q", 61, "--n", 60, "--k", 20,
                     "--l", 10, "--seed", 1, "--pub", tmp_path / "c", "--sec", tmp_path / "d")
    assert rc == 0 and out.strip() == "n=60 l=10 t=20"


def test_keygen_deterministic(tmp_path, capsys):
    for name in ("x", "y"):
        run(capsys, "keygen", "--family", "grs", "--q", 31, "--n", 30, "--k", 10, "--l", 6,
            "--seed", 4, "--pub", tmp_path / f"{name}.pub", "--sec", tmp_path / f"{name}.sec")
    assert (tmp_path / "x.pub").read_text() == (tmp_path / "y.pub").read_text()
    assert (tmp_path / "x.sec").read_text() == (tmp_path / "y.sec").read_text()


def test_seed_required(capsys):
    with pytest.raises(SystemExit):
        main(["keygen", "--family", "hermitian", "--q0", "2", "--m", "3", "--l", "2"])


def test_encrypt_decrypt(herm_keys, tmp_path, capsys):
    pub, sec = herm_keys
    ct = tmp_path / "c.txt"
    rc, out, _ = run(capsys, "encrypt", "--pub", pub, "--msg", "1,2,3,4,5,6", "--seed", 9,
                     "--out", ct)
    assert rc == 0
    rc, out, _ = run(capsys, "decrypt", "--sec", sec, "--ct", ct, "--pub", pub)
    assert rc == 0 and out.strip() == "1 2 3 4 5 6"


def test_tampered_ciphertext(herm_keys, tmp_path, capsys):
    pub, sec = herm_keys
    ct = tmp_path / "c.txt"
    run(capsys, "encrypt", "--pub", pub, "--seed", 9, "--weight", 6, "--out", ct)
    rc, _, err = run(capsys, "decrypt", "--sec", sec, "--ct", ct, "--pub", pub)
    assert rc != 0 and "decode failure" in err


def test_malformed_file_names_line(herm_keys, tmp_path, capsys):
    pub, _ = herm_keys
    lines = pub.read_text().splitlines()
    lines[2] = "27 six 1"
    pub.write_text("\n".join(lines) + "\n")
    rc, _, err = run(capsys, "encrypt", "--pub", pub, "--seed", 1, "--out", tmp_path / "c")
    assert rc != 0 and "line 3" in err


def test_missing_file(capsys, tmp_path):
    rc, _, err = run(capsys, "encrypt", "--pub", tmp_path / "nope", "--seed", 1)
    assert rc != 0 and "cannot read" in err


def test_attack_modes(herm_keys, tmp_path, capsys):
    pub, sec = herm_keys
    rc, out, err = run(capsys, "attack", "--pub", pub, "--mode", "hermitian", "--sec", sec,
                       "--seed", 1, "--out", tmp_path / "rec.code", "--strict")
    assert rc == 0
    assert out.splitlines()[1].startswith("1,hermitian,3,10,6,done,1,18,")
    assert "stage" in err
    assert (tmp_path / "rec.code").read_text().startswith("GF 3 2")
    rc, out, _ = run(capsys, "attack", "--pub", pub, "--mode", "closure", "--seed", 1,
                     "--no-timings")
    assert out.splitlines()[1] == "1,closure,27,8,6,closure,1,18,"


def test_attack_random_control(tmp_path, capsys):
    # a random public key in the key file format
    from schurclosure.codes import random_code
    from schurclosure.cryptosystem import PublicKey, format_public_key
    from schurclosure.gf import field_of_order
    C = random_code(field_of_order(16), 20, 5, 0)
    pub = tmp_path / "r.pub"
    pub.write_text(format_public_key(PublicKey(C.field, C.gen.copy(), 2)))
    rc, out, _ = run(capsys, "attack", "--pub", pub, "--mode", "closure", "--seed", 0,
                     "--no-timings", "--strict")
    fields = out.splitlines()[1].split(",")
    assert rc == 1 and fields[6] == "0"
    assert fields[5] in {"closure-degenerate", "closure-identity"}


def test_attack_grs(tmp_path, capsys):
    pub = tmp_path / "g.pub"
    run(capsys, "keygen", "--family", "grs", "--q", 61, "--n", 60, "--k", 20, "--l", 10,
        "--seed", 1, "--pub", pub, "--sec", tmp_path / "g.sec")
    rc, out, _ = run(capsys, "attack", "--pub", pub, "--mode", "grs", "--seed", 1,
                     "--ciphertexts", 5, "--report", tmp_path / "r.csv", "--strict")
    assert rc == 0
    assert (tmp_path / "r.csv").read_text() == out
    assert out.splitlines()[1].split(",")[5:7] == ["done", "1"]


def test_experiment_deterministic(tmp_path, capsys):
    args = ["experiment", "--kind", "conjecture1", "--family", "hermitian", "--q0", 4, "--m", 20,
            "--l", 8, "--trials", 5, "--seed", 3, "--no-timings"]
    rc, out1, err = run(capsys, *args, "--out", tmp_path / "a.csv")
    rc2, out2, _ = run(capsys, *args, "--jobs", 2, "--out", tmp_path / "b.csv")
    assert rc == rc2 == 0 and "frequency=" in err
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_experiment_kinds(capsys):
    for extra in (["--kind", "subfield", "--q", 16, "--n", 15, "--k", 11, "--subfield", 4],
                  ["--kind", "control", "--q", 16, "--n", 20, "--l", 5],
                  ["--kind", "distinguisher", "--family", "random", "--q", 16, "--n", 20,
                   "--l", 5],
                  ["--kind", "grs", "--q", 31, "--n", 30, "--k", 10, "--l", 6,
                   "--ciphertexts", 2]):
        rc, out, _ = run(capsys, "experiment", *extra, "--trials", 2, "--seed", 1)
        assert rc == 0 and len(out.splitlines()) == 3


def test_inconsistent_instance_needs_force(capsys):
    rc, _, err = run(capsys, "experiment", "--kind", "hermitian", "--row", "9^2", "--seed", 1)
    assert rc != 0 and "--force" in err


def test_verify(capsys):
    rc, out, _ = run(capsys, "verify")
    assert rc == 0 and out.splitlines()[-1] == "18/18 passed"
    rc, out, _ = run(capsys, "verify", "--corrupt")
    assert rc == 1 and "FAIL" in out
