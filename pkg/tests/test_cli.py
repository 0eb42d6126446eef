import json

import pytest
from omegaconf import OmegaConf

from cli import main
from corpus import MFDocument, parse_document
from mf import proj_P
from ring import PolyRing, QQ


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "corpus:e6")
    assert code == 0
    cert = json.loads(out)
    assert cert["command"] == "verify"
    assert cert["verdicts"] == {"valid": True}
    assert cert["evidence"]["reduced"] is True
    assert cert["mode"] == {"mode": "exact", "precision": None, "trials": 5}


def test_predict_dinfty(capsys):
    code, out, _ = run(capsys, "predict", "corpus:dinfty")
    assert code == 0
    cert = json.loads(out)
    assert cert["evidence"]["m"] == [0, 0, 1]
    assert cert["evidence"]["stable_size"] == 3
    assert all(cert["verdicts"].values())


def test_shift_of_a_projective(tmp_path, capsys):
    ring = PolyRing(QQ, ("x", "y"))
    f = ring.parse("x^2*y")
    path = tmp_path / "p1.mf"
    MFDocument.from_mf(proj_P(1, 3, f), name="p1").save(path)
    code, out, _ = run(capsys, "shift", "-j", "1", str(path))
    assert code == 0
    assert parse_document(out).to_mf() == proj_P(3, 3, f)


def test_out_file_matches_stdout(tmp_path, capsys):
    target = tmp_path / "cert.json"
    code, out, _ = run(capsys, "cone", "--of", "lambda", "corpus:pair", "--out", str(target))
    assert code == 0
    assert target.read_text() == out
    assert json.loads(out)["evidence"]["of"] == "lambda"


def test_same_seed_same_bytes(capsys):
    _, first, _ = run(capsys, "homotopy-verify", "corpus:dinfty", "--seed", "11")
    _, second, _ = run(capsys, "homotopy-verify", "corpus:dinfty", "--seed", "11")
    assert first == second
    assert json.loads(first)["seed"] == 11


def test_flags_reach_the_certificate(capsys):
    code, out, _ = run(capsys, "split", "corpus:dinfty", "--mode", "truncated", "--precision", "6", "--trials", "3")
    assert code == 0
    assert json.loads(out)["mode"] == {"mode": "truncated", "precision": 6, "trials": 3}


def test_invalid_factorization_exits_zero(tmp_path, capsys):
    path = tmp_path / "bad.mf"
    MFDocument("QQ", ["x", "y"], "x*y", 2, 1, [[["x"]], [["x"]]], "bad").save(path)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert json.loads(out)["verdicts"]["valid"] is False


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.mf"
    text = MFDocument("QQ", ["x", "y"], "x*y", 2, 1, [[["x"]], [["y"]]]).dumps()
    path.write_text(text.replace('"y"]]', '"y +"]]'))
    code, out, err = run(capsys, "verify", str(path))
    assert code == 2
    assert out == ""
    assert "line 3" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify"],
        ["verify", "missing.mf"],
        ["verify", "corpus:e9"],
        ["frobnicate", "corpus:pair"],
        ["split", "corpus:pair", "--precision", "4"],
        ["sum", "corpus:pair"],
        ["sum", "corpus:pair", "corpus:triple"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_domain_error_exit_code(capsys):
    code, out, err = run(capsys, "cover-check", "corpus:e6_pair")
    assert code == 3
    assert out == ""
    assert "root" in err


def test_cover_check_with_prime(capsys):
    code, out, _ = run(capsys, "cover-check", "corpus:pair", "--prime", "13")
    assert code == 0
    cert = json.loads(out)
    assert cert["evidence"]["roots"]["p"] == 13
    assert all(cert["verdicts"].values())


def test_corpus_run_on_a_directory(tmp_path, capsys):
    src = tmp_path / "docs"
    src.mkdir()
    for name in ("pair", "triple"):
        code, out, _ = run(capsys, "shift", "-j", "0", f"corpus:{name}")
        (src / f"{name}.mf").write_text(out)
    out_dir = tmp_path / "certs"
    code, out, _ = run(capsys, "corpus-run", str(src), "--out", str(out_dir))
    assert code == 0
    summary = json.loads(out)
    assert summary["command"] == "corpus-run"
    assert summary["evidence"]["documents"] == 2
    assert (out_dir / "summary.json").is_file()
    assert all(summary["verdicts"].values())


def test_config_strings_are_not_evaluated(capsys):
    code, out, _ = run(capsys, "verify", "corpus:pair")
    assert code == 0
    assert not OmegaConf.has_resolver("eval")
