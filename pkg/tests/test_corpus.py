import json

import pytest

from corpus import (
    canonical,
    CERTIFIED,
    check_meta,
    corpus_item,
    corpus_run,
    cover_prime,
    load_document,
    load_mf,
    MFDocument,
    parse_document,
    run_command,
    Settings,
)
from errors import ParseError, UsageError
from ring import GF, QQ


def small() -> MFDocument:
    return MFDocument(field="QQ", vars=["x", "y"], f="x*y", d=2, n=1, factors=[[["x"]], [["y"]]], name="t")


def test_corpus_contents(docs):
    assert len(docs) >= 7
    assert {"dinfty", "triple", "e6", "e7", "e8a", "e8b", "pair"} <= set(docs)
    assert docs["e6"].meta["reduced"]
    assert docs["e6"].field == "GF(7)"


def test_documents_round_trip(docs):
    for doc in docs.values():
        assert parse_document(doc.dumps()) == doc
        assert canonical(doc) == doc


def test_header_layout():
    lines = small().dumps().splitlines()
    assert len(lines) == 3
    assert list(json.loads(lines[0])) == ["d", "f", "field", "meta", "n", "name", "vars"]
    assert json.loads(lines[2]) == {"k": 2, "rows": [["y"]]}


def test_canonical_reprints_entries():
    doc = small()
    doc.factors = [[["x + 0*y"]], [["(y)"]]]
    assert canonical(doc).factors == [[["x"]], [["y"]]]


def test_save_and_load(tmp_path, docs):
    path = tmp_path / "e6.mf"
    docs["e6"].save(path)
    assert load_document(path) == docs["e6"]
    assert load_mf(path).verify().valid


def replace_line(text: str, index: int, line: str) -> str:
    lines = text.splitlines()
    lines[index] = line
    return "\n".join(lines) + "\n"


def test_parse_errors_carry_positions():
    text = small().dumps()
    line = json.dumps({"k": 1, "rows": [["x + * y"]]})
    with pytest.raises(ParseError) as e:
        parse_document(replace_line(text, 1, line))
    assert (e.value.line, e.value.column) == (2, 25)
    assert line[e.value.column - 1] == "*"
    with pytest.raises(ParseError) as e:
        parse_document(replace_line(text, 2, "{"))
    assert e.value.line == 3
    with pytest.raises(ParseError) as e:
        parse_document("\n".join(text.splitlines()[:2]))
    assert "expected 2 factor lines" in str(e.value)


def test_parse_error_columns_index_the_line():
    text = small().dumps()
    header = json.loads(text.splitlines()[0])
    header["f"] = "x^2 $ y"
    first = json.dumps(header, sort_keys=True)
    with pytest.raises(ParseError) as e:
        parse_document(replace_line(text, 0, first))
    assert e.value.line == 1
    assert first[e.value.column - 1] == "$"
    square = MFDocument(field="QQ", vars=["x", "y"], f="x*y", d=2, n=2, factors=[[["x", "0"], ["0", "x"]], [["y", "0"], ["0", "y"]]])
    line = json.dumps({"k": 1, "rows": [["x", "0"], ["0", "(x"]]})
    with pytest.raises(ParseError) as e:
        parse_document(replace_line(square.dumps(), 1, line))
    assert e.value.line == 2
    assert e.value.column == line.index('"(x"') + len('"(x"')


@pytest.mark.parametrize(
    "change",
    [
        lambda h: h.pop("f"),
        lambda h: h.update(field="GF(6)"),
        lambda h: h.update(colour="blue"),
        lambda h: h.update(d="2"),
        lambda h: h.update(d=1),
    ],
)
def test_bad_headers(change):
    lines = small().dumps().splitlines()
    header = json.loads(lines[0])
    change(header)
    with pytest.raises(ParseError) as e:
        parse_document("\n".join([json.dumps(header)] + lines[1:]))
    assert e.value.line == 1


def test_bad_factor_lines():
    text = small().dumps()
    for line in ['{"k": 2, "rows": [["x"]]}', '{"k": 1, "rows": [["x", "y"]]}', '{"k": 1, "rows": [[1]]}', "[1]"]:
        with pytest.raises(ParseError):
            parse_document(replace_line(text, 1, line))
    with pytest.raises(ParseError):
        parse_document("")


def test_cover_prime():
    assert cover_prime(3, QQ) == 7
    assert cover_prime(2, QQ) == 5
    assert cover_prime(4, QQ) == 17
    assert cover_prime(3, GF(7)) == 7
    assert cover_prime(3, QQ, 13) == 13
    with pytest.raises(UsageError):
        cover_prime(3, GF(7), 13)


def test_corpus_item():
    assert corpus_item("pair").n == 1
    with pytest.raises(UsageError):
        corpus_item("e9")


def test_meta_matches_recomputation(docs):
    for doc in docs.values():
        assert all(check_meta(doc).values()), doc.name


def test_certificates_are_reproducible(docs):
    settings = Settings(seed=7)
    first = run_command("homotopy-verify", [docs["dinfty"]], settings).dumps()
    second = run_command("homotopy-verify", [docs["dinfty"]], settings).dumps()
    assert first == second
    assert json.loads(first)["seed"] == 7


def test_predict_certificate(docs):
    cert = run_command("predict", [docs["dinfty"]], Settings())
    assert cert.ok
    assert cert.evidence["m"] == [0, 0, 1]
    assert cert.evidence["stable_size"] == 3


def test_transforms(docs):
    shifted = run_command("shift", [docs["dinfty"]], Settings(shift=2))
    assert shifted.to_mf() == docs["dinfty"].to_mf().shift(2)
    total = run_command("sum", [docs["pair"], docs["pair"]], Settings())
    assert total.n == 2
    omega = run_command("syzygy", [docs["e6"]], Settings())
    assert omega.n == 6 and omega.to_mf().verify().valid


def test_invalid_factorization_is_a_verdict(docs):
    doc = small()
    doc.factors = [[["x"]], [["x"]]]
    cert = run_command("verify", [doc], Settings())
    assert not cert.ok
    assert cert.evidence["failing"] == [1, 2]


def test_command_usage_errors(docs):
    with pytest.raises(UsageError):
        run_command("frobnicate", [docs["pair"]], Settings())
    with pytest.raises(UsageError):
        run_command("sum", [docs["pair"]], Settings())
    with pytest.raises(UsageError):
        run_command("cone", [docs["pair"]], Settings(cone_of="eta"))


def test_corpus_run(tmp_path, docs):
    summary = corpus_run(list(docs.values()), Settings(), tmp_path)
    assert summary.ok, [k for k, v in summary.verdicts.items() if not v]
    assert [(s["document"], s["command"]) for s in summary.evidence["skipped"]] == [("e6_pair", "cover-check")]
    assert (tmp_path / "summary.json").is_file()
    assert (tmp_path / "dinfty" / "verify.json").is_file()
    assert not (tmp_path / "e6_pair" / "cover-check.json").exists()
    assert summary.evidence["commands"] == list(CERTIFIED)
