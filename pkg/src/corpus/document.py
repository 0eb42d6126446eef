"""Line-oriented JSON documents for matrix factorizations.

Line 1 is a header {"d", "f", "field", "meta", "n", "name", "vars"}, followed by one
line {"k", "rows"} per factor with entries written in the polynomial grammar.
"""

from __future__ import annotations
import dataclasses
from dataclasses import dataclass
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from errors import ParseError, UsageError
from linalg import PolyMatrix
from mf import MatrixFactorization
from ring import FieldSpec, PolyRing


HEADER_KEYS = ("d", "f", "field", "meta", "n", "name", "vars")


@dataclass
class MFDocument:
    field: str
    vars: List[str]
    f: str
    d: int
    n: int
    factors: List[List[List[str]]]
    name: Optional[str] = None
    meta: Dict[str, Any] = dataclasses.field(default_factory=dict)

    @classmethod
    def from_mf(cls, x: MatrixFactorization, name: Optional[str] = None, meta: Optional[Dict[str, Any]] = None) -> MFDocument:
        return cls(
            field=x.field.name,
            vars=list(x.ring.vars),
            f=str(x.f),
            d=x.d,
            n=x.n,
            factors=[phi.to_strings() for phi in x.factors],
            name=x.name if name is None else name,
            meta=dict(x.meta if meta is None else meta),
        )

    def to_mf(self) -> MatrixFactorization:
        ring = PolyRing(FieldSpec.from_name(self.field), tuple(self.vars))
        # header is line 1, factor k is on line k + 1
        f = ring.parse(self.f, line=1)
        factors = []
        for k, rows in enumerate(self.factors, start=1):
            entries = [[ring.parse(a, line=k + 1) for a in row] for row in rows]
            factors.append(PolyMatrix(ring, entries, self.n, self.n))
        return MatrixFactorization(ring, f, factors, self.name, dict(self.meta))

    def dumps(self) -> str:
        header = {"d": self.d, "f": self.f, "field": self.field, "meta": self.meta, "n": self.n, "name": self.name, "vars": self.vars}
        lines = [json.dumps(header, sort_keys=True)]
        lines += [json.dumps({"k": k, "rows": rows}, sort_keys=True) for k, rows in enumerate(self.factors, start=1)]
        return "\n".join(lines) + "\n"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps())


def _load_line(text: str, lineno: int) -> Dict[str, Any]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, lineno, e.colno) from e
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", lineno, 1)
    return obj


def _require(obj: Dict[str, Any], key: str, kind: type, lineno: int) -> Any:
    if key not in obj:
        raise ParseError(f"missing key {key!r}", lineno, 1)
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"{key!r} must be {kind.__name__}", lineno, 1)
    return value


def parse_document(text: str) -> MFDocument:
    lines = [(i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise ParseError("empty document", 1, 1)
    lineno, first = lines[0]
    header = _load_line(first, lineno)
    unknown = sorted(set(header) - set(HEADER_KEYS))
    if unknown:
        raise ParseError(f"unknown header keys {unknown}", lineno, 1)
    fld = _require(header, "field", str, lineno)
    variables = _require(header, "vars", list, lineno)
    if any(not isinstance(v, str) for v in variables):
        raise ParseError("variable names must be strings", lineno, 1)
    f = _require(header, "f", str, lineno)
    d = _require(header, "d", int, lineno)
    n = _require(header, "n", int, lineno)
    name = header.get("name")
    meta = header.get("meta") or {}
    if d < 2 or n < 0:
        raise ParseError(f"need d >= 2 and n >= 0, got d={d}, n={n}", lineno, 1)
    if len(lines) - 1 != d:
        raise ParseError(f"expected {d} factor lines, found {len(lines) - 1}", lines[-1][0], 1)
    factors = []
    for k, (lineno, line) in enumerate(lines[1:], start=1):
        obj = _load_line(line, lineno)
        if _require(obj, "k", int, lineno) != k:
            raise ParseError(f"factor lines must be numbered in order, expected k={k}", lineno, 1)
        rows = _require(obj, "rows", list, lineno)
        if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise ParseError(f"factor {k} must be {n}x{n}", lineno, 1)
        if any(not isinstance(a, str) for r in rows for a in r):
            raise ParseError(f"factor {k} entries must be strings", lineno, 1)
        factors.append(rows)
    doc = MFDocument(fld, variables, f, d, n, factors, name, meta)
    _check_parses(doc, lines)
    return doc


def _check_parses(doc: MFDocument, lines: List[Tuple[int, str]]) -> None:
    """Parse every polynomial once so errors carry the physical line and column."""
    lineno, header = lines[0]
    try:
        ring = PolyRing(FieldSpec.from_name(doc.field), tuple(doc.vars))
    except ParseError:
        raise
    except UsageError as e:
        raise ParseError(str(e), lineno, 1) from e
    _parse_entry(ring, doc.f, lineno, header, _after_key(header, "f"))
    for rows, (lineno, line) in zip(doc.factors, lines[1:]):
        start = _after_key(line, "rows")
        for row in rows:
            for a in row:
                start = _parse_entry(ring, a, lineno, line, start)


def _after_key(line: str, key: str) -> int:
    i = line.find(json.dumps(key))
    return 0 if i < 0 else i + len(json.dumps(key))


def _parse_entry(ring: PolyRing, text: str, lineno: int, line: str, start: int) -> int:
    """Columns are shifted to the entry's position in the line; unlocatable (escaped) entries keep their own."""
    offset, end = 0, start
    for encoded in (json.dumps(text), json.dumps(text, ensure_ascii=False)):
        i = line.find(encoded, start)
        if i >= 0:
            offset, end = i + 1, i + len(encoded)
            break
    try:
        ring.parse(text, line=lineno)
    except ParseError as e:
        column = None if e.column is None else e.column + offset
        raise ParseError(e.message, lineno, column) from e
    return end


def load_document(path: Union[str, Path]) -> MFDocument:
    return parse_document(Path(path).read_text())


def load_mf(path: Union[str, Path]) -> MatrixFactorization:
    return load_document(path).to_mf()


def canonical(doc: MFDocument) -> MFDocument:
    """Reprint entries through the polynomial printer."""
    return MFDocument.from_mf(doc.to_mf(), doc.name, doc.meta)
