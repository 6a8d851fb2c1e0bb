"""JSON matrix files and reports with exact fraction strings.

A matrix file looks like::

    {"field": "Q", "rows": 2, "cols": 2, "entries": [["1", "1/2"], ["0", "-3"]]}

Q(i) entries are written ``"1/2+3/4i"``, ``"-i"``, ``"2/3i"`` and so on.
Decimal literals are rejected everywhere.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError
from .linalg import FIELDS, QI, GaussianRational, Mat

_RAT = r"\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_RAT}$")
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:{_RAT})?)i$")
_GAUSS_RE = re.compile(rf"^(?P<re>[+-]?{_RAT})(?P<im>[+-](?:{_RAT})?)i$")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s) -> str:
    if isinstance(s, GaussianRational):
        if not s.im:
            return format_rational(s.re)
        im = "" if abs(s.im) == 1 else format_rational(abs(s.im))
        sign = "-" if s.im < 0 else "+"
        if not s.re:
            return f"{'-' if s.im < 0 else ''}{im}i"
        return f"{format_rational(s.re)}{sign}{im}i"
    return format_rational(Fraction(s))


def _parse_rational(text: str) -> Fraction:
    q = Fraction(text)
    return q


def parse_scalar(text: str, field: str = "Q"):
    """Parse one entry; raises ValueError on anything but exact literals."""
    if not isinstance(text, str):
        raise ValueError(f"entries must be strings, got {type(text).__name__}")
    t = text.strip().replace(" ", "")
    try:
        if _REAL_RE.match(t):
            q = _parse_rational(t)
            return GaussianRational(q) if field == QI else q
        if field != QI:
            raise ValueError(f"{text!r} is not a rational literal")
        m = _GAUSS_RE.match(t)
        if m:
            return GaussianRational(_parse_rational(m["re"]), _imag_part(m["im"]))
        m = _IMAG_RE.match(t)
        if m:
            return GaussianRational(0, _imag_part(m["im"]))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    raise ValueError(f"{text!r} is not a Gaussian rational literal")


def _imag_part(s: str) -> Fraction:
    if s in ("", "+"):
        return Fraction(1)
    if s == "-":
        return Fraction(-1)
    return _parse_rational(s)


def matrix_from_dict(obj: Any) -> Mat:
    if not isinstance(obj, dict):
        raise ParseError("matrix file must be a JSON object")
    try:
        fld, rows, cols, entries = obj["field"], obj["rows"], obj["cols"], obj["entries"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    if fld not in FIELDS:
        raise ParseError(f"unknown field {fld!r}")
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ParseError("rows and cols must be nonnegative integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ParseError(f"expected {rows} rows of entries")
    data = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"row {i} must have {cols} entries", line=i + 1, column=None)
        out = []
        for j, text in enumerate(row):
            try:
                out.append(parse_scalar(text, fld))
            except ValueError as exc:
                raise ParseError(f"entry [{i}][{j}]: {exc}", line=i + 1, column=j + 1) from None
        data.append(out)
    return Mat(data, field=fld, cols=cols)


def matrix_to_dict(m: Mat) -> dict:
    return {
        "field": m.field,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(x) for x in r] for r in m.tolist()],
    }


def parse_matrix_text(text: str) -> Mat:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return matrix_from_dict(obj)


def read_matrix(path: str | Path) -> Mat:
    return parse_matrix_text(Path(path).read_text())


def dump_matrix(m: Mat) -> str:
    return json.dumps(matrix_to_dict(m))


def digest(m: Mat) -> str:
    canon = json.dumps(matrix_to_dict(m), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


@dataclass
class Report:
    """Single JSON document written by every CLI subcommand.

    Matrices inside ``result`` and ``extra`` are stored as matrix-file dicts,
    so the report is plain JSON and round-trips exactly.
    """

    operation: str
    input_digest: str | None = None
    result: dict = field(default_factory=dict)
    certificate: dict[str, bool] = field(default_factory=dict)
    routes: dict[str, dict] = field(default_factory=dict)
    agreement: bool | None = None
    exit_code: int = 0
    timing_us: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        return cls(**obj)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))
