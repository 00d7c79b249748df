"""Plain-text ``.ideal`` and ``.mat`` files.

Both start with a header line ``ring n=<vars> p=<char>`` (optionally
``vars=a,b,c``).  An ``.ideal`` file then lists one polynomial per line; a
``.mat`` file lists one row per line with entries separated by ``;``.  Blank
lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re

from .ideals import Ideal
from .matrixlab import PolyMatrix
from .ring import Field, ParseError, Ring, parse_polynomial

_HEADER = re.compile(r"ring\b(.*)$")
_FIELD = re.compile(r"\s*([A-Za-z]+)=(\S+)")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_header(line: str, lineno: int = 1) -> Ring:
    text = _strip(line)
    m = _HEADER.match(text.lstrip())
    if not m:
        raise ParseError("expected header 'ring n=<vars> p=<char>'", line, 0, lineno)
    opts = {}
    pos = text.index("ring") + 4
    rest = text[pos:]
    while rest.strip():
        fm = _FIELD.match(rest)
        if not fm:
            raise ParseError("malformed header field (expected key=value)", line,
                             len(text) - len(rest.lstrip()), lineno)
        opts[fm.group(1)] = (fm.group(2), pos + fm.start(2), pos + fm.start(1))
        pos += fm.end()
        rest = rest[fm.end():]
    for key in opts:
        if key not in ("n", "p", "vars"):
            raise ParseError(f"unknown header field {key!r}", line, opts[key][2], lineno)
    if "n" not in opts:
        raise ParseError("header needs n=<number of variables>", line, 0, lineno)
    try:
        n = int(opts["n"][0])
    except ValueError:
        raise ParseError("n must be an integer", line, opts["n"][1], lineno) from None
    if n < 1:
        raise ParseError("n must be positive", line, opts["n"][1], lineno)
    p = Field().p
    if "p" in opts:
        try:
            fld = Field(int(opts["p"][0]))
        except ValueError as e:
            raise ParseError(f"bad characteristic: {e}", line, opts["p"][1], lineno) from None
        p = fld.p
    names = None
    if "vars" in opts:
        names = tuple(opts["vars"][0].split(","))
        if len(names) != n:
            raise ParseError(f"vars lists {len(names)} names but n={n}", line, opts["vars"][1], lineno)
    return Ring(n, Field(p), names=names)


def _body(text: str):
    lines = text.splitlines()
    for i, line in enumerate(lines, 1):
        if _strip(line).strip():
            return parse_header(line, i), [(j, l) for j, l in enumerate(lines[i:], i + 1)
                                           if _strip(l).strip()]
    raise ParseError("empty input (no ring header)", "", 0, 1)


def _poly(ring, line, lineno, start=0, segment=None):
    seg = line if segment is None else segment
    try:
        return parse_polynomial(ring, seg, lineno)
    except ParseError as e:
        # re-anchor the column inside the full line
        raise ParseError(str(e).split(": ", 1)[1], line, start + e.column - 1, lineno) from None


def parse_ideal(text: str) -> Ideal:
    ring, rows = _body(text)
    if not rows:
        raise ParseError("ideal file lists no polynomials", "", 0, 1)
    return Ideal(ring, [_poly(ring, _strip(l), i) for i, l in rows])


def parse_matrix(text: str) -> PolyMatrix:
    ring, rows = _body(text)
    if not rows:
        raise ParseError("matrix file has no rows", "", 0, 1)
    out, width = [], None
    for lineno, line in rows:
        line = _strip(line)
        entries, start = [], 0
        for seg in line.split(";"):
            entries.append(_poly(ring, line, lineno, start, seg))
            start += len(seg) + 1
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ParseError(f"row has {len(entries)} entries, expected {width}", line, 0, lineno)
        out.append(entries)
    return PolyMatrix(ring, out)


def read_ideal(path) -> Ideal:
    with open(path) as fh:
        return parse_ideal(fh.read())


def read_matrix(path) -> PolyMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def _header(ring: Ring) -> str:
    head = f"ring n={ring.nvars} p={ring.p}"
    if ring.names is not None:
        head += " vars=" + ",".join(ring.names)
    return head


def format_ideal(I: Ideal) -> str:
    return "\n".join([_header(I.ring)] + [str(g) for g in I.gens]) + "\n"


def format_matrix(M: PolyMatrix) -> str:
    return "\n".join([_header(M.ring)] + ["; ".join(str(e) for e in row) for row in M.rows]) + "\n"
