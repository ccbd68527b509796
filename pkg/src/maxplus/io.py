"""Text formats for matrices, graphs, grid functions and command results.

Matrix::

    matrix <rows> <cols> <semiring>
    <entry> <entry> ...          # one line per row

Entries are element literals (``3``, ``1/2``, ``-inf``, ``1b``, ``(1,2)``)
or interval literals ``[lo,hi]``.  A bracketed entry promotes the matrix to
the weak interval extension of the header semiring unless the header
already names one (``interval:rmax`` or ``strong-interval:rmax``).

Graph::

    graph <n> [<semiring>]
    <u> <v> <w>                  # 0-based node ids

Grid function::

    grid <d> <n>
    <x_1> ... <x_d> <value>

Blank lines and ``#`` comments are ignored everywhere; ``key=value`` lines
before a header are skipped, so a result file can be read back as a matrix.
"""

from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Optional, Union

from .dequant import GridFunction
from .errors import InvalidElement, OrderViolation, ParseError
from .interval import IntervalSemiring
from .matrix import GraphSpec, Matrix
from .semiring import NumericMode, RMax, Semiring, semiring_from_string

Source = Union[str, os.PathLike]

_KEY_VALUE = re.compile(r"^[A-Za-z_][\w.-]*=")


def resolve_semiring(token: str) -> Semiring:
    """Selection string, optionally prefixed ``interval:`` or ``strong-interval:``."""
    t = token.strip()
    for prefix, strong in (("strong-interval:", True), ("interval:", False)):
        if t.lower().startswith(prefix):
            return IntervalSemiring(resolve_semiring(t[len(prefix):]), strong=strong)
    try:
        return semiring_from_string(t)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def with_exact(s: Semiring) -> Semiring:
    if isinstance(s, IntervalSemiring):
        return IntervalSemiring(with_exact(s.base), strong=s.strong)
    name = s.name
    if name.endswith("@exact") or name == "bool":
        return s
    return semiring_from_string(name + "@exact")


def _read(source: Source) -> str:
    return Path(source).read_text()


def tokenize(line: str) -> list:
    """Whitespace-separated tokens with bracketed groups kept whole; yields (col, token)."""
    out, depth, start, cur = [], 0, None, []
    for col, ch in enumerate(line, start=1):
        if ch.isspace() and depth == 0:
            if cur:
                out.append((start, "".join(cur)))
                cur = []
            continue
        if not cur:
            start = col
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        cur.append(ch)
    if cur:
        out.append((start, "".join(cur)))
    return [(c, t.replace(" ", "")) for c, t in out]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _header(lines, keyword: str):
    for lineno, line in lines:
        if _KEY_VALUE.match(line.strip()):
            continue
        toks = line.split()
        if toks[0] != keyword:
            raise ParseError(f"expected a '{keyword}' header, found {toks[0]!r}", lineno, 1)
        return lineno, toks
    raise ParseError(f"no '{keyword}' header found")


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None
    if v < 1:
        raise ParseError(f"{what} must be positive", lineno)
    return v


def _parse_entry(s: Semiring, tok: str, lineno: int, col: int):
    try:
        return s.parse(tok)
    except OrderViolation as exc:
        raise OrderViolation(f"line {lineno}, column {col}: {exc}") from None
    except (ParseError, InvalidElement, ValueError) as exc:
        raise ParseError(str(exc), lineno, col) from None


def matrix_from_text(text: str, semiring: Optional[Semiring] = None) -> Matrix:
    """Parse the first matrix block of ``text``.

    ``semiring`` overrides the header's semiring; entries are then read
    with the override's literal syntax.
    """
    lines = _content_lines(text)
    lineno, toks = _header(lines, "matrix")
    if len(toks) != 4:
        raise ParseError("header is 'matrix <rows> <cols> <semiring>'", lineno)
    rows, cols = _int(toks[1], lineno, "rows"), _int(toks[2], lineno, "cols")
    s = semiring or resolve_semiring(toks[3])
    raw = []
    for _ in range(rows):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise ParseError(f"expected {rows} rows, got {len(raw)}") from None
        row = tokenize(line)
        if len(row) != cols:
            raise ParseError(f"expected {cols} entries, got {len(row)}", lineno)
        raw.append((lineno, row))
    if not isinstance(s, IntervalSemiring) and any(t.startswith("[") for _, r in raw for _, t in r):
        s = IntervalSemiring(s)
    entries = tuple(tuple(_parse_entry(s, t, ln, c) for c, t in row) for ln, row in raw)
    return Matrix(s, entries)


def parse_matrix(path: Source, semiring: Optional[Semiring] = None) -> Matrix:
    return matrix_from_text(_read(path), semiring)


def format_matrix(A: Matrix) -> str:
    f = A.semiring.format
    lines = [f"matrix {A.rows} {A.cols} {A.semiring.name}"]
    lines += [" ".join(f(x) for x in r) for r in A.entries]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str, semiring: Optional[Semiring] = None) -> tuple:
    """Returns ``(GraphSpec, semiring)``; the semiring comes from the header or the argument."""
    lines = _content_lines(text)
    lineno, toks = _header(lines, "graph")
    if len(toks) not in (2, 3):
        raise ParseError("header is 'graph <n> [<semiring>]'", lineno)
    n = _int(toks[1], lineno, "node count")
    s = semiring or (resolve_semiring(toks[2]) if len(toks) == 3 else RMax(mode=NumericMode.EXACT))
    arcs = []
    for lineno, line in lines:
        parts = tokenize(line)
        if len(parts) != 3:
            raise ParseError("arc lines are 'u v w'", lineno)
        try:
            u, v = int(parts[0][1]), int(parts[1][1])
        except ValueError:
            raise ParseError("node ids must be integers", lineno) from None
        arcs.append((u, v, _parse_entry(s, parts[2][1], lineno, parts[2][0])))
    return GraphSpec(n, tuple(arcs)), s


def parse_graph(path: Source, semiring: Optional[Semiring] = None) -> tuple:
    return graph_from_text(_read(path), semiring)


def format_graph(g: GraphSpec, s: Semiring) -> str:
    lines = [f"graph {g.node_count} {s.name}"]
    lines += [f"{u} {v} {s.format(w)}" for u, v, w in g.arcs]
    return "\n".join(lines) + "\n"


def grid_from_text(text: str, semiring: Optional[Semiring] = None) -> GridFunction:
    s = semiring or RMax(mode=NumericMode.FLOAT64)
    lines = _content_lines(text)
    lineno, toks = _header(lines, "grid")
    if len(toks) != 3:
        raise ParseError("header is 'grid <d> <n>'", lineno)
    d, n = _int(toks[1], lineno, "dimension"), _int(toks[2], lineno, "point count")
    points, values = [], []
    for _ in range(n):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise ParseError(f"expected {n} points, got {len(points)}") from None
        parts = tokenize(line)
        if len(parts) != d + 1:
            raise ParseError(f"expected {d} coordinates and a value", lineno)
        try:
            points.append(tuple(float(t) for _, t in parts[:d]))
        except ValueError:
            raise ParseError("bad coordinate", lineno) from None
        values.append(_parse_entry(s, parts[d][1], lineno, parts[d][0]))
    return GridFunction(tuple(points), tuple(values), s)


def parse_grid(path: Source, semiring: Optional[Semiring] = None) -> GridFunction:
    return grid_from_text(_read(path), semiring)


def format_grid(f: GridFunction) -> str:
    lines = [f"grid {f.dim} {len(f)}"]
    for p, v in zip(f.points, f.values):
        lines.append(" ".join(repr(c) for c in p) + " " + f.semiring.format(v))
    return "\n".join(lines) + "\n"


def sniff(text: str) -> str:
    """Keyword of the first header line: ``matrix``, ``graph`` or ``grid``."""
    for _, line in _content_lines(text):
        if _KEY_VALUE.match(line.strip()):
            continue
        return line.split()[0]
    raise ParseError("empty input")


# -- command results ----------------------------------------------------------

def format_result(fields: list, blocks: Optional[dict] = None) -> str:
    """``key=value`` lines, then ``block=<name>`` followed by a matrix per block."""
    out = [f"{k}={v}" for k, v in fields]
    for name, A in (blocks or {}).items():
        out.append(f"block={name}")
        out.append(format_matrix(A).rstrip("\n"))
    return "\n".join(out) + "\n"


def read_result(text: str) -> tuple:
    """Inverse of :func:`format_result`: ``(fields dict, {name: Matrix})``."""
    fields, blocks = {}, {}
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith("block="):
            name = line.split("=", 1)[1]
            rows = int(lines[i + 1].split()[1])
            blocks[name] = matrix_from_text("\n".join(lines[i + 1:i + 2 + rows]))
            i += 2 + rows
            continue
        if "=" in line:
            k, v = line.split("=", 1)
            fields[k] = v
        i += 1
    return fields, blocks
