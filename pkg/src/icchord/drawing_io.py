"""Plain-text drawing files.

::

    vertices N
    <id> <x_num>/<x_den> <y_num>/<y_den> [role]
    ...
    edges M
    <u> <v>
    ...

Ids run 0..N-1 in order; coordinates are reduced fractions.  Blank lines and
lines starting with ``#`` are ignored on input.  Files written by
:func:`dumps` round-trip byte for byte.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .geom import RationalPoint
from .search import Drawing

_LIT = r"(?:x|nx):\d+"
ROLE_PATTERN = re.compile(
    "|".join(
        [
            r"root", r"s", r"t",
            rf"p:{_LIT}", rf"pprime:{_LIT}",
            r"peak:\d+",
            rf"lit:{_LIT}:c:\d+", rf"anchor:{_LIT}:c:\d+",
            rf"qpt:\d+:\d+:{_LIT}", rf"sseg:\d+:{_LIT}:\d+",
            r"terminal:\d+",
        ]
    )
)
_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


class DrawingFormatError(ValueError):
    pass


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(token: str, lineno: int) -> Fraction:
    if not _RATIONAL.fullmatch(token):
        raise DrawingFormatError(f"line {lineno}: {token!r} is not a rational")
    if "/" not in token:
        return Fraction(int(token))
    num, den = (int(s) for s in token.split("/"))
    if den == 0:
        raise DrawingFormatError(f"line {lineno}: zero denominator")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise DrawingFormatError(f"line {lineno}: {token} is not in lowest terms")
    return q


def valid_role(role: str) -> bool:
    return ROLE_PATTERN.fullmatch(role) is not None


def dumps(d: Drawing) -> str:
    lines = [f"vertices {len(d.vertices)}"]
    for i, p in enumerate(d.vertices):
        row = f"{i} {format_rational(p.x)} {format_rational(p.y)}"
        role = d.labels.get(i)
        if role:
            row += f" {role}"
        lines.append(row)
    lines.append(f"edges {len(d.edges)}")
    lines += [f"{u} {v}" for u, v in d.edges]
    return "\n".join(lines) + "\n"


def _header(line: str, word: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != word or not parts[1].isdigit():
        raise DrawingFormatError(f"line {lineno}: expected '{word} <count>', got {line!r}")
    return int(parts[1])


def loads(text: str) -> Drawing:
    rows = [
        (n, raw.strip())
        for n, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    it = iter(rows)
    try:
        lineno, line = next(it)
    except StopIteration:
        raise DrawingFormatError("empty drawing file") from None
    n = _header(line, "vertices", lineno)
    vertices, labels = [], {}
    for expected in range(n):
        try:
            lineno, line = next(it)
        except StopIteration:
            raise DrawingFormatError(f"file ends after {expected} of {n} vertices") from None
        parts = line.split()
        if len(parts) not in (3, 4):
            raise DrawingFormatError(f"line {lineno}: expected 'id x y [role]'")
        if parts[0] != str(expected):
            raise DrawingFormatError(f"line {lineno}: vertex id {parts[0]} out of order (expected {expected})")
        vertices.append(RationalPoint(parse_rational(parts[1], lineno), parse_rational(parts[2], lineno)))
        if len(parts) == 4:
            if not valid_role(parts[3]):
                raise DrawingFormatError(f"line {lineno}: unknown role {parts[3]!r}")
            labels[expected] = parts[3]
    try:
        lineno, line = next(it)
    except StopIteration:
        raise DrawingFormatError("missing 'edges' header") from None
    m = _header(line, "edges", lineno)
    edges = []
    for expected in range(m):
        try:
            lineno, line = next(it)
        except StopIteration:
            raise DrawingFormatError(f"file ends after {expected} of {m} edges") from None
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise DrawingFormatError(f"line {lineno}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    extra = next(it, None)
    if extra is not None:
        raise DrawingFormatError(f"line {extra[0]}: trailing content")
    if len(set(labels.values())) != len(labels):
        raise DrawingFormatError("a role is used twice")
    try:
        return Drawing(tuple(vertices), tuple(edges), labels)
    except ValueError as exc:
        raise DrawingFormatError(str(exc)) from exc


def read_drawing(path) -> Drawing:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_drawing(d: Drawing, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(d))
