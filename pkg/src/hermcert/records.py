"""Line-oriented ``key=value`` records.

Grammar::

    document := header NEWLINE (record NEWLINE)*
    header   := "# hermcert " command " v1"
    record   := pair (" " pair)*
    pair     := key "=" value
    key      := [a-z_][a-z0-9_]*
    value    := shell-style token (quoted when it contains spaces or quotes)

Every record starts with ``record=<kind>``. Rationals print as ``a`` or
``a/b``, enclosures as ``[lo,hi]`` (a point prints as its value), booleans
as ``true``/``false``, sequences comma-separated, missing values as ``-``.
"""

from __future__ import annotations

import re
import shlex
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import Enclosure, fmt_fraction

VERSION = "v1"
_KEY = re.compile(r"[a-z_][a-z0-9_]*\Z")


class RecordError(ValueError):
    pass


def format_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return fmt_fraction(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, Enclosure):
        return str(v)
    if isinstance(v, (list, tuple)):
        return ",".join(format_value(x) for x in v)
    return str(v)


def emit(kind: str, fields: Mapping) -> str:
    pairs = [("record", kind), *fields.items()]
    out = []
    for k, v in pairs:
        if not _KEY.match(k):
            raise RecordError(f"bad key {k!r}")
        text = format_value(v)
        out.append(f"{k}={shlex.quote(text)}")
    return " ".join(out)


def parse(line: str) -> dict[str, str]:
    """Parse one record line into a key -> raw value map."""
    try:
        tokens = shlex.split(line)
    except ValueError as exc:
        raise RecordError(f"unbalanced quoting: {exc}") from None
    out: dict[str, str] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not _KEY.match(key):
            raise RecordError(f"not a key=value pair: {tok!r}")
        if key in out:
            raise RecordError(f"duplicate key {key!r}")
        out[key] = value
    if "record" not in out:
        raise RecordError("record kind missing")
    return out


def header(command: str) -> str:
    return f"# hermcert {command} {VERSION}"


def parse_document(text: str) -> tuple[str, list[dict[str, str]]]:
    lines = text.splitlines()
    if not lines:
        raise RecordError("empty document")
    m = re.fullmatch(r"# hermcert (\S+) (v\d+)", lines[0])
    if not m:
        raise RecordError("line 1: missing header")
    if m.group(2) != VERSION:
        raise RecordError(f"line 1: unsupported version {m.group(2)}")
    recs = []
    for i, line in enumerate(lines[1:], 2):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            recs.append(parse(line))
        except RecordError as exc:
            raise RecordError(f"line {i}: {exc}") from None
    return m.group(1), recs


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def parse_enclosure(text: str) -> Enclosure:
    if text.startswith("["):
        lo, _, hi = text.strip("[]").partition(",")
        return Enclosure(Fraction(lo), Fraction(hi))
    return Enclosure.point(Fraction(text))


def render_table(records: Iterable[tuple[str, Mapping]]) -> str:
    """Aligned columns, one block per run of records of the same kind."""
    blocks: list[tuple[str, list[Mapping]]] = []
    for kind, fields in records:
        if blocks and blocks[-1][0] == kind and list(blocks[-1][1][0]) == list(fields):
            blocks[-1][1].append(fields)
        else:
            blocks.append((kind, [fields]))
    out = []
    for kind, rows in blocks:
        keys = list(rows[0])
        cells = [[format_value(r[k]) for k in keys] for r in rows]
        if len(rows) == 1:
            width = max((len(k) for k in keys), default=0)
            out.append(f"[{kind}]")
            out.extend(f"  {k.ljust(width)}  {c}" for k, c in zip(keys, cells[0]))
        else:
            widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
            out.append(f"[{kind}]")
            out.append("  " + "  ".join(k.rjust(w) for k, w in zip(keys, widths)))
            out.extend("  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)
        out.append("")
    return "\n".join(out)
