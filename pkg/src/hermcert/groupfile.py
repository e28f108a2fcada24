"""Group specifications: inline strings and definition files.

Inline forms::

    free:R            free group of rank R
    fpc:m1,m2,...     free product of cyclic groups (0 = infinite cyclic)
    cayley:FILE       finite group from a file with ``kind: cayley``
    rws:FILE          rewriting system from a file with ``kind: rws``
    file:FILE         any definition file

Definition files hold ``field: value`` lines; ``#`` starts a comment::

    kind: cayley          # or free, fpc, rws
    rank: 2               # free
    orders: 2,3           # fpc
    table:                # cayley: one row of integers per line
      0 1 2
      1 2 0
      2 0 1
    generators: 1,2       # cayley (element indices) or rws (count)
    rule: bb -> b'        # rws, one per line; words over a..z with '
"""

from __future__ import annotations

import re
from pathlib import Path

from .groups import (
    ALPHABET,
    FiniteCayley,
    FreeGroup,
    FreeProductCyclic,
    GroupBackend,
    GroupError,
    RewritingSystem,
)

_WORD = re.compile(r"([a-z])('*)")


class SpecError(ValueError):
    """Parse error naming the offending field and line."""

    def __init__(self, message: str, field: str = "", line: int = 0, source: str = "") -> None:
        where = []
        if source:
            where.append(source)
        if line:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


def _int_list(text: str, field: str, line: int, source: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise SpecError(f"expected integers, got {text!r}", field, line, source) from None


def word_to_indices(text: str) -> list[int]:
    """``ab'`` -> [1, -2]; ``1`` -> []."""
    text = text.strip()
    if text == "1":
        return []
    out, pos = [], 0
    for m in _WORD.finditer(text):
        if m.start() != pos:
            break
        k = ALPHABET.index(m.group(1)) + 1
        out.append(-k if len(m.group(2)) % 2 else k)
        pos = m.end()
    if pos != len(text) or not text:
        raise ValueError(f"cannot parse word {text!r}")
    return out


def parse_group_text(text: str, source: str = "<text>", expect: str | None = None) -> GroupBackend:
    fields: dict[str, tuple[str, int]] = {}
    table: list[list[int]] = []
    rules: list[tuple[list[int], list[int], int]] = []
    in_table = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.fullmatch(r"\s*([a-z_]+)\s*:\s*(.*)", line)
        if m is None:
            if in_table:
                table.append(_int_list(line, "table", lineno, source))
                continue
            raise SpecError(f"expected 'field: value', got {line.strip()!r}", "", lineno, source)
        key, value = m.group(1), m.group(2).strip()
        in_table = key == "table"
        if key == "table":
            if value:
                table.append(_int_list(value, "table", lineno, source))
        elif key == "rule":
            lhs, sep, rhs = value.partition("->")
            if not sep:
                raise SpecError("expected 'lhs -> rhs'", "rule", lineno, source)
            try:
                rules.append((word_to_indices(lhs), word_to_indices(rhs), lineno))
            except ValueError as exc:
                raise SpecError(str(exc), "rule", lineno, source) from None
        elif key in ("kind", "rank", "orders", "generators", "name"):
            if key in fields:
                raise SpecError("duplicate field", key, lineno, source)
            fields[key] = (value, lineno)
        else:
            raise SpecError("unknown field", key, lineno, source)

    if "kind" not in fields:
        raise SpecError("missing field", "kind", 0, source)
    kind, kline = fields["kind"]
    if expect is not None and kind != expect:
        raise SpecError(f"expected kind {expect!r}, found {kind!r}", "kind", kline, source)

    def need(key: str) -> tuple[str, int]:
        if key not in fields:
            raise SpecError(f"missing field for kind {kind}", key, 0, source)
        return fields[key]

    name = fields.get("name", (None, 0))[0]
    try:
        if kind == "free":
            value, line = need("rank")
            ranks = _int_list(value, "rank", line, source)
            if len(ranks) != 1:
                raise SpecError("expected one integer", "rank", line, source)
            return FreeGroup(ranks[0])
        if kind == "fpc":
            value, line = need("orders")
            return FreeProductCyclic(_int_list(value, "orders", line, source))
        if kind == "cayley":
            if not table:
                raise SpecError("missing table rows", "table", 0, source)
            gens = None
            if "generators" in fields:
                value, line = fields["generators"]
                gens = _int_list(value, "generators", line, source)
            return FiniteCayley(table, generators=gens, name=name)
        if kind == "rws":
            value, line = need("generators")
            count = _int_list(value, "generators", line, source)
            if len(count) != 1:
                raise SpecError("expected the number of generators", "generators", line, source)
            return RewritingSystem(count[0], [(l, r) for l, r, _ in rules], name=name)
    except GroupError as exc:
        raise SpecError(str(exc), kind, kline, source) from None
    raise SpecError(f"unknown kind {kind!r}", "kind", kline, source)


def load_group_file(path: str | Path, expect: str | None = None) -> GroupBackend:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read file: {exc.strerror}", "", 0, str(path)) from None
    return parse_group_text(text, str(path), expect)


def parse_group_spec(spec: str) -> GroupBackend:
    kind, sep, arg = spec.strip().partition(":")
    if not sep or not arg:
        raise SpecError(f"expected KIND:ARG, got {spec!r}", "group")
    try:
        if kind == "free":
            return FreeGroup(int(arg))
        if kind == "fpc":
            return FreeProductCyclic([int(x) for x in arg.split(",")])
    except ValueError:
        raise SpecError(f"bad parameter {arg!r}", "group") from None
    except GroupError as exc:
        raise SpecError(str(exc), "group") from None
    if kind in ("cayley", "rws"):
        return load_group_file(arg, expect=kind)
    if kind == "file":
        return load_group_file(arg)
    raise SpecError(f"unknown group kind {kind!r}", "group")
