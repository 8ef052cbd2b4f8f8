"""Line-oriented text persistence for substitution tables.

::

    harmsum-table 1
    alphabet harmonic
    max_weight 4
    order explicit
    ORDER 4: S[1,1,1,1], S[1,1,2], ...
    S[1,1] := 1/2*S[1]^2 + 1/2*S[2]
    BASIS 1: S[1]

Rules appear by weight, each weight in column order.
"""
from __future__ import annotations

from pathlib import Path

from .alphabet import AlphabetSpec
from .basis import SubstitutionTable
from .syntax import ParseError, format_expr, format_word, parse_expr, parse_word
from .words import OrderMode, WordOrder, enumerate_words, word_weight

MAGIC = "harmsum-table"
VERSION = 1


class TableFormatError(ValueError):
    pass


def dumps(table: SubstitutionTable) -> str:
    lines = [f"{MAGIC} {VERSION}", f"alphabet {table.spec.describe()}", f"max_weight {table.max_weight}"]
    order = table.order
    explicit = order.mode is OrderMode.EXPLICIT
    lines.append(f"order {'explicit' if explicit else 'default'}")
    if explicit:
        for d in sorted(order.explicit):
            lines.append(f"ORDER {d}: " + ", ".join(format_word(w) for w in order.explicit[d]))
    for d in range(1, table.max_weight + 1):
        for w in enumerate_words(table.spec, d, order):
            if w in table.rules:
                lines.append(f"{format_word(w)} := {format_expr(table.rules[w])}")
    for d in range(1, table.max_weight + 1):
        lines.append(f"BASIS {d}: " + ", ".join(format_word(w) for w in table.basis.get(d, [])))
    return "\n".join(lines) + "\n"


def _words(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    # split on commas outside brackets
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(parse_word(cur))
            cur = ""
        else:
            cur += ch
    out.append(parse_word(cur))
    return out


def loads(text: str) -> SubstitutionTable:
    lines = text.splitlines()
    if not lines or lines[0].split() != [MAGIC, str(VERSION)]:
        raise TableFormatError(f"not a {MAGIC} version {VERSION} file")
    spec = None
    max_weight = 0
    mode = OrderMode.DEFAULT
    explicit = {}
    rules = {}
    basis = {}
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("alphabet "):
                spec = AlphabetSpec.parse(line.split(None, 1)[1])
            elif line.startswith("max_weight "):
                max_weight = int(line.split()[1])
            elif line.startswith("order "):
                mode = OrderMode(line.split()[1])
            elif line.startswith("ORDER "):
                head, rest = line[6:].split(":", 1)
                explicit[int(head)] = tuple(_words(rest))
            elif line.startswith("BASIS "):
                head, rest = line[6:].split(":", 1)
                basis[int(head)] = _words(rest)
            elif ":=" in line:
                lhs, rhs = line.split(":=", 1)
                rules[parse_word(lhs)] = parse_expr(rhs)
            else:
                raise TableFormatError(f"line {lineno}: unrecognized entry")
        except (ParseError, ValueError) as exc:
            if isinstance(exc, TableFormatError):
                raise
            raise TableFormatError(f"line {lineno}: {exc}") from exc
    if spec is None:
        raise TableFormatError("missing alphabet line")
    order = WordOrder(mode, explicit) if mode is OrderMode.EXPLICIT else WordOrder()
    table = SubstitutionTable(spec, order, max_weight, rules, basis)
    for d in range(1, max_weight + 1):
        n_words = len(enumerate_words(spec, d))
        n_basis = len(basis.get(d, []))
        table.report.add(d, n_words, n_words - n_basis)
    if any(word_weight(w) > max_weight for w in rules):
        raise TableFormatError("rule above max_weight")
    return table


def save(table: SubstitutionTable, path) -> None:
    Path(path).write_text(dumps(table))


def load(path) -> SubstitutionTable:
    return loads(Path(path).read_text())
