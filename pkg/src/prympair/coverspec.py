"""Text format for a pair of covers of the line.

::

    # comments run to the end of the line
    labels = p1 p2 p3 p4      # optional: the shared branch label order

    [g1]
    degree = 3
    p1 = (1 2 3)
    p2 = (1 3 2)

    [g2]
    degree = 2
    p1 = (1 2)
    p3 = (1 2)
    p4 = (1 2)

Sheets are numbered from 1 in the file and from 0 in memory.  A label not
listed in a section carries the identity there, and ``()`` spells the
identity explicitly.  Without a ``labels`` line the order is that of first
appearance.  Label names are made of letters, digits, ``_``, ``.`` and ``-``.
"""
from __future__ import annotations

import re

from .covers import BranchedCover, MonodromyTuple, PairDiagram, Permutation
from .errors import ParseError

SECTIONS = ("g1", "g2")
_LABEL = re.compile(r"[A-Za-z0-9_.\-]+")
_SECTION = re.compile(r"\[\s*([A-Za-z0-9_]+)\s*\]")


def parse_cycles(text, degree, line=None, column=1):
    """Parse 1-based disjoint cycle notation such as ``(1 2)(3 4)`` into a Permutation."""
    images = list(range(degree))
    seen = set()
    i = 0
    n = len(text)

    def fail(msg, at):
        raise ParseError(msg, line, column + at)

    while True:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        if text[i] != "(":
            fail(f"expected '(' but found {text[i]!r}", i)
        i += 1
        cyc = []
        while True:
            while i < n and text[i] in " \t,":
                i += 1
            if i == n:
                fail("unclosed cycle", i)
            if text[i] == ")":
                i += 1
                break
            m = re.match(r"\d+", text[i:])
            if not m:
                fail(f"expected a sheet number but found {text[i]!r}", i)
            k = int(m.group())
            if not 1 <= k <= degree:
                fail(f"sheet {k} is outside 1..{degree}", i)
            if k - 1 in seen:
                fail(f"sheet {k} appears twice: not a bijection", i)
            seen.add(k - 1)
            cyc.append(k - 1)
            i += m.end()
        for j, x in enumerate(cyc):
            images[x] = cyc[(j + 1) % len(cyc)]
    return Permutation(tuple(images))


def _strip_comment(raw):
    k = raw.find("#")
    return raw if k < 0 else raw[:k]


def parse(text: str):
    """Parse a cover-spec document into ``(g1, g2)`` over one label list."""
    order = None
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        col = len(body) - len(body.lstrip()) + 1
        stripped = body.strip()
        m = _SECTION.fullmatch(stripped)
        if m:
            name = m.group(1)
            if name not in SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, col)
            if name in sections:
                raise ParseError(f"section [{name}] appears twice", lineno, col)
            current = sections[name] = {"degree": None, "perms": {}, "line": lineno, "raw": []}
            continue
        if "=" not in stripped:
            raise ParseError("expected 'key = value'", lineno, col)
        key, _, value = body.partition("=")
        key = key.strip()
        # 1-based column where the value starts
        vcol = body.index("=") + 2 + len(value) - len(value.lstrip())
        value = value.strip()
        if key == "labels":
            if current is not None:
                raise ParseError("'labels' must come before the first section", lineno, col)
            if order is not None:
                raise ParseError("'labels' given twice", lineno, col)
            order = value.split()
            for tok in order:
                if not _LABEL.fullmatch(tok):
                    raise ParseError(f"bad label {tok!r}", lineno, vcol + value.index(tok))
            if len(set(order)) != len(order):
                raise ParseError("repeated label in 'labels'", lineno, vcol)
            continue
        if current is None:
            raise ParseError(f"{key!r} outside of a section", lineno, col)
        if key == "degree":
            if current["degree"] is not None:
                raise ParseError("degree given twice", lineno, col)
            if current["perms"]:
                raise ParseError("degree must precede the permutations", lineno, col)
            if not value.isdigit() or int(value) < 1:
                raise ParseError(f"degree must be a positive integer, got {value!r}", lineno, vcol)
            current["degree"] = int(value)
            continue
        if not _LABEL.fullmatch(key):
            raise ParseError(f"bad label {key!r}", lineno, col)
        if current["degree"] is None:
            raise ParseError("degree must precede the permutations", lineno, col)
        if key in current["perms"]:
            raise ParseError(f"label {key!r} given twice in this section", lineno, col)
        current["perms"][key] = parse_cycles(value, current["degree"], lineno, vcol)
        current["raw"].append((key, lineno))

    for name in SECTIONS:
        if name not in sections:
            raise ParseError(f"missing section [{name}]")
        if sections[name]["degree"] is None:
            raise ParseError(f"section [{name}] has no degree", sections[name]["line"], 1)
    if order is None:
        order = []
        for name in SECTIONS:
            for key in sections[name]["perms"]:
                if key not in order:
                    order.append(key)
    else:
        for name in SECTIONS:
            for key, lineno in sections[name]["raw"]:
                if key not in order:
                    raise ParseError(f"label {key!r} is not in 'labels'", lineno, 1)

    covers = []
    for name in SECTIONS:
        sec = sections[name]
        ident = Permutation.identity(sec["degree"])
        perms = tuple(sec["perms"].get(lab, ident) for lab in order)
        try:
            covers.append(BranchedCover(MonodromyTuple(sec["degree"], tuple(order), perms)))
        except ValueError as e:
            raise ParseError(f"[{name}]: {e}", sec["line"], 1) from None
    return tuple(covers)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def load_diagram(path, component=None):
    g1, g2 = load(path)
    return PairDiagram.from_covers(g1, g2, component=component)


def dump(g1: BranchedCover, g2: BranchedCover, comment=None) -> str:
    """Serialize two covers over one label list; identities are omitted."""
    if g1.labels != g2.labels:
        raise ValueError("covers must share one label list")
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append("labels = " + " ".join(map(str, g1.labels)))
    for name, c in zip(SECTIONS, (g1, g2)):
        lines += ["", f"[{name}]", f"degree = {c.degree}"]
        for lab, p in zip(c.labels, c.perms):
            if not p.is_identity():
                lines.append(f"{lab} = {p}")
    return "\n".join(lines) + "\n"


def dump_diagram(d: PairDiagram, comment=None) -> str:
    return dump(d.g1, d.g2, comment)
