"""Line-oriented text format for link presentations.

::

    link <name>
    components <n>
    clasp <id> <comp>:<rank> <comp>:<rank> <+|->      # C-complex body
    clasps                                           # marks an empty C-complex body
    word <comp> <letters...>                         # general body
    triple <i> <j> <k> <value>                       # general body, i<j<k

``#`` starts a comment, blank lines are ignored, and a file may hold several
links.  Parsing checks syntax only; semantic checks belong to the validators.
"""

from __future__ import annotations

from typing import Union

from .system import CComplexData, Clasp, ClaspEndpoint, SurfaceSystemData
from .words import Letter, LinearWord

LinkData = Union[CComplexData, SurfaceSystemData]


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line, self.column, self.message = line, column, message
        super().__init__(f"line {line}, column {column}: {message}")


class _Link:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.n = None
        self.clasps: list[Clasp] = []
        self.is_ccomplex = False
        self.words: dict[int, LinearWord] = {}
        self.triples: dict[tuple[int, int, int], int] = {}

    def build(self) -> LinkData:
        if self.n is None:
            raise ParseError(self.line, 1, f"link {self.name!r} has no components line")
        if self.is_ccomplex:
            return CComplexData(self.n, tuple(self.clasps))
        words = [self.words.get(k, LinearWord()) for k in range(1, self.n + 1)]
        return SurfaceSystemData(self.n, words, self.triples)


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    col = 0
    while col < len(line):
        if line[col].isspace():
            col += 1
            continue
        start = col
        while col < len(line) and not line[col].isspace():
            col += 1
        out.append((start + 1, line[start:col]))
    return out


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(lineno, col, f"expected integer {what}, got {text!r}") from None


def _endpoint(tok: tuple[int, str], lineno: int) -> ClaspEndpoint:
    col, text = tok
    comp, sep, rank = text.partition(":")
    if not sep or not comp.isdigit() or not rank.isdigit():
        raise ParseError(lineno, col, f"expected <component>:<rank>, got {text!r}")
    return ClaspEndpoint(int(comp), int(rank))


def parse_link_file(text: str) -> list[tuple[str, LinkData]]:
    links: list[_Link] = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        (col, key), args = toks[0], toks[1:]

        def need(count: int) -> None:
            if len(args) != count:
                raise ParseError(lineno, col, f"'{key}' takes {count} argument(s), got {len(args)}")

        if key == "link":
            need(1)
            name = args[0][1]
            if any(link.name == name for link in links):
                raise ParseError(lineno, args[0][0], f"duplicate link name {name!r}")
            cur = _Link(name, lineno)
            links.append(cur)
            continue
        if cur is None:
            raise ParseError(lineno, col, f"'{key}' before any 'link' line")
        if key == "components":
            need(1)
            if cur.n is not None:
                raise ParseError(lineno, col, "repeated components line")
            n = _int(args[0], lineno, "component count")
            if n < 1:
                raise ParseError(lineno, args[0][0], "component count must be >= 1")
            cur.n = n
            continue
        if cur.n is None:
            raise ParseError(lineno, col, "components line must come before the body")
        if key in ("clasp", "clasps"):
            need(4 if key == "clasp" else 0)
            if cur.words or cur.triples:
                raise ParseError(lineno, col, "a link has either clasps or words/triples, not both")
            cur.is_ccomplex = True
            if key == "clasps":
                continue
            sign_col, sign_text = args[3]
            if sign_text not in ("+", "-"):
                raise ParseError(lineno, sign_col, f"clasp sign must be + or -, got {sign_text!r}")
            cur.clasps.append(Clasp(args[0][1], _endpoint(args[1], lineno), _endpoint(args[2], lineno),
                                    1 if sign_text == "+" else -1))
        elif key == "word":
            if not args:
                raise ParseError(lineno, col, "'word' needs a component")
            if cur.is_ccomplex:
                raise ParseError(lineno, col, "a link has either clasps or words/triples, not both")
            comp = _int(args[0], lineno, "component")
            if not 1 <= comp <= cur.n:
                raise ParseError(lineno, args[0][0], f"component {comp} out of range 1..{cur.n}")
            if comp in cur.words:
                raise ParseError(lineno, col, f"repeated word for component {comp}")
            letters = []
            for lcol, ltext in args[1:]:
                try:
                    letters.append(Letter.parse(ltext))
                except ValueError:
                    raise ParseError(lineno, lcol, f"bad letter {ltext!r}") from None
            cur.words[comp] = LinearWord(letters)
        elif key == "triple":
            need(4)
            if cur.is_ccomplex:
                raise ParseError(lineno, col, "a link has either clasps or words/triples, not both")
            i, j, k = (_int(t, lineno, "index") for t in args[:3])
            if not i < j < k:
                raise ParseError(lineno, args[0][0], "triple indices must be strictly increasing")
            if i < 1 or k > cur.n:
                raise ParseError(lineno, args[0][0], f"triple indices out of range 1..{cur.n}")
            if (i, j, k) in cur.triples:
                raise ParseError(lineno, col, f"repeated triple {i} {j} {k}")
            cur.triples[(i, j, k)] = _int(args[3], lineno, "triple count")
        else:
            raise ParseError(lineno, col, f"unknown keyword {key!r}")
    return [(link.name, link.build()) for link in links]


def serialize_link(name: str, data: LinkData) -> str:
    lines = [f"link {name}", f"components {data.n}"]
    if isinstance(data, CComplexData):
        if not data.clasps:
            lines.append("clasps")
        for c in data.clasps:
            lines.append(f"clasp {c.id} {c.a} {c.b} {'+' if c.sign > 0 else '-'}")
    else:
        for k in range(1, data.n + 1):
            w = data.linear(k)
            if w:
                lines.append(f"word {k} {w}")
        for (i, j, k), v in data.triples:
            lines.append(f"triple {i} {j} {k} {v}")
    return "\n".join(lines) + "\n"


def serialize_link_file(links) -> str:
    return "\n".join(serialize_link(name, data) for name, data in links)
