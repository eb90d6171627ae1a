"""Parse and serialize the .cdga text format.

A source is a sequence of ';'-terminated statements, with '#' comments:

    gen  NAME : DEGREE ;                       declare a generator
    d    NAME = POLY ;                         differential value (default 0)
    der  NAME ( GEN -> POLY , ... ) deg D ;    a named derivation
    elem NAME = POLY ;                         a named element

Polynomials use +, -, rational literals like 3 or 1/2, '*' or juxtaposition
for products, '^' for powers and parentheses.  Generators must be declared
before use.  Names ending in '_bar' refer to loop-model generators and are
allowed in 'elem' bodies; such elements live in the loop model of the
declared algebra (which must then be simply connected).

Parsing validates everything: derivation values against the declared
degree, differential degrees, and d(d(g)) = 0 for every generator.  All
failures raise ParseError with a source position; no input crashes the
parser.  serialize() emits a canonical text whose parse is structurally
equal to the original document.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .derivations import Derivation
from .errors import CartanError, ParseError
from .gca import Algebra, Element, Generator
from .loop import BAR_SUFFIX, LoopModel, build_loop_model

KEYWORDS = {"gen", "d", "der", "elem", "deg"}

_PUNCT = {
    ";": "SEMI",
    ":": "COLON",
    "=": "EQ",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
    "/": "SLASH",
}


@dataclass
class Token:
    kind: str  # IDENT, NUMBER, one of _PUNCT values, ARROW, EOF
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("ARROW", "->", line, col))
            i += 2
            col += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


@dataclass
class SourceDocument:
    """A parsed presentation with its named derivations and elements."""

    algebra: Algebra
    derivations: Dict[str, Derivation] = field(default_factory=dict)
    elements: Dict[str, Element] = field(default_factory=dict)
    loop_model: Optional[LoopModel] = None  # built iff an element needs bars

    def __eq__(self, other) -> bool:
        if not isinstance(other, SourceDocument):
            return NotImplemented
        return (
            self.algebra.same_presentation(other.algebra)
            and set(self.derivations) == set(other.derivations)
            and all(self.derivations[k] == other.derivations[k] for k in self.derivations)
            and set(self.elements) == set(other.elements)
            and all(
                self.elements[k].terms == other.elements[k].terms
                for k in self.elements
            )
        )

    def loop(self) -> LoopModel:
        if self.loop_model is None:
            self.loop_model = build_loop_model(self.algebra)
        return self.loop_model


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.gen_list: List[Generator] = []
        self.diff_exprs: Dict[str, tuple] = {}  # name -> (expr tree, token)
        self.der_stmts: List[tuple] = []
        self.elem_stmts: List[tuple] = []

    # -- token plumbing -------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, what: str = "") -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(
                f"unexpected {t.kind} {t.text!r}",
                t.line,
                t.col,
                expected=(what or kind,),
            )
        return self.next()

    # -- grammar ---------------------------------------------------------

    def parse(self) -> "SourceDocument":
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.kind != "IDENT":
                raise ParseError(
                    f"unexpected {t.kind} {t.text!r}",
                    t.line,
                    t.col,
                    expected=("gen", "d", "der", "elem"),
                )
            if t.text == "gen":
                self.gen_stmt()
            elif t.text == "d":
                self.d_stmt()
            elif t.text == "der":
                self.der_stmt()
            elif t.text == "elem":
                self.elem_stmt()
            else:
                raise ParseError(
                    f"unknown statement {t.text!r}",
                    t.line,
                    t.col,
                    expected=("gen", "d", "der", "elem"),
                )
        return self.resolve()

    def gen_stmt(self):
        self.next()
        name_tok = self.expect("IDENT", "generator name")
        name = name_tok.text
        if name in KEYWORDS:
            raise ParseError(
                f"{name!r} is a keyword", name_tok.line, name_tok.col
            )
        if name.endswith(BAR_SUFFIX):
            raise ParseError(
                f"generator names may not end in {BAR_SUFFIX!r}",
                name_tok.line,
                name_tok.col,
            )
        if any(g.name == name for g in self.gen_list):
            raise ParseError(
                f"duplicate generator {name!r}", name_tok.line, name_tok.col
            )
        self.expect("COLON")
        deg_tok = self.expect("NUMBER", "degree")
        self.expect("SEMI")
        degree = int(deg_tok.text)
        if degree < 1:
            raise ParseError(
                f"generator degree must be >= 1, got {degree}",
                deg_tok.line,
                deg_tok.col,
            )
        self.gen_list.append(Generator(name, degree))

    def d_stmt(self):
        self.next()
        name_tok = self.expect("IDENT", "generator name")
        self.expect("EQ")
        expr = self.expr()
        self.expect("SEMI")
        if all(g.name != name_tok.text for g in self.gen_list):
            raise ParseError(
                f"differential for undeclared generator {name_tok.text!r}",
                name_tok.line,
                name_tok.col,
            )
        if name_tok.text in self.diff_exprs:
            raise ParseError(
                f"duplicate differential for {name_tok.text!r}",
                name_tok.line,
                name_tok.col,
            )
        self.diff_exprs[name_tok.text] = (expr, name_tok)

    def der_stmt(self):
        kw = self.next()
        name_tok = self.expect("IDENT", "derivation name")
        self.expect("LPAREN")
        pairs = []
        if self.peek().kind != "RPAREN":
            while True:
                gen_tok = self.expect("IDENT", "generator name")
                self.expect("ARROW")
                pairs.append((gen_tok, self.expr()))
                if self.peek().kind == "COMMA":
                    self.next()
                    continue
                break
        self.expect("RPAREN")
        deg_kw = self.expect("IDENT", "deg")
        if deg_kw.text != "deg":
            raise ParseError(
                f"expected 'deg', got {deg_kw.text!r}", deg_kw.line, deg_kw.col
            )
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        deg_tok = self.expect("NUMBER", "degree")
        self.expect("SEMI")
        self.der_stmts.append((name_tok, pairs, sign * int(deg_tok.text), kw))

    def elem_stmt(self):
        self.next()
        name_tok = self.expect("IDENT", "element name")
        self.expect("EQ")
        expr = self.expr()
        self.expect("SEMI")
        self.elem_stmts.append((name_tok, expr))

    # expression trees: ("num", Fraction) | ("gen", name, token) |
    # ("pow", node, int) | ("mul", [nodes]) | ("add", [(sign, node)])

    def expr(self):
        terms = []
        sign = 1
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = -1 if self.next().kind == "MINUS" else 1
        terms.append((sign, self.term()))
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = -1 if self.next().kind == "MINUS" else 1
            terms.append((sign, self.term()))
        return ("add", terms)

    def term(self):
        factors = [self.factor()]
        while True:
            k = self.peek().kind
            if k == "STAR":
                self.next()
                factors.append(self.factor())
            elif k in ("IDENT", "NUMBER", "LPAREN"):  # juxtaposition
                factors.append(self.factor())
            else:
                break
        return ("mul", factors)

    def factor(self):
        t = self.peek()
        if t.kind == "NUMBER":
            self.next()
            num = Fraction(int(t.text))
            if self.peek().kind == "SLASH":
                self.next()
                den = self.expect("NUMBER", "denominator")
                num = Fraction(int(t.text), int(den.text))
            return self._maybe_pow(("num", num))
        if t.kind == "IDENT":
            self.next()
            if t.text in KEYWORDS:
                raise ParseError(
                    f"keyword {t.text!r} inside expression", t.line, t.col
                )
            return self._maybe_pow(("gen", t.text, t))
        if t.kind == "LPAREN":
            self.next()
            inner = self.expr()
            self.expect("RPAREN")
            return self._maybe_pow(inner)
        raise ParseError(
            f"unexpected {t.kind} {t.text!r}",
            t.line,
            t.col,
            expected=("number", "name", "("),
        )

    def _maybe_pow(self, node):
        if self.peek().kind == "CARET":
            self.next()
            e = self.expect("NUMBER", "exponent")
            return ("pow", node, int(e.text))
        return node

    # -- resolution ----------------------------------------------------------

    def resolve(self) -> SourceDocument:
        algebra = Algebra(self.gen_list)
        diff: Dict[str, Element] = {}
        for name, (expr, tok) in self.diff_exprs.items():
            val = self._eval(expr, algebra, allow_bars=False)
            want = algebra.degrees[algebra.index[name]] + 1
            if not val.is_zero() and val.degree() != want:
                raise ParseError(
                    f"d({name}) must have degree {want}, got degree"
                    f" {val.degree() if val.is_homogeneous() else 'mixed'}"
                    f" in {val}",
                    tok.line,
                    tok.col,
                )
            diff[name] = val
        try:
            algebra.set_differential(diff)
        except CartanError as exc:
            raise ParseError(f"invalid differential: {exc}", 1, 1) from exc

        doc = SourceDocument(algebra)
        for name_tok, pairs, degree, kw in self.der_stmts:
            vals: Dict[str, Element] = {}
            for gen_tok, expr in pairs:
                if gen_tok.text not in algebra.index:
                    raise ParseError(
                        f"derivation value for undeclared generator"
                        f" {gen_tok.text!r}",
                        gen_tok.line,
                        gen_tok.col,
                    )
                val = self._eval(expr, algebra, allow_bars=False)
                want = algebra.degrees[algebra.index[gen_tok.text]] + degree
                if not val.is_zero() and val.degree() != want:
                    raise ParseError(
                        f"derivation {name_tok.text!r} of degree {degree}"
                        f" needs degree {want} on {gen_tok.text}, got {val}",
                        gen_tok.line,
                        gen_tok.col,
                    )
                vals[gen_tok.text] = val
            if name_tok.text in doc.derivations:
                raise ParseError(
                    f"duplicate derivation {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            doc.derivations[name_tok.text] = Derivation(algebra, degree, vals)

        for name_tok, expr in self.elem_stmts:
            needs_bars = self._has_bars(expr, algebra)
            if needs_bars:
                try:
                    target = doc.loop().ext
                except CartanError as exc:
                    raise ParseError(
                        f"element {name_tok.text!r} uses barred generators:"
                        f" {exc}",
                        name_tok.line,
                        name_tok.col,
                    ) from exc
            else:
                target = algebra
            if name_tok.text in doc.elements:
                raise ParseError(
                    f"duplicate element {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            doc.elements[name_tok.text] = self._eval(
                expr, target, allow_bars=needs_bars
            )
        return doc

    def _has_bars(self, node, algebra) -> bool:
        kind = node[0]
        if kind == "gen":
            return node[1].endswith(BAR_SUFFIX)
        if kind == "num":
            return False
        if kind == "pow":
            return self._has_bars(node[1], algebra)
        if kind == "mul":
            return any(self._has_bars(f, algebra) for f in node[1])
        return any(self._has_bars(t, algebra) for _, t in node[1])

    def _eval(self, node, algebra: Algebra, allow_bars: bool) -> Element:
        kind = node[0]
        if kind == "num":
            return algebra.one().scale(node[1])
        if kind == "gen":
            name, tok = node[1], node[2]
            if name not in algebra.index:
                hint = ()
                if name.endswith(BAR_SUFFIX) and not allow_bars:
                    hint = ("a base generator (bars only in elem bodies)",)
                raise ParseError(
                    f"undeclared generator {name!r}", tok.line, tok.col, hint
                )
            return algebra.gen(name)
        if kind == "pow":
            return self._eval(node[1], algebra, allow_bars) ** node[2]
        if kind == "mul":
            out = algebra.one()
            for f in node[1]:
                out = out * self._eval(f, algebra, allow_bars)
            return out
        out = algebra.zero()
        for sign, t in node[1]:
            out = out + self._eval(t, algebra, allow_bars).scale(sign)
        return out


def parse_algebra(text: str) -> SourceDocument:
    """Parse a .cdga source; raises ParseError with position on failure."""
    return _Parser(text).parse()


# -- serialization -------------------------------------------------------------


def format_coeff(c: Fraction) -> str:
    return str(c)  # "p/q" or "p"; never a decimal


def element_to_source(e: Element) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for m, c in e.sorted_terms():
        mono = e.alg.mono_str(m)
        if mono == "1":
            frag = format_coeff(c)
        elif c == 1:
            frag = mono
        elif c == -1:
            frag = f"-{mono}"
        else:
            frag = f"{format_coeff(c)}*{mono}"
        parts.append(frag)
    return " + ".join(parts).replace("+ -", "- ")


def serialize(doc: SourceDocument) -> str:
    """Canonical .cdga text; parse(serialize(doc)) == doc."""
    lines = []
    for g in doc.algebra.generators:
        lines.append(f"gen {g.name}:{g.degree};")
    for i, g in enumerate(doc.algebra.generators):
        val = doc.algebra.differential[i]
        if not val.is_zero():
            lines.append(f"d {g.name} = {element_to_source(val)};")
    for name in sorted(doc.derivations):
        der = doc.derivations[name]
        pairs = ", ".join(
            f"{g} -> {element_to_source(v)}" for g, v in sorted(der.values.items())
        )
        lines.append(f"der {name} ({pairs}) deg {der.degree};")
    for name in sorted(doc.elements):
        lines.append(f"elem {name} = {element_to_source(doc.elements[name])};")
    return "\n".join(lines) + "\n"


def presentation_hash(doc: SourceDocument) -> str:
    base = "\n".join(
        [f"gen {g.name}:{g.degree}" for g in doc.algebra.generators]
        + [
            f"d {g.name} = {element_to_source(doc.algebra.differential[i])}"
            for i, g in enumerate(doc.algebra.generators)
        ]
    )
    return hashlib.sha256(base.encode("utf-8")).hexdigest()[:16]
