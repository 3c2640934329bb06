"""Lexer and recursive-descent parser for polynomial expressions and ``.glc`` sessions.

A session is a sequence of statements separated by newlines or ``;``::

    ring R = poly(GF(101), [x, y], grevlex) mod ideal(x*y)
    module N = coker(R, [[x]])
    ideal m = (x, y)
    pd N
    ext 1 N R

Newlines inside brackets are ignored.  Command lines keep their words raw;
names are resolved when the command runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import FieldSpec, MonomialOrder, Polynomial, PolynomialRing


class GlcError(Exception):
    kind = "error"

    def __init__(self, message, line=None, col=None, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        loc = f"{line}:{col}: " if line is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{self.kind} error at {loc}{message}{exp}")


class LexicalError(GlcError):
    kind = "lexical"


class ParseSyntaxError(GlcError):
    kind = "syntax"


class SemanticError(GlcError):
    kind = "semantic"


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, NL, WORD, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n|;)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<op>[()\[\],=*^+\-/])
""", re.VERBOSE)

COMMANDS = ("dim", "depth", "pd", "id", "grade", "ext", "tor", "deficiency", "canonical",
            "gen-canonical", "gen-deficiency", "dual-side", "cech", "limit", "top", "check",
            "suite")


def tokenize(text: str):
    """Tokens of ``text``; command lines become one NAME token plus raw WORD tokens."""
    out = []
    line, col, pos, depth = 1, 1, 0, 0
    at_stmt_start = True
    n = len(text)
    while pos < n:
        if at_stmt_start and depth == 0:
            m = re.compile(r"[ \t\r]*([A-Za-z][A-Za-z\-]*)").match(text, pos)
            if m and m.group(1) in COMMANDS:
                word_start = m.start(1)
                col += word_start - pos
                end = text.find("\n", pos)
                end = n if end == -1 else end
                semi = text.find(";", pos, end)
                if semi != -1:
                    end = semi
                body = text[word_start:end]
                hash_at = body.find("#")
                if hash_at != -1:
                    body = body[:hash_at]
                out.append(Token("CMD", m.group(1), line, col))
                wpos = len(m.group(1))
                for wm in re.finditer(r"\S+", body[wpos:]):
                    out.append(Token("WORD", wm.group(0), line, col + wpos + wm.start()))
                col += end - word_start
                pos = end
                continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LexicalError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group(0)
        if kind == "nl":
            if depth == 0:
                out.append(Token("NL", s, line, col))
                at_stmt_start = True
            if s == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            pos = m.end()
            continue
        if kind in ("ws", "comment"):
            pos = m.end()
            col += len(s)
            continue
        at_stmt_start = False
        if kind == "op":
            if s in "([":
                depth += 1
            elif s in ")]":
                depth = max(0, depth - 1)
        out.append(Token({"int": "INT", "name": "NAME", "op": "OP"}[kind], s, line, col))
        pos = m.end()
        col += len(s)
    out.append(Token("EOF", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text) -> bool:
        t = self.tok
        return t.kind in ("OP", "NAME") and t.text == text

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail([repr(text)])
        return self.advance()

    def expect_kind(self, kind, label) -> Token:
        if self.tok.kind != kind:
            self.fail([label])
        return self.advance()

    def fail(self, expected):
        t = self.tok
        shown = "end of input" if t.kind == "EOF" else ("end of line" if t.kind == "NL"
                                                         else repr(t.text))
        raise ParseSyntaxError(f"unexpected {shown}", t.line, t.col, expected)

    # polynomial expressions ---------------------------------------------
    def expr(self, S: PolynomialRing) -> Polynomial:
        f = self.term(S)
        while self.at("+") or self.at("-"):
            op = self.advance().text
            g = self.term(S)
            f = f + g if op == "+" else f - g
        return f

    def term(self, S):
        f = self.factor(S)
        while self.at("*") or self.at("/"):
            op = self.advance().text
            if op == "*":
                f = f * self.factor(S)
            else:
                t = self.expect_kind("INT", "integer")
                d = int(t.text)
                if d == 0 or (S.field.p and d % S.field.p == 0):
                    raise SemanticError("division by zero", t.line, t.col)
                f = f * S.const(S.field.inv(S.field(d)))
        return f

    def factor(self, S):
        if self.at("-"):
            self.advance()
            return -self.factor(S)
        if self.at("+"):
            self.advance()
            return self.factor(S)
        base = self.atom(S)
        if self.at("^"):
            self.advance()
            k = self.expect_kind("INT", "integer exponent")
            base = base ** int(k.text)
        return base

    def atom(self, S):
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return S.const(int(t.text))
        if t.kind == "NAME":
            if t.text not in S.names:
                raise SemanticError(f"unknown variable {t.text!r}", t.line, t.col,
                                    S.names)
            self.advance()
            return S.var(t.text)
        if self.at("("):
            self.advance()
            f = self.expr(S)
            self.expect(")")
            return f
        self.fail(["integer", "variable", "'('", "'-'"])


def parse_polynomial(text: str, S: PolynomialRing) -> Polynomial:
    """Parse one polynomial expression in the variables of ``S``."""
    p = _Parser([t for t in tokenize_expr(text)])
    f = p.expr(S)
    if p.tok.kind != "EOF":
        p.fail(["operator", "end of input"])
    return f


def tokenize_expr(text: str):
    toks = tokenize("(" + text + ")")
    # strip the wrapping parentheses while keeping columns relative to text
    inner = toks[1:-2]
    return [Token(t.kind, t.text, t.line, t.col - 1) for t in inner] + [toks[-1]]


# ---------------------------------------------------------------------------
# sessions


@dataclass
class IdealDecl:
    name: str
    ring: str
    gens: list


@dataclass
class Command:
    name: str
    args: list
    line: int = 0
    col: int = 0

    def __eq__(self, other):
        return isinstance(other, Command) and (self.name, self.args) == (other.name, other.args)

    def text(self) -> str:
        return " ".join([self.name] + list(self.args))


@dataclass
class Session:
    """Ordered bindings plus the commands found in the source."""

    bindings: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)
    module_ring: dict = field(default_factory=dict)
    order: list = field(default_factory=list)
    commands: list = field(default_factory=list)
    source: str = ""

    def bind(self, name, kind, obj, tok, ring_name=None):
        if name in self.bindings:
            raise SemanticError(f"name {name!r} already bound", tok.line, tok.col)
        self.bindings[name] = obj
        self.kinds[name] = kind
        if ring_name is not None:
            self.module_ring[name] = ring_name
        self.order.append(name)

    def __getitem__(self, name):
        return self.bindings[name]

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        if self.order != other.order or self.commands != other.commands:
            return False
        for name in self.order:
            if self.kinds[name] != other.kinds[name]:
                return False
            if self.module_ring.get(name) != other.module_ring.get(name):
                return False
            a, b = self.bindings[name], other.bindings[name]
            if self.kinds[name] == "ideal":
                if a.ring != b.ring or a.gens != b.gens:
                    return False
            elif a != b:
                return False
        return True


def _parse_field(p: _Parser) -> FieldSpec:
    if p.at("QQ"):
        p.advance()
        return FieldSpec(0)
    p.expect("GF")
    p.expect("(")
    t = p.expect_kind("INT", "prime")
    p.expect(")")
    try:
        return FieldSpec(int(t.text))
    except ValueError as exc:
        raise SemanticError(str(exc), t.line, t.col) from None


def _parse_list(p: _Parser, item, open_="[", close="]"):
    p.expect(open_)
    out = []
    if p.at(close):
        p.advance()
        return out
    out.append(item())
    while p.at(","):
        p.advance()
        out.append(item())
    p.expect(close)
    return out


def _int(p: _Parser) -> int:
    neg = False
    if p.at("-"):
        p.advance()
        neg = True
    t = p.expect_kind("INT", "integer")
    return -int(t.text) if neg else int(t.text)


def parse_session(text: str) -> Session:
    """Parse a ``.glc`` session."""
    from .modules import FPModule, PolyRing

    p = _Parser(tokenize(text))
    sess = Session(source=text)
    current_ring = None
    while p.tok.kind != "EOF":
        t = p.tok
        if t.kind == "NL":
            p.advance()
            continue
        if t.kind == "CMD":
            p.advance()
            words = []
            while p.tok.kind == "WORD":
                words.append(p.advance().text)
            sess.commands.append(Command(t.text, words, t.line, t.col))
        elif p.at("ring"):
            p.advance()
            name = p.expect_kind("NAME", "name")
            p.expect("=")
            p.expect("poly")
            p.expect("(")
            F = _parse_field(p)
            p.expect(",")
            names = _parse_list(p, lambda: p.expect_kind("NAME", "variable").text)
            p.expect(",")
            ot = p.tok
            if ot.kind != "NAME" or ot.text not in ("grevlex", "lex", "graded"):
                p.fail(["grevlex", "lex", "graded-lex"])
            p.advance()
            order = ot.text
            if order == "graded":
                p.expect("-")
                p.expect("lex")
                order = "graded-lex"
            p.expect(")")
            try:
                S = PolynomialRing(F, tuple(names), MonomialOrder(order))
            except ValueError as exc:
                raise SemanticError(str(exc), name.line, name.col) from None
            gens = []
            if p.at("mod"):
                p.advance()
                p.expect("ideal")
                gens = _parse_list(p, lambda: p.expr(S), "(", ")")
            try:
                R = PolyRing(F, names, order, gens)
            except ValueError as exc:
                raise SemanticError(str(exc), name.line, name.col) from None
            sess.bind(name.text, "ring", R, name)
            current_ring = name.text
        elif p.at("module"):
            p.advance()
            name = p.expect_kind("NAME", "name")
            p.expect("=")
            p.expect("coker")
            p.expect("(")
            rt = p.expect_kind("NAME", "ring name")
            if sess.kinds.get(rt.text) != "ring":
                raise SemanticError(f"unknown ring {rt.text!r}", rt.line, rt.col)
            R = sess.bindings[rt.text]
            p.expect(",")
            mt = p.tok
            rows = _parse_list(p, lambda: _parse_list(p, lambda: p.expr(R.S)))
            twists = None
            if p.at(","):
                p.advance()
                p.expect("twists")
                p.expect("=")
                tt = p.tok
                twists = _parse_list(p, lambda: _int(p))
                if len(twists) != len(rows):
                    raise SemanticError("twists length must equal the number of rows",
                                        tt.line, tt.col)
            p.expect(")")
            degrees = [-a for a in twists] if twists is not None else None
            try:
                M = FPModule.from_matrix(R, rows, degrees) if rows else FPModule.zero(R)
            except ValueError as exc:
                raise SemanticError(str(exc), mt.line, mt.col) from None
            sess.bind(name.text, "module", M, name, rt.text)
        elif p.at("ideal"):
            p.advance()
            name = p.expect_kind("NAME", "name")
            if current_ring is None:
                raise SemanticError("ideal declared before any ring", name.line, name.col)
            p.expect("=")
            R = sess.bindings[current_ring]
            gens = _parse_list(p, lambda: R(p.expr(R.S)), "(", ")")
            for g in gens:
                if not g.is_homogeneous():
                    raise SemanticError(f"non-homogeneous ideal generator {g}",
                                        name.line, name.col)
            sess.bind(name.text, "ideal", IdealDecl(name.text, current_ring, gens), name,
                      current_ring)
        else:
            p.fail(["'ring'", "'module'", "'ideal'", "command"])
        if p.tok.kind not in ("NL", "EOF"):
            p.fail(["end of line"])
    return sess


def _field_text(F: FieldSpec) -> str:
    return "QQ" if F.p == 0 else f"GF({F.p})"


def print_session(sess: Session) -> str:
    """Canonical source text; ``parse_session(print_session(s)) == s``."""
    lines = []
    for name in sess.order:
        kind = sess.kinds[name]
        obj = sess.bindings[name]
        if kind == "ring":
            s = (f"ring {name} = poly({_field_text(obj.field)}, [{', '.join(obj.variables)}], "
                 f"{obj.order.kind})")
            if obj.quotient_ideal.generators:
                s += " mod ideal(" + ", ".join(map(str, obj.quotient_ideal.generators)) + ")"
            lines.append(s)
        elif kind == "module":
            lines.append(f"module {name} = {print_module(obj, sess.module_ring[name])}")
        else:
            lines.append(f"ideal {name} = (" + ", ".join(map(str, obj.gens)) + ")")
    for c in sess.commands:
        lines.append(c.text())
    return "\n".join(lines) + "\n"


def print_module(M, ring_name: str) -> str:
    if M.rank == 0:
        return f"coker({ring_name}, [])"
    if M.relations:
        rows = M.presentation.rows()
    else:
        rows = [[M.ring.S.zero()] for _ in range(M.rank)]
    body = "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in rows) + "]"
    s = f"coker({ring_name}, {body}"
    if any(M.degrees):
        s += ", twists=[" + ", ".join(str(-d) for d in M.degrees) + "]"
    return s + ")"
