"""Parser for the textual rule language.

Grammar::

    program   := statement*
    statement := atom [":-" body] "."          normal rule / fact
               | ":-" [body] "."               integrity constraint
               | [INT] "{" [atom (";" atom)*] "}" "."   choice rule
    body      := literal ("," literal)*
    literal   := ["not"] atom
    atom      := IDENT ["(" term ("," term)* ")"]
    term      := IDENT | VARIABLE | INT

``%`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import AspFixError, ParseError
from .program import Atom, Program, Rule, RuleKind, Variable


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<int>-?\d+)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z_][A-Za-z0-9_']*)
  | (?P<punct>[(),.;{}:])
""", re.VERBOSE)


@dataclass
class _Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str, filename: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1, pos, pos + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", span, filename)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, SourceSpan(line, pos - line_start + 1, pos, m.end())))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    end = SourceSpan(line, pos - line_start + 1, pos, pos)
    tokens.append(_Token("eof", "", end))
    return tokens


class _Parser:
    def __init__(self, text: str, filename: str, start_id: int):
        self.tokens = _tokenize(text, filename)
        self.filename = filename
        self.i = 0
        self.next_id = start_id
        self.arity: dict[str, tuple[int, SourceSpan]] = {}

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        return ParseError(message, tok.span, self.filename)

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind != "eof" and tok.text == text

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.statement())
        return Program(tuple(rules))

    def statement(self) -> Rule:
        tok = self.peek()
        rid = self.next_id
        if tok.kind == "if":
            self.advance()
            pos, neg = self.body() if not self.at(".") else ((), ())
            self.expect(".")
            rule = Rule(RuleKind.CONSTRAINT, None, pos, neg, rule_id=rid)
        elif tok.text == "{" or (tok.kind == "int" and self.peek(1).text == "{"):
            rule = self.choice(rid)
        elif tok.kind == "ident":
            head = self.atom()
            pos, neg = (), ()
            if self.peek().kind == "if":
                self.advance()
                pos, neg = self.body()
            self.expect(".")
            rule = Rule(RuleKind.NORMAL, head, pos, neg, rule_id=rid)
        else:
            raise self.error(f"unexpected token {tok.text!r}" if tok.kind != "eof"
                             else "unexpected end of input")
        self.next_id += 1
        return rule

    def choice(self, rid: int) -> Rule:
        bound = 0
        start = self.peek()
        if start.kind == "int":
            bound = int(self.advance().text)
            if bound < 0:
                raise self.error("choice bound must be non-negative", start)
        self.expect("{")
        atoms = []
        if not self.at("}"):
            atoms.append(self.atom())
            while self.at(";"):
                self.advance()
                atoms.append(self.atom())
        self.expect("}")
        self.expect(".")
        unique = list(dict.fromkeys(atoms))
        if bound > len(unique):
            raise self.error(f"choice bound {bound} exceeds atom count {len(unique)}", start)
        return Rule(RuleKind.CHOICE, choice_bound=bound, choice_atoms=tuple(unique), rule_id=rid)

    def body(self):
        pos, neg = [], []
        while True:
            if self.peek().kind == "ident" and self.peek().text == "not" \
                    and self.peek(1).kind == "ident":
                self.advance()
                neg.append(self.atom())
            else:
                pos.append(self.atom())
            if not self.at(","):
                break
            self.advance()
        return tuple(dict.fromkeys(pos)), tuple(dict.fromkeys(neg))

    def atom(self) -> Atom:
        tok = self.peek()
        if tok.kind != "ident" or tok.text == "not":
            raise self.error(f"expected atom, found {tok.text!r}" if tok.kind != "eof"
                             else "expected atom, found end of input")
        self.advance()
        args = []
        if self.at("("):
            self.advance()
            args.append(self.term())
            while self.at(","):
                self.advance()
                args.append(self.term())
            self.expect(")")
        seen = self.arity.get(tok.text)
        if seen is None:
            self.arity[tok.text] = (len(args), tok.span)
        elif seen[0] != len(args):
            raise self.error(
                f"predicate {tok.text} used with arity {len(args)}, "
                f"previously {seen[0]} at line {seen[1].line}", tok)
        return Atom(tok.text, tuple(args))

    def term(self):
        tok = self.advance()
        if tok.kind == "int":
            return int(tok.text)
        if tok.kind == "ident":
            return tok.text
        if tok.kind == "var":
            return Variable(tok.text)
        self.i -= 1
        raise self.error(f"expected term, found {tok.text!r}" if tok.kind != "eof"
                         else "expected term, found end of input")


def parse_program(text: str, filename: str = "<string>", start_id: int = 1) -> Program:
    """Parse ``text`` into a :class:`Program` with sequential rule ids."""
    try:
        return _Parser(text, filename, start_id).program()
    except ParseError:
        raise
    except AspFixError as exc:
        raise ParseError(str(exc), None, filename) from exc


def parse_file(path) -> Program:
    path = Path(path)
    return parse_program(path.read_text(encoding="utf-8"), filename=str(path))


def parse_rule(text: str, rule_id: int = 1) -> Rule:
    prog = parse_program(text, start_id=rule_id)
    if len(prog.rules) != 1:
        raise ParseError(f"expected exactly one rule, got {len(prog.rules)}")
    return prog.rules[0]


def parse_atom(text: str) -> Atom:
    p = _Parser(text.strip(), "<atom>", 1)
    a = p.atom()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input after atom: {p.peek().text!r}")
    return a


def parse_atoms(text: str) -> list[Atom]:
    """Whitespace/newline separated atom list, ``%`` comments allowed; a trailing
    ``.`` after each atom is tolerated."""
    p = _Parser(text, "<atoms>", 1)
    out = []
    while p.peek().kind != "eof":
        out.append(p.atom())
        if p.at(".") or p.at(","):
            p.advance()
    return out
