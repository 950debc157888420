"""Minimal s-expressions: bare symbols, naturals, double-quoted strings with
backslash escapes, and parenthesized sequences.  Canonical printing uses a
single space between elements so that parse and print are mutually inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Sym:
    """A bare identifier (as opposed to a quoted string)."""
    text: str


SExpr = Union[Sym, str, int, tuple]


class SexprError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_DELIMS = set('()" \t\r\n')


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str):
        raise SexprError(message, self.line, self.col)

    def _advance(self, c: str):
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def next_token(self):
        """Returns one of ('(',), (')',), ('atom', value) or None at EOF."""
        while (c := self.peek()) is not None and c in " \t\r\n":
            self._advance(c)
        c = self.peek()
        if c is None:
            return None
        start = (self.line, self.col)
        if c in "()":
            self._advance(c)
            return (c,)
        if c == '"':
            self._advance(c)
            chars = []
            while True:
                c = self.peek()
                if c is None:
                    raise SexprError("unterminated string", *start)
                self._advance(c)
                if c == '"':
                    return ("atom", "".join(chars))
                if c == "\\":
                    e = self.peek()
                    if e not in ('"', "\\"):
                        raise SexprError(f"bad escape {e!r}", self.line, self.col)
                    self._advance(e)
                    chars.append(e)
                else:
                    chars.append(c)
        chars = []
        while (c := self.peek()) is not None and c not in _DELIMS:
            self._advance(c)
            chars.append(c)
        word = "".join(chars)
        if word.isdigit():
            return ("atom", int(word))
        return ("atom", Sym(word))


def parse_sexpr(text: str) -> SExpr:
    """Parse exactly one expression; trailing content is an error."""
    lexer = _Lexer(text)
    expr = _parse(lexer)
    if lexer.next_token() is not None:
        lexer.error("trailing content after expression")
    return expr


def _parse(lexer: _Lexer) -> SExpr:
    tok = lexer.next_token()
    return _parse_from(lexer, tok)


def _parse_from(lexer: _Lexer, tok) -> SExpr:
    if tok is None:
        lexer.error("unexpected end of input")
    if tok[0] == ")":
        lexer.error("unexpected ')'")
    if tok[0] == "(":
        items = []
        while True:
            tok = lexer.next_token()
            if tok is None:
                lexer.error("unclosed '('")
            if tok[0] == ")":
                return tuple(items)
            items.append(_parse_from(lexer, tok))
    return tok[1]


def print_sexpr(e: SExpr) -> str:
    if isinstance(e, tuple):
        return "(" + " ".join(print_sexpr(x) for x in e) + ")"
    if isinstance(e, Sym):
        return e.text
    if isinstance(e, int):
        return str(e)
    escaped = e.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'
