"""Shared tokenizer for the bundled concrete syntaxes."""

from __future__ import annotations

import re


class ParseError(Exception):
    def __init__(self, message, pos=None):
        super().__init__(message if pos is None
                         else "%s (at offset %d)" % (message, pos))
        self.pos = pos


class Tokens:
    """A token cursor with save/restore for cheap backtracking."""

    def __init__(self, src: str, symbols: list[str], keywords: set[str],
                 ident_extra: str = ""):
        sym = sorted(symbols, key=len, reverse=True)
        pattern = "|".join(
            [r"\d+", r"[A-Za-z_][A-Za-z0-9_%s]*" % re.escape(ident_extra)]
            + [re.escape(s) for s in sym])
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        for m in re.finditer(r"\s+|" + pattern, src):
            if m.start() != pos:
                raise ParseError("unexpected character %r" % src[pos], pos)
            pos = m.end()
            text = m.group()
            if text.strip() == "":
                continue
            if text[0].isdigit():
                kind = "int"
            elif text[0].isalpha() or text[0] == "_":
                kind = "kw" if text in keywords else "ident"
            else:
                kind = "sym"
            self.toks.append((kind, text, m.start()))
        if pos != len(src):
            raise ParseError("unexpected character %r" % src[pos], pos)
        self.i = 0

    def peek(self, offset=0):
        j = self.i + offset
        return self.toks[j][1] if j < len(self.toks) else None

    def peek_kind(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self):
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of input")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def eat(self, text):
        if self.peek() != text:
            raise ParseError("expected %r, found %r" % (text, self.peek()),
                             self.pos())
        return self.next()

    def ident(self):
        if self.peek_kind() != "ident":
            raise ParseError("expected identifier, found %r" % self.peek(),
                             self.pos())
        return self.next()

    def integer(self) -> int:
        neg = False
        if self.peek() == "-":
            self.next()
            neg = True
        if self.peek_kind() != "int":
            raise ParseError("expected integer, found %r" % self.peek(),
                             self.pos())
        v = int(self.next())
        return -v if neg else v

    def pos(self):
        return self.toks[self.i][2] if self.i < len(self.toks) else None

    def at_end(self):
        return self.i >= len(self.toks)

    def expect_end(self):
        if not self.at_end():
            raise ParseError("trailing input %r" % self.peek(), self.pos())

    def save(self):
        return self.i

    def restore(self, mark):
        self.i = mark
