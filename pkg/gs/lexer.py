from typing import Any, List, Tuple
from gs.errors import TokenType, Token, FormatError


Keywords = {
    "group": TokenType.GROUP,
    "gset": TokenType.GSET,
    "semigroup": TokenType.SEMIGROUP,
    "zero": TokenType.ZERO,
    "roles": TokenType.ROLES,
}

BLANKS = " \t\r"
DIGITS = "0123456789"


class Lexer:
    """Splits a table file into tokens. Newlines are tokens since every format is line-oriented."""

    def __init__(self):
        self.buffer = "<text>"
        self.text = ""
        self.start = 0
        self.current = 0
        self.tokens: List[Token] = []

    def peek(self) -> str:
        return self.text[self.current]

    def advance(self) -> str:
        c = self.text[self.current]
        self.current += 1
        return c

    def is_at_end(self) -> bool:
        return self.current >= len(self.text)

    def take_while(self, accept) -> str:
        begin = self.current
        while not self.is_at_end() and accept(self.peek()):
            self.current += 1
        return self.text[begin:self.current]

    def add_token(self, ttype: TokenType, literal: Any = None) -> Token:
        token = Token(ttype=ttype, literal=literal, index=self.start, buffer=self.buffer)
        self.tokens.append(token)
        self.start = self.current
        return token

    def linecol(self, index: int) -> Tuple[int, int]:
        line = self.text.count("\n", 0, index)
        col = index - (self.text.rfind("\n", 0, index) + 1)
        return line, col

    def report_error(self, buffer: str, index: int, msg: str) -> FormatError:
        """Builds the error with the offending line and a caret under the column."""
        line, col = self.linecol(index)
        lines = self.text.split("\n")
        context = [f"In {buffer}, line {line + 1}, near"]
        if line > 0:
            context.append(lines[line - 1])
        context += [lines[line], " " * col + "^"]
        return FormatError(line + 1, msg, "\n".join(context))

    def error(self, msg: str):
        raise self.report_error(self.buffer, self.start, msg)

    def scan_token(self) -> Token:
        self.take_while(lambda c: c in BLANKS)
        self.start = self.current
        if self.is_at_end():
            return self.add_token(TokenType.EOF)

        c = self.peek()
        if c == "\n":
            self.advance()
            return self.add_token(TokenType.NEWLINE, "\n")

        if c == "#":
            self.advance()
            return self.add_token(TokenType.COMMENT, self.take_while(lambda c: c != "\n").strip())

        if c in DIGITS:
            lexeme = self.take_while(lambda c: c in DIGITS)
            if not self.is_at_end() and is_word(self.peek()):
                self.error("Malformed integer.")
            return self.add_token(TokenType.INTEGER, int(lexeme))

        if is_word(c):
            lexeme = self.take_while(is_word)
            return self.add_token(Keywords.get(lexeme, TokenType.TAG), lexeme)

        self.error(f"Unexpected character '{c}'.")

    def scan(self, code: str, buffer: str) -> List[Token]:
        self.buffer = buffer
        self.text = code
        self.start = self.current = 0
        self.tokens = []
        while self.scan_token().ttype != TokenType.EOF:
            pass
        return self.tokens


def is_word(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")
