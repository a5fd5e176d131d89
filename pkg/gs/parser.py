from typing import List, Optional, Union
from pydantic import ValidationError
from gs.algebra import FiniteGroup, validate_group
from gs.errors import FormatError, TokenType, Token
from gs.gset import GSet, validate_gset
from gs.lexer import Lexer
from gs.semigroup import ElementRole, FiniteSemigroup, validate_semigroup

###
# Grammar of the instance files:
# ```
#     file        ::= blank* (group | gset | semigroup) blank* EOF
#     blank       ::= COMMENT? NEWLINE
#     group       ::= "group" INTEGER NEWLINE row{n}
#     gset        ::= "gset" INTEGER INTEGER NEWLINE blank* group row{m}
#     semigroup   ::= "semigroup" INTEGER NEWLINE row{n}
#                     ("zero" INTEGER NEWLINE)?
#                     ("roles" TAG{n} NEWLINE)?
#     row         ::= INTEGER+ COMMENT? NEWLINE
# ```
# The first comment before a header names the structure.
###

Instance = Union[FiniteGroup, GSet, FiniteSemigroup]


class Parser:
    def __init__(self):
        self.lexer = Lexer()
        self.reset()

    def reset(self):
        self.current = 0
        self.tokens = []

    def is_at_end(self) -> bool:
        return self.tokens[self.current].ttype == TokenType.EOF

    def peek(self) -> Token:
        return self.tokens[self.current]

    def advance(self) -> Token:
        token = self.tokens[self.current]
        if not self.is_at_end():
            self.current += 1
        return token

    def check(self, ttype: TokenType) -> bool:
        return (self.tokens[self.current].ttype == ttype)

    def previous(self) -> Token:
        return self.tokens[self.current - 1]

    def match(self, ttypes: List[TokenType]) -> bool:
        for ttype in ttypes:
            if self.check(ttype):
                self.advance()
                return True
        return False

    def error(self, token: Token, msg: str) -> None:
        raise self.lexer.report_error(token.buffer, token.index, msg)

    def consume(self, ttype: TokenType, fail_msg: str) -> Token:
        if not self.check(ttype):
            self.error(self.peek(), fail_msg)
        return self.advance()

    def skip_blank(self) -> str:
        """Skips empty and comment lines, returning the first comment seen."""
        comment = ""
        while self.match([TokenType.NEWLINE, TokenType.COMMENT]):
            if self.previous().ttype == TokenType.COMMENT and not comment:
                comment = self.previous().literal
        return comment

    def end_line(self):
        self.match([TokenType.COMMENT])
        if self.match([TokenType.NEWLINE]) or self.is_at_end():
            return
        self.error(self.peek(), "Expected end of line.")

    def parse(self, code: str, buffer: str = "std") -> Instance:
        self.reset()
        self.tokens = self.lexer.scan(code, buffer)
        name = self.skip_blank()
        if self.check(TokenType.GROUP):
            instance = self.parse_group(name)
        elif self.check(TokenType.GSET):
            instance = self.parse_gset(name)
        elif self.check(TokenType.SEMIGROUP):
            instance = self.parse_semigroup(name)
        else:
            self.error(self.peek(), "Expected a 'group', 'gset' or 'semigroup' header.")
        self.skip_blank()
        if not self.is_at_end():
            self.error(self.peek(), "Unexpected content after the table.")
        return instance

    def parse_size(self, what: str) -> int:
        token = self.consume(TokenType.INTEGER, f"Expected the {what}.")
        if token.literal < 1:
            self.error(token, f"The {what} must be positive.")
        return token.literal

    def parse_rows(self, count: int, width: int) -> List[List[int]]:
        rows = []
        for _ in range(count):
            self.skip_blank()
            if not self.check(TokenType.INTEGER):
                self.error(self.peek(), f"Expected a row of {width} indices.")
            first = self.peek()
            row = []
            while self.match([TokenType.INTEGER]):
                row.append(self.previous().literal)
            if len(row) != width:
                self.error(first, f"Expected {width} entries, got {len(row)}.")
            self.end_line()
            rows.append(row)
        return rows

    def parse_group(self, name: str) -> FiniteGroup:
        self.consume(TokenType.GROUP, "Expected a 'group' header.")
        n = self.parse_size("group order")
        self.end_line()
        return validate_group(self.parse_rows(n, n), name=name)

    def parse_gset(self, name: str) -> GSet:
        self.consume(TokenType.GSET, "Expected a 'gset' header.")
        m = self.parse_size("carrier size")
        n = self.parse_size("group order")
        self.end_line()
        group_name = self.skip_blank()
        header = self.peek()
        group = self.parse_group(group_name)
        if group.order != n:
            self.error(header, f"The header announces a group of order {n}, got {group.order}.")
        return validate_gset(group, self.parse_rows(m, n), name=name)

    def parse_semigroup(self, name: str) -> FiniteSemigroup:
        self.consume(TokenType.SEMIGROUP, "Expected a 'semigroup' header.")
        n = self.parse_size("semigroup order")
        self.end_line()
        rows = self.parse_rows(n, n)
        self.skip_blank()

        zero: Optional[int] = None
        if self.match([TokenType.ZERO]):
            token = self.consume(TokenType.INTEGER, "Expected the index of the zero.")
            if token.literal >= n:
                self.error(token, f"Zero index {token.literal} is out of range.")
            zero = token.literal
            self.end_line()
            self.skip_blank()

        roles: Optional[List[ElementRole]] = None
        roles_token = None
        if self.match([TokenType.ROLES]):
            roles_token = self.previous()
            roles = []
            while self.match([TokenType.TAG]):
                try:
                    roles.append(ElementRole.from_tag(self.previous().literal))
                except ValueError as e:
                    self.error(self.previous(), str(e))
            if len(roles) != n:
                self.error(roles_token, f"Expected {n} role tags, got {len(roles)}.")
            self.end_line()

        try:
            return validate_semigroup(rows, zero=zero, roles=roles, name=name)
        except ValidationError:
            self.error(roles_token or self.peek(), "Role tags are inconsistent with the table.")


def parse_text(code: str, buffer: str = "std") -> Instance:
    return Parser().parse(code, buffer)


def parse_file(path: str) -> Instance:
    with open(path, "rb") as f:
        data = f.read()
    try:
        code = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise FormatError(line, f"Invalid UTF-8 at byte {e.start}.", f"In {path}, byte {e.start}")
    return Parser().parse(code, path)
