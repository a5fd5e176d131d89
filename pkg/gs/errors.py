from enum import Enum
from typing import Any, Optional, Tuple
from pydantic import BaseModel

# Tokens of the instance file formats.

TokenType = Enum(
    "TokenType",
    [
        "EOF",
        "NEWLINE",
        "INTEGER",
        "GROUP",
        "GSET",
        "SEMIGROUP",
        "ZERO",
        "ROLES",
        "TAG",
        "COMMENT",
    ]
)


class Token(BaseModel):
    ttype: TokenType
    buffer: Optional[str] = ""
    index: Optional[int] = 0
    literal: Any = None

    def __repr__(self):
        return f"{self.ttype.name}({self.buffer},{self.index}):{self.literal}"

    def __str__(self):
        return self.__repr__()


# Exceptions.

class AlgebraError(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class FormatError(AlgebraError):
    def __init__(self, line: int, message: str, context: str = ""):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.context = context


# Axiom failures carry the first failing witness.

class AxiomError(AlgebraError):
    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.witness = witness


class BadShape(AxiomError):
    def __init__(self, expected: int, row: int, length: int):
        super().__init__(f"Row {row} has {length} entries, expected {expected}.", (row,))


class NotClosed(AxiomError):
    def __init__(self, row: int, col: int, value: int):
        super().__init__(f"Entry ({row}, {col}) = {value} is out of range.", (row, col))


class NotAssociative(AxiomError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"Associativity fails for ({i}, {j}, {k}).", (i, j, k))


class NoIdentity(AxiomError):
    def __init__(self):
        super().__init__("No identity element.")


class NoInverse(AxiomError):
    def __init__(self, x: int):
        super().__init__(f"Element {x} has no inverse.", (x,))


class IdentityAxiomFails(AxiomError):
    def __init__(self, x: int):
        super().__init__(f"Point {x} is moved by the identity.", (x,))


class CompatibilityFails(AxiomError):
    def __init__(self, x: int, g: int, h: int):
        super().__init__(f"(x^g)^h != x^(gh) for x={x}, g={g}, h={h}.", (x, g, h))


# Misuse of otherwise valid structures.

class H0NotSubgroup(AlgebraError):
    pass


class DifferentParents(AlgebraError):
    pass


class GroupMismatch(AlgebraError):
    pass


class CarrierMismatch(AlgebraError):
    pass


class CarrierTooLarge(AlgebraError):
    pass


class NotTransitive(AlgebraError):
    pass


class NotAGSetCongruence(AlgebraError):
    pass


class NotACongruence(AlgebraError):
    pass


class NotGX0(AlgebraError):
    pass


class BoundsExceeded(AlgebraError):
    pass


class UnknownClaim(AlgebraError):
    pass
