"""
Parser for the ASCII expression language.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'phi[' nat ']' | 'pi[' nat ']' | 'h' | 'i' | nat ('/' nat)?
            | '(' expr ')' | 'D(' expr ';' expr ')'

'^' binds tighter than '*', which binds tighter than '+' and '-'; all binary
operators associate to the left. Mode indices are 1-based. Parentheses and
generator literals nest at most MAX_NESTING deep and exponents are at most
MAX_EXPONENT.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from utils.errors import ParseError


class Token(NamedTuple):
    type: str
    value: object
    where: int


@dataclass(frozen=True)
class Sum:
    left: object
    right: object


@dataclass(frozen=True)
class Difference:
    left: object
    right: object


@dataclass(frozen=True)
class Negation:
    operand: object


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class PhiAtom:
    mode: int
    where: int = 0


@dataclass(frozen=True)
class PiAtom:
    mode: int
    where: int = 0


@dataclass(frozen=True)
class HAtom:
    pass


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class RationalAtom:
    value: Fraction


@dataclass(frozen=True)
class GeneratorLiteral:
    f: object
    v: object
    where: int = 0


_SINGLE = {"+": "PLUS", "-": "MINUS", "*": "STAR", "^": "CARET", "/": "SLASH",
           "(": "LPAREN", ")": "RPAREN", "[": "LBRACKET", "]": "RBRACKET", ";": "SEMI"}
_WORDS = ("phi", "pi", "h", "i", "D")
_DIGITS = "0123456789"

MAX_NESTING = 100
MAX_EXPONENT = 256


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        char = text[pos]
        if char.isspace():
            pos += 1
        elif char in _DIGITS:
            start = pos
            while pos < len(text) and text[pos] in _DIGITS:
                pos += 1
            try:
                value = int(text[start:pos])
            except ValueError:
                raise ParseError("Number literal is too long", start, text)
            tokens.append(Token("NUMBER", value, start))
        elif char.isalpha():
            start = pos
            while pos < len(text) and text[pos].isalpha():
                pos += 1
            word = text[start:pos]
            if word not in _WORDS:
                raise ParseError(f"Unknown name {word!r}", start, text)
            tokens.append(Token("NAME", word, start))
        elif char in _SINGLE:
            tokens.append(Token(_SINGLE[char], char, pos))
            pos += 1
        else:
            raise ParseError(f"Unexpected character {char!r}", pos, text)
    tokens.append(Token("END", None, len(text)))
    return tokens


class Parser:
    """Recursive-descent parser producing the expression tree"""

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.current
        self.index += 1
        return token

    def _error(self, message, token=None):
        token = token or self.current
        found = "end of input" if token.type == "END" else repr(token.value)
        return ParseError(f"{message}, found {found}", token.where, self.text)

    def _enter(self, token):
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ParseError(f"Nesting deeper than {MAX_NESTING} levels", token.where, self.text)
        self._advance()

    def _expect(self, kind, message):
        if self.current.type != kind:
            raise self._error(message)
        return self._advance()

    def parse(self):
        tree = self.expression()
        if self.current.type != "END":
            raise self._error("Expected end of input")
        return tree

    def expression(self):
        if self.current.type == "MINUS":
            self._advance()
            tree = Negation(self.term())
        else:
            tree = self.term()
        while self.current.type in ("PLUS", "MINUS"):
            op = self._advance()
            right = self.term()
            tree = Sum(tree, right) if op.type == "PLUS" else Difference(tree, right)
        return tree

    def term(self):
        factors = [self.factor()]
        while self.current.type == "STAR":
            self._advance()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.current.type == "CARET":
            self._advance()
            exponent = self._expect("NUMBER", "Expected a nonnegative integer exponent")
            if exponent.value > MAX_EXPONENT:
                raise self._error(f"Exponents are limited to {MAX_EXPONENT}", exponent)
            return Power(base, exponent.value)
        return base

    def _mode(self):
        self._expect("LBRACKET", "Expected '['")
        token = self._expect("NUMBER", "Expected a mode index")
        if token.value < 1:
            raise self._error("Mode indices start at 1", token)
        self._expect("RBRACKET", "Expected ']'")
        return token

    def atom(self):
        token = self.current
        if token.type == "NUMBER":
            self._advance()
            value = Fraction(token.value)
            if self.current.type == "SLASH":
                self._advance()
                denominator = self._expect("NUMBER", "Expected a denominator")
                if denominator.value == 0:
                    raise self._error("Zero denominator", denominator)
                value = Fraction(token.value, denominator.value)
            return RationalAtom(value)
        if token.type == "LPAREN":
            self._enter(token)
            inner = self.expression()
            self._expect("RPAREN", "Expected ')'")
            self.depth -= 1
            return inner
        if token.type == "NAME":
            self._advance()
            if token.value == "phi":
                return PhiAtom(self._mode().value, token.where)
            if token.value == "pi":
                return PiAtom(self._mode().value, token.where)
            if token.value == "h":
                return HAtom()
            if token.value == "i":
                return ImaginaryUnit()
            if self.current.type != "LPAREN":
                raise self._error("Expected '(' after D")
            self._enter(self.current)
            f = self.expression()
            self._expect("SEMI", "Expected ';' between f and v")
            v = self.expression()
            self._expect("RPAREN", "Expected ')'")
            self.depth -= 1
            return GeneratorLiteral(f, v, token.where)
        raise self._error("Expected an atom")


def parse(text):
    """Parse expression text into a tree"""
    return Parser(text).parse()
