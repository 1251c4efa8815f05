"""Evaluation of expression trees into Symbols and DiffWords."""

from enveloping.generator import make_generator, split_first_order
from enveloping.words import DiffWord
from expr.parser import (Difference, GeneratorLiteral, HAtom, ImaginaryUnit, Negation,
                         PhiAtom, PiAtom, Power, Product, RationalAtom, Sum, parse)
from symbols.scalar import H, I
from symbols.symbol import Symbol
from utils.errors import ParseError


def _summands(tree):
    """Unwind a left-nested chain of sums and differences into (sign, term) pairs"""
    summands = []
    while isinstance(tree, (Sum, Difference)):
        summands.append((1 if isinstance(tree, Sum) else -1, tree.right))
        tree = tree.left
    summands.append((1, tree))
    summands.reverse()
    return summands


def _fold_sum(tree, evaluate, space):
    total = None
    for sign, term in _summands(tree):
        value = evaluate(term, space)
        if sign < 0:
            value = -value
        total = value if total is None else total + value
    return total


def to_symbol(tree, space):
    """Evaluate in symbol context; generator literals are not allowed here"""
    if isinstance(tree, (Sum, Difference)):
        return _fold_sum(tree, to_symbol, space)
    if isinstance(tree, Negation):
        return -to_symbol(tree.operand, space)
    if isinstance(tree, Product):
        result = to_symbol(tree.factors[0], space)
        for factor in tree.factors[1:]:
            result = result * to_symbol(factor, space)
        return result
    if isinstance(tree, Power):
        return to_symbol(tree.base, space) ** tree.exponent
    if isinstance(tree, PhiAtom):
        return Symbol.phi(space, tree.mode)
    if isinstance(tree, PiAtom):
        return Symbol.pi(space, tree.mode)
    if isinstance(tree, HAtom):
        return Symbol.constant(space, H)
    if isinstance(tree, ImaginaryUnit):
        return Symbol.constant(space, I)
    if isinstance(tree, RationalAtom):
        return Symbol.constant(space, tree.value)
    if isinstance(tree, GeneratorLiteral):
        raise ParseError("Generator literal D(f; v) is only allowed in word expressions", tree.where)
    raise TypeError(f"Unknown expression node {tree!r}")


def to_word(tree, space):
    """Evaluate in word context: products concatenate, plain factors become generators"""
    if isinstance(tree, (Sum, Difference)):
        return _fold_sum(tree, to_word, space)
    if isinstance(tree, Negation):
        return -to_word(tree.operand, space)
    if isinstance(tree, Product):
        result = to_word(tree.factors[0], space)
        for factor in tree.factors[1:]:
            result = result * to_word(factor, space)
        return result
    if isinstance(tree, Power):
        return to_word(tree.base, space) ** tree.exponent
    if isinstance(tree, GeneratorLiteral):
        generator = make_generator(to_symbol(tree.f, space), to_symbol(tree.v, space))
        return DiffWord.of(generator)
    symbol = to_symbol(tree, space)
    if symbol.is_constant():
        return DiffWord.unit(space, symbol.constant_term())
    return DiffWord.of(split_first_order(symbol))


def parse_symbol(text, space):
    return to_symbol(parse(text), space)


def parse_word(text, space):
    return to_word(parse(text), space)
