"""
Quantization maps from symbols to differential operators.

Normal ordering sends phi^a pi^b to (multiplication by phi^a) o (lambda d)^b.
Weyl ordering averages each monomial over every interleaving of its phi and
pi factors, mode by mode (factors of different modes commute).
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from star.operators import DiffOperator
from symbols.symbol import EMPTY, MultiIndex, Symbol


def quantize_normal(symbol, ctx):
    """Operator with every derivative standing to the right"""
    ctx.require_space(symbol)
    space = symbol.space
    grouped = {}
    for (phi, pi), coeff in symbol.terms.items():
        part = Symbol.monomial(space, phi, EMPTY, coeff * ctx.lam_power(pi.degree))
        grouped[pi] = grouped[pi] + part if pi in grouped else part
    return DiffOperator(space, grouped)


def dequantize_normal(op, ctx):
    """Normal-ordered symbol of an operator (inverse of quantize_normal)"""
    space = op.space
    result = Symbol.zero(space)
    for alpha, coeff in op.terms.items():
        terms = {}
        for (phi, _), value in coeff.terms.items():
            terms[(phi, alpha)] = value.divide_by_monomial(ctx.coefficient ** alpha.degree, alpha.degree)
        result = result + Symbol(space, terms)
    return result


def _single_mode_weyl(space, mode, a, b, ctx):
    """Symmetrized operator of phi_mode^a pi_mode^b"""
    letter_phi = DiffOperator.multiplication(Symbol.phi(space, mode))
    letter_pi = DiffOperator.derivative(space, MultiIndex.unit(mode), Symbol.constant(space, ctx.lam))
    total = None
    for positions in combinations(range(a + b), b):
        chosen = set(positions)
        word = DiffOperator.identity(space)
        for slot in range(a + b):
            word = word.compose(letter_pi if slot in chosen else letter_phi)
        total = word if total is None else total + word
    if total is None:
        return DiffOperator.identity(space)
    return total.scale(Fraction(1, comb(a + b, b)))


def quantize_weyl(symbol, ctx):
    """Totally symmetric ordering of every monomial"""
    ctx.require_space(symbol)
    space = symbol.space
    result = DiffOperator(space)
    cache = {}
    for (phi, pi), coeff in symbol.terms.items():
        op = DiffOperator.identity(space)
        for mode in range(1, space.modes + 1):
            a, b = phi.exponent(mode), pi.exponent(mode)
            if not a and not b:
                continue
            key = (mode, a, b)
            if key not in cache:
                cache[key] = _single_mode_weyl(space, mode, a, b, ctx)
            op = op.compose(cache[key])
        result = result + op.scale(coeff)
    return result
