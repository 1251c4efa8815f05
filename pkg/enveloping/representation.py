"""
The representation rho of the quotient algebra by differential operators:

    rho(f + sum_i v_i pi_i) = f + lambda (sum_i v_i d/dphi_i + 1/2 sum_i dv_i/dphi_i)

The divergence term makes rho respect v*f = fv + lambda/2 {v, f}, and
[rho(d1), rho(d2)] = lambda rho({d1, d2}).
"""

from fractions import Fraction

from star.operators import DiffOperator
from symbols.symbol import MultiIndex, Symbol
from utils.errors import ValidationError


def represent_generator(generator, ctx):
    space = ctx.space
    op = DiffOperator.multiplication(generator.f) if generator.f else DiffOperator(space)
    divergence = Symbol.zero(space)
    for mode, component in generator.components().items():
        op = op + DiffOperator.derivative(space, MultiIndex.unit(mode), component.scale(ctx.lam))
        divergence = divergence + component.partial("phi", mode)
    if divergence:
        op = op + DiffOperator.multiplication(divergence.scale(ctx.lam * Fraction(1, 2)))
    return op


def represent(word, ctx):
    """Differential operator of a word; rho(a * b) = rho(a) o rho(b)"""
    if word.space != ctx.space:
        raise ValidationError("Word and context live in different mode spaces")
    cache = {}
    result = DiffOperator(ctx.space)
    for sequence, coeff in word.terms.items():
        op = DiffOperator.identity(ctx.space)
        for generator in sequence:
            if generator not in cache:
                cache[generator] = represent_generator(generator, ctx)
            op = op.compose(cache[generator])
        result = result + op.scale(coeff)
    return result
