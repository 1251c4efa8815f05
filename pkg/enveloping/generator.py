"""
First-order symbols d = v(phi, pi) + f(phi) with v linear in pi.

They form a Lie algebra under the Poisson bracket: the bracket of two
first-order symbols is again first order.
"""

from dataclasses import dataclass

from symbols.calculus import poisson_bracket
from symbols.symbol import Symbol
from utils.errors import ValidationError


def _describe(symbol, phi, pi):
    from expr.printer import print_symbol
    return print_symbol(Symbol.monomial(symbol.space, phi, pi, symbol.terms[(phi, pi)]))


@dataclass(frozen=True)
class Generator:
    """A validated first-order symbol"""

    f: Symbol
    v: Symbol

    @property
    def space(self):
        return self.f.space

    def symbol(self):
        return self.f + self.v

    def components(self):
        """mode -> coefficient v_i(phi) of pi_i in v"""
        found = {}
        for mode in range(1, self.space.modes + 1):
            part = self.v.partial("pi", mode)
            if part:
                found[mode] = part
        return found

    def is_function(self):
        return self.v.is_zero()


def make_generator(f, v):
    """Validate f (pi-free) and v (homogeneous of pi-degree 1)"""
    f.require_same_space(v)
    for (phi, pi) in f.terms:
        if pi:
            raise ValidationError(f"f must not depend on pi; offending term {_describe(f, phi, pi)}")
    for (phi, pi) in v.terms:
        if pi.degree != 1:
            raise ValidationError(f"v must be linear in pi; offending term {_describe(v, phi, pi)} has pi-degree {pi.degree}")
    return Generator(f, v)


def split_first_order(symbol):
    """Read a symbol of pi-degree <= 1 as a generator"""
    space = symbol.space
    f_terms, v_terms = {}, {}
    for (phi, pi), coeff in symbol.terms.items():
        if pi.degree == 0:
            f_terms[(phi, pi)] = coeff
        elif pi.degree == 1:
            v_terms[(phi, pi)] = coeff
        else:
            raise ValidationError(f"Not a first-order symbol; offending term {_describe(symbol, phi, pi)}")
    return Generator(Symbol(space, f_terms), Symbol(space, v_terms))


def generator_bracket(left, right):
    """Poisson bracket of two first-order symbols, again first order"""
    return split_first_order(poisson_bracket(left.symbol(), right.symbol()))
