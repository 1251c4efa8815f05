"""Seeded random builders shared by the property suites."""

from fractions import Fraction

from enveloping.generator import Generator
from enveloping.words import DiffWord
from symbols.scalar import HPoly, Scalar
from symbols.symbol import MultiIndex, Symbol


def random_scalar(rng, real=False):
    re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    im = 0 if real else Fraction(rng.randint(-2, 2), rng.randint(1, 2))
    if re == 0 and im == 0:
        re = Fraction(1)
    return Scalar(re, im)


def random_hpoly(rng, max_h=1, real=False):
    power = rng.randint(0, max_h)
    return HPoly.monomial(random_scalar(rng, real), power)


def random_index(rng, space, max_degree):
    degree = rng.randint(0, max_degree)
    return MultiIndex((rng.randint(1, space.modes), 1) for _ in range(degree))


def random_symbol(rng, space, max_degree=3, terms=3, max_h=1, real=False):
    result = Symbol.zero(space)
    for _ in range(terms):
        phi = random_index(rng, space, max_degree)
        pi = random_index(rng, space, max(0, max_degree - phi.degree))
        result = result + Symbol.monomial(space, phi, pi, random_hpoly(rng, max_h, real))
    return result


def random_pi_free(rng, space, max_degree=2, terms=2, real=False):
    result = Symbol.zero(space)
    for _ in range(terms):
        phi = random_index(rng, space, max_degree)
        result = result + Symbol.monomial(space, phi, MultiIndex(), random_scalar(rng, real))
    return result


def random_generator(rng, space, max_degree=2):
    f = random_pi_free(rng, space, max_degree, terms=rng.randint(0, 2))
    v = Symbol.zero(space)
    for _ in range(rng.randint(0, 2)):
        coeff = random_pi_free(rng, space, max_degree, terms=1)
        v = v + coeff * Symbol.pi(space, rng.randint(1, space.modes))
    if f.is_zero() and v.is_zero():
        f = Symbol.phi(space, 1)
    return Generator(f, v)


def random_word(rng, space, max_length=3, terms=2, max_degree=2):
    result = DiffWord.zero(space)
    for _ in range(terms):
        length = rng.randint(0, max_length)
        generators = tuple(random_generator(rng, space, max_degree) for _ in range(length))
        result = result + DiffWord(space, {generators: random_hpoly(rng, 1)})
    return result
