import random
from fractions import Fraction

import pytest

from star.context import DiffContext
from star.wick import WickSymbol, inverse_wick_transform, wick_transform
from symbols.calculus import poisson_bracket
from symbols.scalar import I
from symbols.symbol import Symbol
from tests.strategies import random_symbol
from utils.errors import ValidationError


def test_harmonic_oscillator_unit_frequency():
    ctx = DiffContext.default(1)
    space = ctx.space
    hamiltonian = Symbol.phi(space, 1, 2) + Symbol.pi(space, 1, 2)
    wick = wick_transform(hamiltonian, [1], ctx)
    assert wick.symbol == Symbol.phi(space, 1) * Symbol.pi(space, 1)


def test_harmonic_oscillator_general_frequency():
    ctx = DiffContext.default(1)
    space = ctx.space
    omega = Fraction(2)
    hamiltonian = (Symbol.pi(space, 1, 2) + Symbol.phi(space, 1, 2).scale(omega * omega)).scale(Fraction(1, 2))
    wick = wick_transform(hamiltonian, [omega], ctx)
    assert wick.symbol == (Symbol.phi(space, 1) * Symbol.pi(space, 1)).scale(omega * omega / 2)


def test_bracket_constant():
    ctx = DiffContext.default(2)
    space = ctx.space
    wick = WickSymbol(Symbol.phi(space, 2), (Fraction(1), Fraction(4)))
    assert wick.bracket_constant(2) == I * Fraction(1, 2)
    other = WickSymbol(Symbol.pi(space, 2), wick.omega)
    assert wick.bracket(other) == Symbol.constant(space, I * Fraction(1, 2))


@pytest.mark.parametrize("seed", range(20))
def test_round_trip_and_bracket_transport(seed):
    rng = random.Random(seed)
    ctx = DiffContext.default(rng.randint(1, 2))
    omega = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(ctx.space.modes)]
    a, b = (random_symbol(rng, ctx.space, max_degree=3, terms=3) for _ in range(2))
    wa, wb = wick_transform(a, omega, ctx), wick_transform(b, omega, ctx)
    assert inverse_wick_transform(wa, ctx) == a
    assert wa.bracket(wb) == wick_transform(poisson_bracket(a, b), omega, ctx).symbol


@pytest.mark.parametrize("omega", [[0], [-1], [1, 1]])
def test_invalid_frequencies(omega):
    ctx = DiffContext.default(1)
    with pytest.raises(ValidationError):
        wick_transform(Symbol.phi(ctx.space, 1), omega, ctx)


def test_brackets_need_matching_frequencies():
    ctx = DiffContext.default(1)
    space = ctx.space
    with pytest.raises(ValidationError):
        WickSymbol(Symbol.phi(space, 1), (Fraction(1),)).bracket(WickSymbol(Symbol.pi(space, 1), (Fraction(2),)))
