"""
Enveloping algebra tests.

Validates:
- Generator validation and the first-order Lie bracket
- Normal forms: worked examples and confluence across rewrite strategies
- The operator representation: faithfulness, multiplicativity and the involution
"""

import random
from fractions import Fraction

import pytest

from enveloping.generator import generator_bracket, make_generator, split_first_order
from enveloping.representation import represent, represent_generator
from enveloping.rewriting import LEFTMOST, RANDOM, normal_form
from enveloping.words import DiffWord, involution, word_product
from star.context import DiffContext
from star.operators import DiffOperator, apply, monomial_wavefunctions
from star.products import normal_involution, normal_star
from star.quantize import quantize_normal
from symbols.calculus import poisson_bracket
from symbols.scalar import H, I, Scalar
from symbols.symbol import ModeSpace, MultiIndex, Symbol
from tests.strategies import random_generator, random_word
from utils.errors import ValidationError

LABELS = ["-ih", "ih", "h", "-h"]


def phi(space, mode=1, exponent=1):
    return Symbol.phi(space, mode, exponent)


def pi(space, mode=1, exponent=1):
    return Symbol.pi(space, mode, exponent)


def letter(symbol):
    return DiffWord.of(split_first_order(symbol))


class TestGenerators:
    def test_valid_generator(self):
        space = ModeSpace(2)
        g = make_generator(phi(space, 1, 2), phi(space, 2) * pi(space, 1))
        assert g.components() == {1: phi(space, 2)}
        assert g.symbol() == phi(space, 1, 2) + phi(space, 2) * pi(space, 1)

    def test_f_must_be_pi_free(self):
        space = ModeSpace(1)
        with pytest.raises(ValidationError, match="pi"):
            make_generator(pi(space), Symbol.zero(space))

    def test_v_must_be_linear_in_pi(self):
        space = ModeSpace(1)
        with pytest.raises(ValidationError, match="pi-degree 2"):
            make_generator(Symbol.zero(space), pi(space, exponent=2))
        with pytest.raises(ValidationError):
            make_generator(Symbol.zero(space), phi(space))

    def test_split_rejects_second_order(self):
        with pytest.raises(ValidationError):
            split_first_order(pi(ModeSpace(1), exponent=2))

    def test_bracket_of_vector_fields(self):
        space = ModeSpace(1)
        left = make_generator(Symbol.zero(space), phi(space) * pi(space))
        right = make_generator(phi(space, exponent=2), Symbol.zero(space))
        assert generator_bracket(left, right).symbol() == phi(space, exponent=2).scale(2)

    @pytest.mark.parametrize("seed", range(20))
    def test_brackets_stay_first_order(self, seed):
        rng = random.Random(seed)
        space = ModeSpace(rng.randint(1, 3))
        a, b = random_generator(rng, space), random_generator(rng, space)
        bracket = generator_bracket(a, b)
        assert bracket.symbol() == poisson_bracket(a.symbol(), b.symbol())
        assert bracket.symbol().pi_degrees() <= {0, 1}


class TestNormalForm:
    def test_vector_field_picks_up_half_divergence(self):
        ctx = DiffContext.from_label(1, "h")
        space = ctx.space
        nf = normal_form(letter(phi(space) * pi(space)), ctx).nf
        assert nf == phi(space) * pi(space) + Symbol.constant(space, H * Fraction(1, 2))

    def test_momentum_then_field(self):
        ctx = DiffContext.from_label(1, "h")
        space = ctx.space
        word = letter(pi(space)) * letter(phi(space))
        assert normal_form(word, ctx).nf == phi(space) * pi(space) + Symbol.constant(space, H)

    def test_canonical_commutator(self):
        ctx = DiffContext.default(1)
        space = ctx.space
        p, q = letter(pi(space)), letter(phi(space))
        nf = normal_form(p * q - q * p, ctx).nf
        assert nf == Symbol.constant(space, H * -I)

    def test_momenta_commute(self):
        ctx = DiffContext.default(2)
        space = ctx.space
        p1, p2 = letter(pi(space, 1)), letter(pi(space, 2))
        assert normal_form(p1 * p2, ctx).nf == normal_form(p2 * p1, ctx).nf == pi(space, 1) * pi(space, 2)

    def test_unit_and_constants(self):
        ctx = DiffContext.default(1)
        space = ctx.space
        assert normal_form(DiffWord.unit(space, Scalar(3)), ctx).nf == 3
        assert normal_form(DiffWord.zero(space), ctx).nf.is_zero()

    def test_rejects_foreign_space(self):
        with pytest.raises(ValidationError):
            normal_form(DiffWord.unit(ModeSpace(2)), DiffContext.default(1))

    def test_rejects_unknown_strategy(self):
        ctx = DiffContext.default(1)
        with pytest.raises(ValidationError):
            normal_form(DiffWord.unit(ctx.space), ctx, strategy="outermost")

    @pytest.mark.parametrize("seed", range(50))
    def test_confluence(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 3), rng.choice(LABELS))
        word = random_word(rng, ctx.space, max_length=5, terms=2, max_degree=3)
        expected = normal_form(word, ctx, LEFTMOST).nf
        for run in range(3):
            assert normal_form(word, ctx, RANDOM, seed=seed * 10 + run).nf == expected

    @pytest.mark.parametrize("seed", range(30))
    def test_normal_forms_multiply_by_the_normal_star(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        a, b = (random_word(rng, ctx.space, max_length=2, terms=2) for _ in range(2))
        left = normal_form(word_product(a, b), ctx).nf
        right = normal_star(normal_form(a, ctx).nf, normal_form(b, ctx).nf, ctx)
        assert left == right

    @pytest.mark.parametrize("seed", range(20))
    def test_commutator_is_lambda_times_bracket(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        a, b = random_generator(rng, ctx.space), random_generator(rng, ctx.space)
        wa, wb = DiffWord.of(a), DiffWord.of(b)
        commutator = normal_form(wa * wb - wb * wa, ctx).nf
        bracket = normal_form(DiffWord.of(generator_bracket(a, b)).scale(ctx.lam), ctx).nf
        assert commutator == bracket

    @pytest.mark.parametrize("seed", range(20))
    def test_associated_graded_is_commutative(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        a, b = random_generator(rng, ctx.space), random_generator(rng, ctx.space)
        commutator = normal_form(DiffWord.of(a, b) - DiffWord.of(b, a), ctx).nf
        assert commutator.is_zero() or commutator.min_h_degree() >= 1
        product = normal_form(DiffWord.of(a, b), ctx).nf
        assert product.h_coefficient(0) == (a.symbol() * b.symbol()).h_coefficient(0)


class TestRepresentation:
    def test_vector_field(self):
        ctx = DiffContext.from_label(1, "h")
        space = ctx.space
        g = make_generator(Symbol.zero(space), phi(space) * pi(space))
        expected = (DiffOperator.derivative(space, MultiIndex.unit(1), phi(space).scale(H))
                    + DiffOperator.multiplication(Symbol.constant(space, H * Fraction(1, 2))))
        assert represent_generator(g, ctx) == expected

    def test_action_on_wavefunction(self):
        ctx = DiffContext.default(1)
        space = ctx.space
        op = represent(letter(pi(space)), ctx)
        assert apply(op, phi(space, exponent=3)) == phi(space, exponent=2).scale(H * Scalar(0, -3))

    def test_rejects_foreign_space(self):
        with pytest.raises(ValidationError):
            represent(DiffWord.unit(ModeSpace(2)), DiffContext.default(1))

    @pytest.mark.parametrize("seed", range(200))
    def test_representation_factors_through_normal_form(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        word = random_word(rng, ctx.space, max_length=3, terms=2)
        op = represent(word, ctx)
        quantized = quantize_normal(normal_form(word, ctx).nf, ctx)
        assert op == quantized
        for psi in monomial_wavefunctions(ctx.space, 6):
            assert apply(op, psi) == apply(quantized, psi)

    @pytest.mark.parametrize("seed", range(20))
    def test_multiplicative(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        a, b = (random_word(rng, ctx.space, max_length=2, terms=2) for _ in range(2))
        assert represent(a * b, ctx) == represent(a, ctx) @ represent(b, ctx)


class TestInvolution:
    @pytest.mark.parametrize("seed", range(30))
    def test_involution_is_the_adjoint(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        word = random_word(rng, ctx.space, max_length=3, terms=2)
        assert represent(involution(word, ctx), ctx) == represent(word, ctx).formal_adjoint()

    @pytest.mark.parametrize("seed", range(20))
    def test_involution_laws(self, seed):
        rng = random.Random(seed)
        ctx = DiffContext.from_label(rng.randint(1, 2), rng.choice(LABELS))
        a, b = (random_word(rng, ctx.space, max_length=2, terms=2) for _ in range(2))
        assert involution(involution(a, ctx), ctx) == a
        assert involution(a * b, ctx) == involution(b, ctx) * involution(a, ctx)
        nf = normal_form(involution(a, ctx), ctx).nf
        assert nf == normal_involution(normal_form(a, ctx).nf, ctx)

    def test_momentum_sign_follows_lambda(self):
        space = ModeSpace(1)
        word = letter(pi(space))
        assert involution(word, DiffContext.default(1)) == word
        assert involution(word, DiffContext.from_label(1, "h")) == letter(-pi(space))
