"""Formal words in first-order symbols, before any relation is imposed."""

from symbols.scalar import HPoly, ONE
from enveloping.generator import Generator
from utils.errors import ValidationError


class DiffWord:
    """Linear combination (HPoly coefficients) of generator sequences; () is the unit"""

    __slots__ = ("space", "_terms")

    def __init__(self, space, terms=None):
        self.space = space
        cleaned = {}
        for sequence, coeff in (terms or {}).items():
            sequence = tuple(sequence)
            for generator in sequence:
                if not isinstance(generator, Generator):
                    raise ValidationError(f"Words are built from generators, got {type(generator).__name__}")
                if generator.space != space:
                    raise ValidationError("Generator lives in another mode space")
            coeff = HPoly.coerce(coeff)
            if sequence in cleaned:
                coeff = cleaned[sequence] + coeff
            if coeff:
                cleaned[sequence] = coeff
            else:
                cleaned.pop(sequence, None)
        self._terms = cleaned

    @classmethod
    def unit(cls, space, coeff=ONE):
        return cls(space, {(): coeff})

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def of(cls, *generators):
        """The single word g1 * g2 * ... with coefficient 1"""
        if not generators:
            raise ValidationError("DiffWord.of needs at least one generator")
        return cls(generators[0].space, {tuple(generators): ONE})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def _check(self, other):
        if not isinstance(other, DiffWord):
            raise ValidationError(f"Expected a DiffWord, got {type(other).__name__}")
        if other.space != self.space:
            raise ValidationError(f"Mismatched mode spaces: {self.space.modes} vs {other.space.modes}")

    def __add__(self, other):
        self._check(other)
        merged = dict(self._terms)
        for sequence, coeff in other._terms.items():
            merged[sequence] = merged[sequence] + coeff if sequence in merged else coeff
        return DiffWord(self.space, merged)

    def __neg__(self):
        return DiffWord(self.space, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        value = HPoly.coerce(value)
        return DiffWord(self.space, {s: c * value for s, c in self._terms.items()})

    def __mul__(self, other):
        return word_product(self, other)

    def __pow__(self, exponent):
        result = DiffWord.unit(self.space)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, DiffWord) and self.space == other.space and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, frozenset(self._terms.items())))

    def __repr__(self):
        from expr.printer import print_word
        return f"DiffWord({print_word(self)!r})"


def word_product(a, b):
    """Concatenation extended bilinearly"""
    a._check(b)
    product = {}
    for left, ca in a.terms.items():
        for right, cb in b.terms.items():
            sequence = left + right
            c = ca * cb
            product[sequence] = product[sequence] + c if sequence in product else c
    return DiffWord(a.space, product)


def involution(word, ctx):
    """
    Antilinear anti-automorphism: f -> conj(f), v -> sign * conj(v) on
    generators, coefficients conjugated and every sequence reversed.
    """
    if word.space != ctx.space:
        raise ValidationError("Word and context live in different mode spaces")
    sign = ctx.involution_sign
    image = {}
    for sequence, coeff in word.terms.items():
        flipped = tuple(
            Generator(g.f.conjugate(), g.v.conjugate() if sign > 0 else -g.v.conjugate())
            for g in reversed(sequence)
        )
        c = coeff.conjugate()
        image[flipped] = image[flipped] + c if flipped in image else c
    return DiffWord(word.space, image)
