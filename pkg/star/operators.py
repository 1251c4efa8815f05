"""
Differential operators with polynomial coefficients.

A DiffOperator is sum_alpha c_alpha(phi) d^alpha/dphi^alpha acting on
polynomial wavefunctions (pi-free Symbols). It is the concrete model the
algebraic constructions are checked against.
"""

from fractions import Fraction

from symbols.symbol import EMPTY, MultiIndex, Symbol
from utils.errors import ValidationError


class DiffOperator:
    """Finite sum of coefficient * derivative terms; coefficients stand to the left"""

    __slots__ = ("space", "_terms")

    def __init__(self, space, terms=None):
        self.space = space
        cleaned = {}
        for alpha, coeff in (terms or {}).items():
            if coeff.space != space:
                raise ValidationError("Operator coefficient lives in another mode space")
            if not coeff.is_pi_free():
                raise ValidationError("Operator coefficients must not depend on pi")
            if coeff:
                cleaned[alpha] = coeff
        self._terms = cleaned

    @classmethod
    def identity(cls, space):
        return cls(space, {EMPTY: Symbol.one(space)})

    @classmethod
    def multiplication(cls, coeff):
        """Multiplication by a pi-free symbol"""
        return cls(coeff.space, {EMPTY: coeff})

    @classmethod
    def derivative(cls, space, alpha, coeff=None):
        coeff = Symbol.one(space) if coeff is None else coeff
        return cls(space, {alpha: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def order(self):
        return max((alpha.degree for alpha in self._terms), default=-1)

    def _accumulate(self, target, alpha, coeff):
        if alpha in target:
            coeff = target[alpha] + coeff
        if coeff:
            target[alpha] = coeff
        else:
            target.pop(alpha, None)

    def __add__(self, other):
        self._check(other)
        merged = dict(self._terms)
        for alpha, coeff in other._terms.items():
            self._accumulate(merged, alpha, coeff)
        return DiffOperator(self.space, merged)

    def __neg__(self):
        return DiffOperator(self.space, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        return DiffOperator(self.space, {a: c.scale(value) for a, c in self._terms.items()})

    def _check(self, other):
        if not isinstance(other, DiffOperator):
            raise ValidationError(f"Expected a DiffOperator, got {type(other).__name__}")
        if other.space != self.space:
            raise ValidationError("Operators live in different mode spaces")

    def apply(self, psi):
        """Exact action on a polynomial wavefunction"""
        if psi.space != self.space:
            raise ValidationError("Wavefunction lives in another mode space")
        if not psi.is_pi_free():
            raise ValidationError("Wavefunctions must not depend on pi")
        result = Symbol.zero(self.space)
        for alpha, coeff in self._terms.items():
            derived = psi.derivative(alpha, EMPTY) if alpha else psi
            if derived:
                result = result + coeff * derived
        return result

    def compose(self, other):
        """self o other, moving derivatives right by the Leibniz rule"""
        self._check(other)
        result = {}
        for alpha, c in self._terms.items():
            for beta, d in other._terms.items():
                for gamma in alpha.divisors():
                    derived = d.derivative(gamma, EMPTY) if gamma else d
                    if not derived:
                        continue
                    binom = Fraction(alpha.falling(gamma), gamma.factorial())
                    self._accumulate(result, (alpha - gamma) + beta, (c * derived).scale(binom))
        return DiffOperator(self.space, result)

    __matmul__ = compose

    def commutator(self, other):
        return self.compose(other) - other.compose(self)

    def formal_adjoint(self):
        """
        Adjoint for the pairing <f, g> = integral conj(f) g with vanishing boundary terms:
        (c d^alpha)^dagger = (-1)^|alpha| d^alpha o conj(c).
        """
        result = {}
        for alpha, c in self._terms.items():
            sign = -1 if alpha.degree % 2 else 1
            conj = c.conjugate()
            for gamma in alpha.divisors():
                derived = conj.derivative(gamma, EMPTY) if gamma else conj
                if not derived:
                    continue
                binom = Fraction(alpha.falling(gamma), gamma.factorial())
                self._accumulate(result, alpha - gamma, derived.scale(binom * sign))
        return DiffOperator(self.space, result)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.space == other.space and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, frozenset(self._terms.items())))

    def __repr__(self):
        from expr.printer import print_symbol
        parts = [f"{print_symbol(c)} d{dict(a.items)}" for a, c in self._terms.items()]
        return f"DiffOperator({' + '.join(parts) or '0'})"


def apply(op, psi):
    """Apply a differential operator to a polynomial wavefunction"""
    return op.apply(psi)


def monomial_wavefunctions(space, max_degree):
    """Every pi-free monomial of total degree <= max_degree"""
    found = [MultiIndex()]
    frontier = [MultiIndex()]
    for _ in range(max_degree):
        grown = set()
        for index in frontier:
            for mode in range(1, space.modes + 1):
                grown.add(index + MultiIndex.unit(mode))
        frontier = sorted(grown, key=lambda m: m.items)
        found.extend(frontier)
    return [Symbol.monomial(space, index, EMPTY) for index in found]
