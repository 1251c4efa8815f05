"""
Wick (creation/annihilation) variables.

Per mode with frequency w > 0 the substitution is

    phi = (a + abar) / 2,        pi = i w (abar - a) / 2
    a   = phi + i pi / w,        abar = phi - i pi / w

which keeps every coefficient an exact complex rational for rational w.
The transported bracket constant is {a_i, abar_i} = 2i / w_i. A Wick symbol
reuses the Symbol container: the phi slot holds powers of a, the pi slot
powers of abar.
"""

from dataclasses import dataclass
from fractions import Fraction

from symbols.scalar import I, Scalar
from symbols.symbol import Symbol
from utils.errors import ValidationError


def _frequencies(space, omega):
    values = [Fraction(w) for w in omega]
    if len(values) != space.modes:
        raise ValidationError(f"Need {space.modes} frequencies, got {len(values)}")
    for mode, w in enumerate(values, start=1):
        if w <= 0:
            raise ValidationError(f"Frequency of mode {mode} must be positive, got {w}")
    return tuple(values)


@dataclass(frozen=True)
class WickSymbol:
    """Polynomial in a_i (phi slot) and abar_i (pi slot) with its frequencies"""

    symbol: Symbol
    omega: tuple

    def bracket_constant(self, mode):
        """{a_mode, abar_mode}"""
        return I * Fraction(2) / Scalar(self.omega[mode - 1])

    def bracket(self, other):
        """Poisson bracket transported to Wick variables"""
        if self.omega != other.omega:
            raise ValidationError("Wick symbols carry different frequencies")
        self.symbol.require_same_space(other.symbol)
        result = Symbol.zero(self.symbol.space)
        for mode in range(1, self.symbol.space.modes + 1):
            da = self.symbol.partial("phi", mode)
            dabar = self.symbol.partial("pi", mode)
            term = da * other.symbol.partial("pi", mode) - dabar * other.symbol.partial("phi", mode)
            result = result + term.scale(self.bracket_constant(mode))
        return result


def wick_transform(symbol, omega, ctx):
    """Rewrite a symbol in the variables a_i, abar_i"""
    ctx.require_space(symbol)
    space = symbol.space
    omega = _frequencies(space, omega)
    half = Fraction(1, 2)
    phi_images = []
    pi_images = []
    for mode, w in enumerate(omega, start=1):
        a = Symbol.phi(space, mode)
        abar = Symbol.pi(space, mode)
        phi_images.append((a + abar).scale(half))
        pi_images.append((abar - a).scale(I * (w * half)))
    return WickSymbol(symbol.substitute(phi_images, pi_images), omega)


def inverse_wick_transform(wick, ctx):
    """Back to phi, pi; wick_transform followed by this is the identity"""
    ctx.require_space(wick.symbol)
    space = wick.symbol.space
    a_images = []
    abar_images = []
    for mode, w in enumerate(wick.omega, start=1):
        phi = Symbol.phi(space, mode)
        shifted = Symbol.pi(space, mode).scale(I / Scalar(w))
        a_images.append(phi + shifted)
        abar_images.append(phi - shifted)
    return wick.symbol.substitute(a_images, abar_images)
