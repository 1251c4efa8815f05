"""
Exact coefficient arithmetic.

Scalar is an exact complex rational. HPoly is a polynomial in the formal
deformation parameter h with Scalar coefficients, stored as a trimmed tuple
indexed by the power of h. Nothing in this module ever rounds.
"""

from fractions import Fraction
from numbers import Rational

from utils.errors import ValidationError


class Scalar:
    """Exact complex rational re + i*im"""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    @staticmethod
    def coerce(value):
        """Accept Scalar, int or Fraction"""
        if isinstance(value, Scalar):
            return value
        return Scalar(value)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def is_real(self):
        return self.im == 0

    def is_imaginary(self):
        return self.re == 0

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, Rational):
                return NotImplemented
            other = Scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, Rational):
                return NotImplemented
            return Scalar(self.re * other, self.im * other)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return self * Scalar(other.re / norm, -other.im / norm)

    def __pow__(self, exponent):
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"Scalar({self.re})"
        return f"Scalar({self.re}, {self.im})"

    def to_json(self):
        """[re_num, re_den, im_num, im_den]"""
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @staticmethod
    def from_json(entry):
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise ValidationError(f"Scalar JSON must be [re_num, re_den, im_num, im_den], got {entry!r}")
        re_num, re_den, im_num, im_den = entry
        if re_den == 0 or im_den == 0:
            raise ValidationError(f"Zero denominator in scalar {entry!r}")
        return Scalar(Fraction(re_num, re_den), Fraction(im_num, im_den))


def _to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValidationError(f"Exact coefficients must be rational, got {value!r}")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


class HPoly:
    """Polynomial in the formal parameter h; coeffs[k] multiplies h**k"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        trimmed = [Scalar.coerce(c) for c in coeffs]
        while trimmed and trimmed[-1].is_zero():
            trimmed.pop()
        self.coeffs = tuple(trimmed)

    @staticmethod
    def coerce(value):
        if isinstance(value, HPoly):
            return value
        return HPoly((Scalar.coerce(value),))

    @staticmethod
    def monomial(coeff, power):
        """coeff * h**power"""
        return HPoly([ZERO] * power + [Scalar.coerce(coeff)])

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        """Highest power of h; -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def min_degree(self):
        """Lowest power of h with a nonzero coefficient, or None for zero"""
        for power, coeff in enumerate(self.coeffs):
            if coeff:
                return power
        return None

    def coefficient(self, power):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return ZERO

    def __add__(self, other):
        other = _as_hpoly(other)
        if other is None:
            return NotImplemented
        longer, shorter = (self.coeffs, other.coeffs) if len(self.coeffs) >= len(other.coeffs) else (other.coeffs, self.coeffs)
        merged = list(longer)
        for power, coeff in enumerate(shorter):
            merged[power] = merged[power] + coeff
        return HPoly(merged)

    __radd__ = __add__

    def __neg__(self):
        return HPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_hpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, Rational)) and not isinstance(other, HPoly):
            other = Scalar.coerce(other)
            return HPoly([c * other for c in self.coeffs])
        if not isinstance(other, HPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return HPoly()
        product = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return HPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = HPoly((ONE,))
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self):
        """Conjugate every coefficient; h is a real parameter"""
        return HPoly([c.conjugate() for c in self.coeffs])

    def shift(self, power):
        """Multiply by h**power"""
        if not self.coeffs:
            return self
        return HPoly([ZERO] * power + list(self.coeffs))

    def divide_by_monomial(self, coeff, power):
        """Exact division by coeff * h**power; fails if the quotient is not a polynomial"""
        coeff = Scalar.coerce(coeff)
        if coeff.is_zero():
            raise ZeroDivisionError("Division of HPoly by zero")
        if any(self.coeffs[:power]):
            raise ValidationError(f"{self!r} is not divisible by h^{power}")
        return HPoly([c / coeff for c in self.coeffs[power:]])

    def evaluate(self, h):
        """Numeric value at a float/complex h"""
        value = 0j
        for coeff in reversed(self.coeffs):
            value = value * h + complex(coeff)
        return value

    def __eq__(self, other):
        other = _as_hpoly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"HPoly({list(self.coeffs)!r})"

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @staticmethod
    def from_json(entries):
        if not isinstance(entries, list):
            raise ValidationError(f"HPoly JSON must be a list of scalars, got {entries!r}")
        return HPoly([Scalar.from_json(entry) for entry in entries])


def _as_hpoly(value):
    if isinstance(value, HPoly):
        return value
    if isinstance(value, Scalar) or (isinstance(value, Rational) and not isinstance(value, bool)):
        return HPoly((Scalar.coerce(value),))
    return None


H = HPoly((ZERO, ONE))
