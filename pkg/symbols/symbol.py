"""
Truncated classical symbols.

A Symbol is a polynomial in the phase-space variables phi_1..phi_N and
pi_1..pi_N whose coefficients are HPoly values. The field phi and momentum pi
of a continuum theory are replaced by N modes; every truncated symbol is
regular in the sense that all of its kernels are ordinary finite tensors.
"""

from math import factorial
from types import MappingProxyType

from symbols.scalar import HPoly, Scalar, ONE, H
from utils.errors import ValidationError


class ModeSpace:
    """Number of truncated field modes"""

    __slots__ = ("modes",)

    def __init__(self, modes):
        if isinstance(modes, bool) or not isinstance(modes, int) or modes < 1:
            raise ValidationError(f"Mode count must be a positive integer, got {modes!r}")
        self.modes = modes

    def check_mode(self, mode):
        if isinstance(mode, bool) or not isinstance(mode, int) or not 1 <= mode <= self.modes:
            raise ValidationError(f"Mode index {mode!r} outside 1..{self.modes}")
        return mode

    def __eq__(self, other):
        return isinstance(other, ModeSpace) and other.modes == self.modes

    def __hash__(self):
        return hash(("ModeSpace", self.modes))

    def __repr__(self):
        return f"ModeSpace({self.modes})"


class MultiIndex:
    """Sparse exponent map mode -> positive exponent, stored as sorted pairs"""

    __slots__ = ("items", "degree", "_hash")

    def __init__(self, exponents=()):
        if isinstance(exponents, dict):
            pairs = exponents.items()
        else:
            pairs = exponents
        merged = {}
        for mode, exponent in pairs:
            if exponent < 0:
                raise ValidationError(f"Negative exponent {exponent} for mode {mode}")
            if exponent:
                merged[mode] = merged.get(mode, 0) + exponent
        self.items = tuple(sorted(merged.items()))
        self.degree = sum(merged.values())
        self._hash = hash(self.items)

    @staticmethod
    def unit(mode, exponent=1):
        return MultiIndex(((mode, exponent),))

    @staticmethod
    def from_dense(exponents):
        return MultiIndex((mode, e) for mode, e in enumerate(exponents, start=1))

    def exponent(self, mode):
        for m, e in self.items:
            if m == mode:
                return e
        return 0

    def modes(self):
        return [m for m, _ in self.items]

    def dense(self, n):
        exponents = [0] * n
        for mode, e in self.items:
            exponents[mode - 1] = e
        return tuple(exponents)

    def __add__(self, other):
        return MultiIndex(self.items + other.items)

    def __sub__(self, other):
        remaining = dict(self.items)
        for mode, e in other.items:
            left = remaining.get(mode, 0) - e
            if left < 0:
                raise ValidationError(f"Cannot subtract {other!r} from {self!r}")
            remaining[mode] = left
        return MultiIndex(remaining)

    def meet(self, other):
        """Componentwise minimum"""
        theirs = dict(other.items)
        return MultiIndex((m, min(e, theirs.get(m, 0))) for m, e in self.items)

    def divisors(self):
        """Every multi-index beta with beta <= self componentwise"""
        found = [()]
        for mode, e in self.items:
            found = [prefix + ((mode, k),) for prefix in found for k in range(e + 1)]
        return [MultiIndex(pairs) for pairs in found]

    def factorial(self):
        result = 1
        for _, e in self.items:
            result *= factorial(e)
        return result

    def falling(self, other):
        """Product over modes of the falling factorial self_i! / (self_i - other_i)!"""
        result = 1
        for mode, e in other.items:
            top = self.exponent(mode)
            for k in range(e):
                result *= top - k
        return result

    def max_mode(self):
        return self.items[-1][0] if self.items else 0

    def __bool__(self):
        return bool(self.items)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MultiIndex({dict(self.items)!r})"


EMPTY = MultiIndex()


def canonical_key(phi, pi, n):
    """Descending total degree, then descending dense phi and pi exponent tuples"""
    return (-(phi.degree + pi.degree),
            tuple(-e for e in phi.dense(n)),
            tuple(-e for e in pi.dense(n)))


class Symbol:
    """Polynomial in phi_i, pi_i with HPoly coefficients; immutable"""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space, terms=None):
        if isinstance(space, int):
            space = ModeSpace(space)
        self.space = space
        cleaned = {}
        for (phi, pi), coeff in (terms or {}).items():
            coeff = HPoly.coerce(coeff)
            if coeff.is_zero():
                continue
            if phi.max_mode() > space.modes or pi.max_mode() > space.modes:
                raise ValidationError(f"Term {phi!r}{pi!r} uses a mode outside 1..{space.modes}")
            cleaned[(phi, pi)] = coeff
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _trusted(cls, space, terms):
        """Build from an already-normalized term map without re-validation"""
        obj = cls.__new__(cls)
        obj.space = space
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def constant(cls, space, value):
        return cls(space, {(EMPTY, EMPTY): HPoly.coerce(value)})

    @classmethod
    def one(cls, space):
        return cls.constant(space, ONE)

    @classmethod
    def h(cls, space):
        return cls.constant(space, H)

    @classmethod
    def phi(cls, space, mode, exponent=1):
        space = ModeSpace(space) if isinstance(space, int) else space
        space.check_mode(mode)
        return cls(space, {(MultiIndex.unit(mode, exponent), EMPTY): ONE})

    @classmethod
    def pi(cls, space, mode, exponent=1):
        space = ModeSpace(space) if isinstance(space, int) else space
        space.check_mode(mode)
        return cls(space, {(EMPTY, MultiIndex.unit(mode, exponent)): ONE})

    @classmethod
    def monomial(cls, space, phi, pi, coeff=ONE):
        return cls(space, {(phi, pi): coeff})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def canonical_terms(self):
        """Terms as (phi, pi, coeff) in canonical order"""
        n = self.space.modes
        return sorted(((phi, pi, c) for (phi, pi), c in self._terms.items()),
                      key=lambda t: canonical_key(t[0], t[1], n))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def require_same_space(self, other):
        if not isinstance(other, Symbol):
            raise ValidationError(f"Expected a Symbol, got {type(other).__name__}")
        if other.space != self.space:
            raise ValidationError(f"Mismatched mode spaces: {self.space.modes} vs {other.space.modes}")

    def _lift(self, other):
        if isinstance(other, Symbol):
            self.require_same_space(other)
            return other
        if isinstance(other, (HPoly, Scalar, int)) or hasattr(other, "denominator"):
            return Symbol.constant(self.space, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            total = merged[key] + coeff if key in merged else coeff
            if total.is_zero():
                merged.pop(key, None)
            else:
                merged[key] = total
        return Symbol._trusted(self.space, merged)

    __radd__ = __add__

    def __neg__(self):
        return Symbol._trusted(self.space, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, coeff):
        """Multiply every coefficient by a Scalar or HPoly"""
        coeff = HPoly.coerce(coeff)
        scaled = {}
        for key, c in self._terms.items():
            product = c * coeff
            if product:
                scaled[key] = product
        return Symbol._trusted(self.space, scaled)

    def __mul__(self, other):
        """Commutative pointwise product"""
        other = self._lift(other)
        if other is None:
            return NotImplemented
        product = {}
        for (phi_a, pi_a), ca in self._terms.items():
            for (phi_b, pi_b), cb in other._terms.items():
                key = (phi_a + phi_b, pi_a + pi_b)
                c = ca * cb
                product[key] = product[key] + c if key in product else c
        return Symbol._trusted(self.space, {k: c for k, c in product.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValidationError("Symbols only have nonnegative powers")
        result = Symbol.one(self.space)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Symbol):
            return self.space == other.space and self._terms == other._terms
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return self._terms == lifted._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space.modes, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from expr.printer import print_symbol
        return f"Symbol({print_symbol(self)!r}, modes={self.space.modes})"

    # -- structure ---------------------------------------------------------

    def degree(self):
        """Total degree in phi and pi; -1 for the zero symbol"""
        return max((phi.degree + pi.degree for phi, pi in self._terms), default=-1)

    def pi_degrees(self):
        return {pi.degree for _, pi in self._terms}

    def phi_degrees(self):
        return {phi.degree for phi, _ in self._terms}

    def is_pi_free(self):
        return all(not pi for _, pi in self._terms)

    def is_constant(self):
        return all(not phi and not pi for phi, pi in self._terms)

    def constant_term(self):
        return self._terms.get((EMPTY, EMPTY), HPoly())

    def is_real(self):
        """All Scalar coefficients real"""
        return all(s.is_real() for c in self._terms.values() for s in c.coeffs)

    # -- calculus ----------------------------------------------------------

    def partial(self, which, mode, order=1):
        """Exact partial derivative with respect to phi_mode or pi_mode"""
        self.space.check_mode(mode)
        if which not in ("phi", "pi"):
            raise ValidationError(f"Derivative variable must be 'phi' or 'pi', got {which!r}")
        lowered = MultiIndex.unit(mode, order)
        result = {}
        for (phi, pi), coeff in self._terms.items():
            target = phi if which == "phi" else pi
            if target.exponent(mode) < order:
                continue
            factor = target.falling(lowered)
            reduced = target - lowered
            key = (reduced, pi) if which == "phi" else (phi, reduced)
            result[key] = coeff * factor
        return Symbol._trusted(self.space, result)

    def derivative(self, phi_alpha, pi_beta):
        """Mixed derivative d^alpha/dphi^alpha d^beta/dpi^beta"""
        result = {}
        for (phi, pi), coeff in self._terms.items():
            if phi.meet(phi_alpha) != phi_alpha or pi.meet(pi_beta) != pi_beta:
                continue
            factor = phi.falling(phi_alpha) * pi.falling(pi_beta)
            key = (phi - phi_alpha, pi - pi_beta)
            result[key] = coeff * factor
        return Symbol._trusted(self.space, result)

    def conjugate(self):
        return Symbol._trusted(self.space, {k: c.conjugate() for k, c in self._terms.items()})

    # -- h-adic filtration -------------------------------------------------

    def h_coefficient(self, power):
        """Symbol with constant coefficients collecting the h**power part"""
        part = {}
        for key, coeff in self._terms.items():
            c = coeff.coefficient(power)
            if c:
                part[key] = HPoly((c,))
        return Symbol._trusted(self.space, part)

    def min_h_degree(self):
        """Lowest h power carried by any coefficient; None for zero"""
        degrees = [c.min_degree() for c in self._terms.values()]
        return min(degrees, default=None)

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, phi_images, pi_images):
        """Replace phi_i by phi_images[i-1] and pi_i by pi_images[i-1] (Symbols of one space)"""
        images = list(phi_images) + list(pi_images)
        if len(phi_images) != self.space.modes or len(pi_images) != self.space.modes:
            raise ValidationError("Substitution needs one image per mode for phi and pi")
        target = images[0].space
        cache = {}

        def power(kind, mode, exponent):
            key = (kind, mode, exponent)
            if key not in cache:
                base = phi_images[mode - 1] if kind == "phi" else pi_images[mode - 1]
                cache[key] = base ** exponent
            return cache[key]

        result = Symbol.zero(target)
        for (phi, pi), coeff in self._terms.items():
            term = Symbol.constant(target, coeff)
            for mode, e in phi.items:
                term = term * power("phi", mode, e)
            for mode, e in pi.items:
                term = term * power("pi", mode, e)
            result = result + term
        return result

    def evaluate(self, phi_values, pi_values, h=0.0):
        """Numeric value at a phase-space point"""
        total = 0j
        for (phi, pi), coeff in self._terms.items():
            value = coeff.evaluate(h)
            for mode, e in phi.items:
                value *= phi_values[mode - 1] ** e
            for mode, e in pi.items:
                value *= pi_values[mode - 1] ** e
            total += value
        return total


def phi(space, mode, exponent=1):
    return Symbol.phi(space, mode, exponent)


def pi(space, mode, exponent=1):
    return Symbol.pi(space, mode, exponent)
