"""
Functional calculus on truncated symbols.

In the truncation a functional derivative d/dphi(x) becomes the partial
derivative d/dphi_i, and the delta function of the continuum becomes a
Kronecker delta with no measure factor. Bracket orientation:

    {A, B} = sum_i dA/dpi_i dB/dphi_i - dA/dphi_i dB/dpi_i

so that {pi_i, phi_i} = 1.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from symbols.scalar import HPoly
from symbols.symbol import MultiIndex, Symbol
from utils.errors import ValidationError

PHI = "phi"
PI = "pi"


def functional_derivative(symbol, which, mode):
    """Exact partial derivative of a symbol with respect to phi_mode or pi_mode"""
    return symbol.partial(which, mode)


def poisson_bracket(a, b):
    """Poisson bracket of two symbols over the same mode space"""
    a.require_same_space(b)
    result = Symbol.zero(a.space)
    for mode in range(1, a.space.modes + 1):
        da_pi = a.partial(PI, mode)
        da_phi = a.partial(PHI, mode)
        if da_pi:
            db_phi = b.partial(PHI, mode)
            if db_phi:
                result = result + da_pi * db_phi
        if da_phi:
            db_pi = b.partial(PI, mode)
            if db_pi:
                result = result - da_phi * db_pi
    return result


def bidegree_decompose(symbol):
    """
    Split a symbol into components homogeneous of degree k in phi and l in pi.

    Returns a list of (k, l, component) ordered by descending total degree,
    then descending k. Empty components are omitted, so the zero symbol
    decomposes into an empty list.
    """
    groups = {}
    for (phi, pi), coeff in symbol.terms.items():
        groups.setdefault((phi.degree, pi.degree), {})[(phi, pi)] = coeff
    ordered = sorted(groups, key=lambda kl: (-(kl[0] + kl[1]), -kl[0]))
    return [(k, l, Symbol(symbol.space, groups[(k, l)])) for k, l in ordered]


@dataclass(frozen=True)
class KernelTensor:
    """
    Sparse symmetric kernel a_{k,l} of a homogeneous component.

    Entries are indexed by sorted mode tuples, so the symmetry in the phi
    slots and in the pi slots is structural. The component is recovered as

        H_{k,l} = 1/(k! l!) * sum over sorted (xs, ys) of entry(xs, ys) * phi_xs * pi_ys

    The continuum convention sums over ordered tuples instead; each sorted
    tuple then stands for k!/alpha! orderings, which is why
    distribution_value carries the multiplicity factor alpha! beta! / (k! l!).
    """

    k: int
    l: int
    entries: dict = field(default_factory=dict)

    def entry(self, xs, ys=()):
        return self.entries.get((tuple(sorted(xs)), tuple(sorted(ys))), HPoly())

    def distribution_value(self, xs, ys=()):
        """Value of the fully symmetric kernel at an ordered index tuple"""
        multiplicity = _tuple_multiplicity(xs) * _tuple_multiplicity(ys)
        weight = Fraction(multiplicity, factorial(self.k) * factorial(self.l))
        return self.entry(xs, ys) * weight

    def is_empty(self):
        return not self.entries

    def __len__(self):
        return len(self.entries)


def _tuple_multiplicity(modes):
    counts = {}
    for mode in modes:
        counts[mode] = counts.get(mode, 0) + 1
    result = 1
    for count in counts.values():
        result *= factorial(count)
    return result


def _expand(index):
    return tuple(mode for mode, e in index.items for _ in range(e))


def kernel_extract(symbol, k, l):
    """Read the kernel a_{k,l} of the (k, l) component of a symbol"""
    if k < 0 or l < 0:
        raise ValidationError(f"Bidegree must be nonnegative, got ({k}, {l})")
    weight = factorial(k) * factorial(l)
    entries = {}
    for (phi, pi), coeff in symbol.terms.items():
        if phi.degree == k and pi.degree == l:
            entries[(_expand(phi), _expand(pi))] = coeff * weight
    return KernelTensor(k, l, entries)


def reconstruct(kernel, space):
    """Inverse of kernel_extract: the homogeneous component described by a kernel"""
    weight = Fraction(1, factorial(kernel.k) * factorial(kernel.l))
    terms = {}
    for (xs, ys), value in kernel.entries.items():
        if len(xs) != kernel.k or len(ys) != kernel.l:
            raise ValidationError(f"Kernel entry {xs}, {ys} does not match bidegree ({kernel.k}, {kernel.l})")
        phi = MultiIndex((mode, 1) for mode in xs)
        pi = MultiIndex((mode, 1) for mode in ys)
        terms[(phi, pi)] = value * weight
    return Symbol(space, terms)


def conjugate(symbol):
    """Complex-conjugate every coefficient; h, phi and pi are real"""
    return symbol.conjugate()
