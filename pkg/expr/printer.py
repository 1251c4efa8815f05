"""
Canonical text for Symbols and DiffWords.

Terms follow canonical order (descending total degree, descending phi and pi
exponent tuples) and, inside a term, ascending powers of h. The output parses
back to an equal value.
"""

from fractions import Fraction

from symbols.scalar import Scalar


def _rational_text(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _split_sign(c):
    """(negative, magnitude) so that c == -magnitude when negative"""
    if c.is_real():
        return c.re < 0, Scalar(abs(c.re))
    if c.is_imaginary():
        return c.im < 0, Scalar(0, abs(c.im))
    return False, c


def _scalar_text(c):
    """Text of a sign-normalized Scalar"""
    if c.is_real():
        return _rational_text(c.re)
    if c.is_imaginary():
        return "i" if c.im == 1 else f"{_rational_text(c.im)}*i"
    imaginary = "i" if abs(c.im) == 1 else f"{_rational_text(abs(c.im))}*i"
    return f"({_rational_text(c.re)}{'+' if c.im > 0 else '-'}{imaginary})"


def _monomial_factors(phi, pi):
    factors = []
    for name, index in (("phi", phi), ("pi", pi)):
        for mode, exponent in index.items:
            factors.append(f"{name}[{mode}]" if exponent == 1 else f"{name}[{mode}]^{exponent}")
    return factors


def _term(c, power, factors):
    negative, magnitude = _split_sign(c)
    parts = list(factors)
    if power:
        parts.insert(0, "h" if power == 1 else f"h^{power}")
    if magnitude != 1 or not parts:
        parts.insert(0, _scalar_text(magnitude))
    return negative, "*".join(parts)


def _join(terms):
    if not terms:
        return "0"
    pieces = []
    for index, (negative, text) in enumerate(terms):
        if index == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def _hpoly_terms(coeff, factors):
    return [_term(c, power, factors) for power, c in enumerate(coeff.coeffs) if c]


def print_symbol(symbol):
    """Canonical text; the zero symbol prints as 0"""
    terms = []
    for phi, pi, coeff in symbol.canonical_terms():
        terms.extend(_hpoly_terms(coeff, _monomial_factors(phi, pi)))
    return _join(terms)


def print_hpoly(coeff):
    return _join(_hpoly_terms(coeff, []))


def print_generator(generator):
    return f"D({print_symbol(generator.f)}; {print_symbol(generator.v)})"


def print_word(word):
    """Words ordered by length, then text; multi-power coefficients are parenthesized"""
    rendered = []
    for sequence, coeff in word.terms.items():
        factors = [print_generator(g) for g in sequence]
        rendered.append((len(sequence), "*".join(factors), coeff, factors))
    rendered.sort(key=lambda item: (item[0], item[1]))
    terms = []
    for _, _, coeff, factors in rendered:
        powers = [p for p, c in enumerate(coeff.coeffs) if c]
        if len(powers) == 1:
            terms.append(_term(coeff.coeffs[powers[0]], powers[0], factors))
        else:
            terms.append((False, "*".join([f"({print_hpoly(coeff)})"] + factors)))
    return _join(terms)
