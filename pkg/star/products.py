"""
Deformed products on symbols.

normal_star    A *_N B = sum_alpha lambda^|alpha| / alpha! (d_pi^alpha A)(d_phi^alpha B)
weyl_star      A *_W B = sum_{r,s} (lambda/2)^{|r|+|s|} (-1)^|s| / (r! s!)
                            (d_pi^r d_phi^s A)(d_phi^r d_pi^s B)
ordering_transform   R = exp(+-lambda/2 sum_i d^2/dphi_i dpi_i)

R carries a Weyl symbol to the normal-ordered symbol of the same operator,
so R(A *_W B) = R(A) *_N R(B); it changes nothing at h-degree 0.
"""

from fractions import Fraction

from symbols.calculus import poisson_bracket
from symbols.scalar import HPoly
from symbols.symbol import Symbol
from utils.errors import ValidationError

WEYL_TO_NORMAL = "weyl_to_normal"
NORMAL_TO_WEYL = "normal_to_weyl"


def _accumulate(target, key, coeff):
    if key in target:
        coeff = target[key] + coeff
    if coeff:
        target[key] = coeff
    else:
        target.pop(key, None)


def normal_star(a, b, ctx):
    """Normal-ordered product: every pi of A acts on the phi's of B"""
    a.require_same_space(b)
    ctx.require_space(a)
    result = {}
    for (a_phi, a_pi), ca in a.terms.items():
        for (b_phi, b_pi), cb in b.terms.items():
            base = ca * cb
            for alpha in a_pi.meet(b_phi).divisors():
                weight = Fraction(a_pi.falling(alpha) * b_phi.falling(alpha), alpha.factorial())
                coeff = base * ctx.lam_power(alpha.degree) * weight
                key = ((a_phi + b_phi) - alpha, (a_pi - alpha) + b_pi)
                _accumulate(result, key, coeff)
    return Symbol(a.space, result)


def weyl_star(a, b, ctx):
    """Symmetric-ordering (Moyal) product"""
    a.require_same_space(b)
    ctx.require_space(a)
    half = ctx.lam * Fraction(1, 2)
    half_powers = [HPoly((1,))]
    result = {}
    for (a_phi, a_pi), ca in a.terms.items():
        for (b_phi, b_pi), cb in b.terms.items():
            base = ca * cb
            forward = a_pi.meet(b_phi).divisors()
            backward = a_phi.meet(b_pi).divisors()
            for r in forward:
                r_weight = Fraction(a_pi.falling(r) * b_phi.falling(r), r.factorial())
                for s in backward:
                    s_weight = Fraction(a_phi.falling(s) * b_pi.falling(s), s.factorial())
                    order = r.degree + s.degree
                    while len(half_powers) <= order:
                        half_powers.append(half_powers[-1] * half)
                    sign = -1 if s.degree % 2 else 1
                    coeff = base * half_powers[order] * (r_weight * s_weight * sign)
                    key = ((a_phi - s) + (b_phi - r), (a_pi - r) + (b_pi - s))
                    _accumulate(result, key, coeff)
    return Symbol(a.space, result)


def _mixed_exponential(symbol, mu):
    """exp(mu * sum_i d^2/dphi_i dpi_i) applied termwise"""
    powers = [HPoly((1,))]
    result = {}
    for (phi, pi), coeff in symbol.terms.items():
        for gamma in phi.meet(pi).divisors():
            while len(powers) <= gamma.degree:
                powers.append(powers[-1] * mu)
            weight = Fraction(phi.falling(gamma) * pi.falling(gamma), gamma.factorial())
            _accumulate(result, (phi - gamma, pi - gamma), coeff * powers[gamma.degree] * weight)
    return Symbol(symbol.space, result)


def ordering_transform(symbol, ctx, direction=WEYL_TO_NORMAL):
    """Transition between Weyl and normal-ordered symbols of one operator"""
    ctx.require_space(symbol)
    if direction == WEYL_TO_NORMAL:
        mu = ctx.lam * Fraction(1, 2)
    elif direction == NORMAL_TO_WEYL:
        mu = ctx.lam * Fraction(-1, 2)
    else:
        raise ValidationError(f"Unknown ordering direction {direction!r}")
    return _mixed_exponential(symbol, mu)


def normal_involution(symbol, ctx):
    """
    Conjugate-and-reverse on normal-ordered symbols.

    Each term c phi^a pi^b maps to conj(c) sign^|b| (pi^b *_N phi^a), which
    is the normal symbol of the formal adjoint of its quantization. It is an
    antilinear anti-automorphism of *_N.
    """
    ctx.require_space(symbol)
    sign = ctx.involution_sign
    flipped = {}
    for (phi, pi), coeff in symbol.terms.items():
        c = coeff.conjugate()
        if sign < 0 and pi.degree % 2:
            c = -c
        _accumulate(flipped, (phi, pi), c)
    return _mixed_exponential(Symbol(symbol.space, flipped), ctx.lam)


def star_commutator(a, b, ctx, product=normal_star):
    return product(a, b, ctx) - product(b, a, ctx)


def correspondence_defect(a, b, ctx, product=normal_star):
    """[A, B]_* - lambda {A, B}; has h-degree >= 2 for both products"""
    return star_commutator(a, b, ctx, product) - poisson_bracket(a, b).scale(ctx.lam)
