"""
Normal forms in the quotient of the enveloping algebra.

Generators are first unfolded into letters: F(g) (multiplication by a
non-constant pi-free symbol g) and P(i) (the constant vector field pi_i).
A generator f + sum_i g_i pi_i unfolds to

    F(f) + sum_i ( F(g_i) P(i) + lambda/2 F(dg_i/dphi_i) )

and words are rewritten with

    F(a) F(b)           -> F(a b)
    P(i) F(g)           -> F(g) P(i) + lambda F(dg/dphi_i)
    P(i) P(j), i > j    -> P(j) P(i)

Constant F letters fold into the coefficient. Every rule lowers the number
of P-before-F inversions, then the number of unsorted P pairs, then the word
length, so rewriting terminates. An irreducible sequence is F(g) P(i1)..P(ik)
with i1 <= .. <= ik, read as the symbol g pi_i1 .. pi_ik.
"""

import random
from dataclasses import dataclass

from star.context import DiffContext
from symbols.scalar import HPoly, ONE
from symbols.symbol import EMPTY, MultiIndex, Symbol
from utils.errors import ValidationError
from utils.logger import logger

LEFTMOST = "leftmost"
RANDOM = "random"

_F = "F"
_P = "P"


@dataclass(frozen=True)
class DiffElement:
    """Normal form of a word: a Symbol read with phi's left and pi's right"""

    nf: Symbol
    ctx: DiffContext


def _function_letter(symbol):
    """(coefficient, letters) for multiplication by a pi-free symbol, or None for zero"""
    if symbol.is_zero():
        return None
    if symbol.is_constant():
        return symbol.constant_term(), ()
    return HPoly((ONE,)), ((_F, symbol),)


def _generator_letters(generator, ctx):
    half_lambda = ctx.lam * HPoly((ONE / 2,))
    unfolded = []
    lead = _function_letter(generator.f)
    if lead is not None:
        unfolded.append(lead)
    for mode, g in generator.components().items():
        head = _function_letter(g)
        if head is not None:
            coeff, letters = head
            unfolded.append((coeff, letters + ((_P, mode),)))
        correction = _function_letter(g.partial("phi", mode))
        if correction is not None:
            coeff, letters = correction
            unfolded.append((coeff * half_lambda, letters))
    return unfolded


def _add(target, letters, coeff):
    if letters in target:
        coeff = target[letters] + coeff
    if coeff:
        target[letters] = coeff
    else:
        target.pop(letters, None)


def _unfold(word, ctx):
    pending = {}
    cache = {}
    for sequence, coeff in word.terms.items():
        partial = [(coeff, ())]
        for generator in sequence:
            if generator not in cache:
                cache[generator] = _generator_letters(generator, ctx)
            partial = [(c1 * c2, l1 + l2) for c1, l1 in partial for c2, l2 in cache[generator]]
        for c, letters in partial:
            _add(pending, letters, c)
    return pending


def _redexes(letters):
    found = []
    for pos in range(len(letters) - 1):
        left, right = letters[pos], letters[pos + 1]
        if left[0] == _F and right[0] == _F:
            found.append(pos)
        elif left[0] == _P and right[0] == _F:
            found.append(pos)
        elif left[0] == _P and right[0] == _P and left[1] > right[1]:
            found.append(pos)
    return found


def _splice(letters, pos, middle):
    return letters[:pos] + middle + letters[pos + 2:]


def _rewrite(letters, pos, ctx):
    left, right = letters[pos], letters[pos + 1]
    if left[0] == _F:
        merged = _function_letter(left[1] * right[1])
        return [] if merged is None else [(merged[0], _splice(letters, pos, merged[1]))]
    if right[0] == _P:
        return [(HPoly((ONE,)), _splice(letters, pos, (right, left)))]
    mode, g = left[1], right[1]
    results = [(HPoly((ONE,)), _splice(letters, pos, (right, left)))]
    correction = _function_letter(g.partial("phi", mode))
    if correction is not None:
        coeff, middle = correction
        results.append((coeff * ctx.lam, _splice(letters, pos, middle)))
    return results


def _as_symbol(letters, coeff, space):
    if letters and letters[0][0] == _F:
        head = letters[0][1]
        letters = letters[1:]
    else:
        head = Symbol.one(space)
    pi = MultiIndex((mode, 1) for _, mode in letters)
    return head * Symbol.monomial(space, EMPTY, pi, coeff)


def normal_form(word, ctx, strategy=LEFTMOST, seed=None):
    """
    Unique normal form of a word in the quotient algebra.

    strategy selects the redex: LEFTMOST always rewrites the first redex of
    the most recently produced word; RANDOM picks word and redex with a
    random.Random(seed) generator. Both reach the same result.
    """
    if word.space != ctx.space:
        raise ValidationError("Word and context live in different mode spaces")
    if strategy not in (LEFTMOST, RANDOM):
        raise ValidationError(f"Unknown rewrite strategy {strategy!r}")
    rng = random.Random(seed) if strategy == RANDOM else None

    pending = _unfold(word, ctx)
    irreducible = {}
    steps = 0
    while pending:
        if rng is None:
            letters, coeff = pending.popitem()
        else:
            letters = rng.choice(list(pending))
            coeff = pending.pop(letters)
        redexes = _redexes(letters)
        if not redexes:
            _add(irreducible, letters, coeff)
            continue
        pos = redexes[0] if rng is None else rng.choice(redexes)
        for factor, rewritten in _rewrite(letters, pos, ctx):
            _add(pending, rewritten, coeff * factor)
        steps += 1

    logger.log_rewrite(steps, len(word.terms), strategy)
    result = Symbol.zero(ctx.space)
    for letters, coeff in irreducible.items():
        result = result + _as_symbol(letters, coeff, ctx.space)
    return DiffElement(result, ctx)
