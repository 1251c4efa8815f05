"""Canonical JSON interchange form for symbols."""

import json

from symbols.scalar import HPoly
from symbols.symbol import ModeSpace, MultiIndex, Symbol
from utils.errors import ValidationError


def symbol_to_json(symbol):
    """Dict form with terms in canonical order"""
    n = symbol.space.modes
    return {
        "modes": n,
        "terms": [
            {"phi": list(phi.dense(n)), "pi": list(pi.dense(n)), "coeff": coeff.to_json()}
            for phi, pi, coeff in symbol.canonical_terms()
        ],
    }


def symbol_from_json(document):
    """Parse the dict form back into a Symbol"""
    try:
        space = ModeSpace(document["modes"])
        entries = document["terms"]
    except (KeyError, TypeError):
        raise ValidationError("Symbol JSON needs 'modes' and 'terms'")
    terms = {}
    for entry in entries:
        try:
            phi_exps, pi_exps, coeff = entry["phi"], entry["pi"], entry["coeff"]
        except (KeyError, TypeError):
            raise ValidationError(f"Malformed symbol term {entry!r}")
        if len(phi_exps) != space.modes or len(pi_exps) != space.modes:
            raise ValidationError(f"Term {entry!r} must list {space.modes} exponents for phi and pi")
        key = (MultiIndex.from_dense(phi_exps), MultiIndex.from_dense(pi_exps))
        if key in terms:
            raise ValidationError(f"Duplicate symbol term {entry!r}")
        terms[key] = HPoly.from_json(coeff)
    return Symbol(space, terms)


def dumps_symbol(symbol):
    """Byte-stable JSON text"""
    return json.dumps(symbol_to_json(symbol), separators=(",", ":"), sort_keys=True)


def loads_symbol(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid symbol JSON: {e}")
    return symbol_from_json(document)
