"""
Deformation context.

Every deformed product is written in terms of one scalar lambda = c*h.
lambda = -ih makes the normal-ordered product agree with composition of
operators under pi -> -ih d/dphi; lambda = ih is the literal exponent of the
normal-ordered product formula; lambda = h is the bracket scaling of the
first-order Lie algebra. The involution sign follows from the reality of c.
"""

from symbols.scalar import HPoly, Scalar, H, I, ONE
from symbols.symbol import ModeSpace
from utils.errors import ValidationError

_NAMED = {
    "h": ONE,
    "-h": -ONE,
    "ih": I,
    "-ih": -I,
}


class DiffContext:
    """Mode space plus deformation scalar lambda; immutable"""

    __slots__ = ("space", "lam", "coefficient", "involution_sign", "_powers")

    def __init__(self, space, lam):
        if isinstance(space, int):
            space = ModeSpace(space)
        lam = HPoly.coerce(lam)
        if lam.degree != 1 or lam.coefficient(0):
            raise ValidationError(f"lambda must be a nonzero multiple of h, got {lam!r}")
        c = lam.coefficient(1)
        if c.is_real():
            sign = -1
        elif c.is_imaginary():
            sign = 1
        else:
            raise ValidationError(f"lambda = ({c.re} + {c.im}i)h is neither real nor imaginary; no involution exists")
        self.space = space
        self.lam = lam
        self.coefficient = c
        self.involution_sign = sign
        self._powers = [HPoly((ONE,))]

    @classmethod
    def from_label(cls, modes, label):
        """Build from 'h', 'ih', '-ih', '-h' or a [re_num, re_den, im_num, im_den] list"""
        if isinstance(label, str):
            key = label.strip().replace(" ", "").replace("*", "")
            if key not in _NAMED:
                raise ValidationError(f"Unknown lambda {label!r}; expected h, ih, -ih or a scalar list")
            c = _NAMED[key]
        else:
            c = Scalar.from_json(label)
        return cls(modes, H * c)

    @classmethod
    def default(cls, modes):
        """lambda = -ih, the operator-composition convention"""
        return cls.from_label(modes, "-ih")

    def lam_power(self, n):
        """lambda**n, cached"""
        while len(self._powers) <= n:
            self._powers.append(self._powers[-1] * self.lam)
        return self._powers[n]

    @property
    def label(self):
        for name, value in _NAMED.items():
            if value == self.coefficient:
                return name
        return self.coefficient.to_json()

    def to_json(self):
        return {"modes": self.space.modes, "lambda": self.label}

    @classmethod
    def from_json(cls, document):
        try:
            return cls.from_label(document["modes"], document["lambda"])
        except (KeyError, TypeError):
            raise ValidationError("Context JSON needs 'modes' and 'lambda'")

    def require_space(self, symbol):
        if symbol.space != self.space:
            raise ValidationError(f"Symbol over {symbol.space.modes} modes used in a {self.space.modes}-mode context")

    def __eq__(self, other):
        return isinstance(other, DiffContext) and self.space == other.space and self.lam == other.lam

    def __hash__(self):
        return hash((self.space, self.lam))

    def __repr__(self):
        return f"DiffContext(modes={self.space.modes}, lambda={self.label!r})"
