"""Exact scalar arithmetic: rationals and Gaussian (complex) rationals.

``Q`` is the rational type used throughout the exact layer.  gmpy2's mpq is
preferred for speed; fractions.Fraction is a drop-in fallback.  Real-valued
coefficient tables store plain ``Q`` values and only promote to :class:`QQi`
when a genuinely complex scalar enters (e.g. a phase rotation by i), so the
hot identity-checking paths stay in real rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

QONE = Q(1)
QZERO = Q(0)


def as_q(x) -> "Q":
    """Coerce int / str / Fraction / mpq to Q. Floats are rejected."""
    if isinstance(x, float):
        raise TypeError("refusing float -> rational coercion; pass int, str or Fraction")
    return Q(x)


def q_to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator))


class QQi:
    """Gaussian rational a + b*i with exact rational parts.

    Interops with int/Q scalars through the reflected operators, so mixed
    coefficient dicts {key: Q or QQi} work without explicit promotion.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re)
        self.im = Q(im)

    @staticmethod
    def coerce(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, complex):
            raise TypeError("refusing float complex -> QQi coercion")
        return QQi(x, 0)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def __add__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QQi.coerce(other)
        return QQi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero QQi")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = QQi(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == Q(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


I_QQI = QQi(0, 1)


def conj_scalar(v):
    """Complex conjugate for Q or QQi values."""
    return v.conjugate() if isinstance(v, QQi) else v


def scalar_to_complex(v) -> complex:
    if isinstance(v, QQi):
        return complex(v)
    return complex(v)  # handles int, float, complex, mpq, mpc, Fraction


def scalar_re(v):
    return v.re if isinstance(v, QQi) else v


def scalar_im(v):
    return v.im if isinstance(v, QQi) else QZERO


def abs2_scalar(v):
    """|v|^2 as an exact rational."""
    if isinstance(v, QQi):
        return v.re * v.re + v.im * v.im
    return v * v
