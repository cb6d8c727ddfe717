"""Exact arithmetic in the real field Q(sqrt2, sqrt5).

Every constant appearing in the structure tables, connection forms and
tensor displays handled by this package lies in the degree-4 extension
Q(sqrt2, sqrt5) = Q + Q*sqrt2 + Q*sqrt5 + Q*sqrt10.  Elements are stored
on that basis with Fraction coordinates, so equality and the zero test
are exact and signs are decidable.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Union[int, Fraction]


class DegenerateError(ZeroDivisionError):
    """Division by zero in the scalar field; signals degenerate geometric input."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class QScalar:
    """a + b*sqrt2 + c*sqrt5 + d*sqrt10 with rational a, b, c, d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Rat = 0, b: Rat = 0, c: Rat = 0, d: Rat = 0):
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        return QScalar(_frac(x))

    @staticmethod
    def zero() -> "QScalar":
        return _ZERO

    @staticmethod
    def one() -> "QScalar":
        return _ONE

    @staticmethod
    def sqrt2() -> "QScalar":
        return QScalar(0, 1)

    @staticmethod
    def sqrt5() -> "QScalar":
        return QScalar(0, 0, 1)

    @staticmethod
    def sqrt10() -> "QScalar":
        return QScalar(0, 0, 0, 1)

    # -- ring structure ----------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return QScalar(other)
        return None

    def __add__(self, other) -> "QScalar":
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return QScalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other) -> "QScalar":
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "QScalar":
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "QScalar":
        o = QScalar._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return QScalar(
            a1 * a2 + 2 * b1 * b2 + 5 * c1 * c2 + 10 * d1 * d2,
            a1 * b2 + b1 * a2 + 5 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj2(self) -> "QScalar":
        """Galois conjugate sending sqrt2 -> -sqrt2."""
        return QScalar(self.a, -self.b, self.c, -self.d)

    def conj5(self) -> "QScalar":
        """Galois conjugate sending sqrt5 -> -sqrt5."""
        return QScalar(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise DegenerateError("inverse of zero in Q(sqrt2,sqrt5)")
        # multiply through by the three nontrivial Galois conjugates;
        # the product of all four lies in Q
        p = self.conj2() * self.conj5() * self.conj2().conj5()
        norm = (self * p).a
        return QScalar(p.a / norm, p.b / norm, p.c / norm, p.d / norm)

    def __truediv__(self, other) -> "QScalar":
        return self * QScalar.of(other).inverse()

    def __rtruediv__(self, other) -> "QScalar":
        return QScalar.of(other) * self.inverse()

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and order ----------------------------------------

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QScalar, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign: -1, 0 or +1.

        The basis representation is unique, so zero is decided exactly;
        nonzero values get adaptive rational interval bounds on the surds
        until zero is excluded.
        """
        if self.is_zero():
            return 0
        prec = 30
        while True:
            lo, hi = self._bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def _bounds(self, digits: int):
        scale = 10 ** digits
        lo = hi = self.a
        for coeff, n in ((self.b, 2), (self.c, 5), (self.d, 10)):
            if coeff == 0:
                continue
            r = isqrt(n * scale * scale)
            slo = Fraction(r, scale)
            shi = Fraction(r + 1, scale)
            if coeff > 0:
                lo += coeff * slo
                hi += coeff * shi
            else:
                lo += coeff * shi
                hi += coeff * slo
        return lo, hi

    def __lt__(self, other):
        return (self - QScalar.of(other)).sign() < 0

    def __le__(self, other):
        return (self - QScalar.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QScalar.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - QScalar.of(other)).sign() >= 0

    # -- roots ---------------------------------------------------------

    def sqrt(self) -> "QScalar":
        """Exact square root for elements of the form r^2, 2r^2, 5r^2, 10r^2.

        Raises ValueError when the square root does not lie in the field
        (only monomial radicands are attempted; that covers every value
        produced by the supported constructions).
        """
        if self.sign() < 0:
            raise ValueError("square root of a negative value")
        if self.is_zero():
            return _ZERO
        cands = []
        if self.is_rational():
            cands = [(self.a, QScalar(1)), (self.a / 2, QScalar.sqrt2()),
                     (self.a / 5, QScalar.sqrt5()), (self.a / 10, QScalar.sqrt10())]
        elif not self.a and not self.c and not self.d:
            # b*sqrt2 = (t*2^(1/4))^2 never lands in the field except b=0
            cands = []
        for val, unit in cands:
            r = _rat_sqrt(val)
            if r is not None:
                return QScalar(r) * unit
        raise ValueError(f"square root of {self} not in Q(sqrt2,sqrt5)")

    def cbrt(self) -> "QScalar":
        """Exact cube root for monomial elements r, r*sqrt2, r*sqrt5, r*sqrt10."""
        if self.is_zero():
            return _ZERO
        nz = [(self.a, QScalar(1), 1), (self.b, QScalar.sqrt2(), 2),
              (self.c, QScalar.sqrt5(), 5), (self.d, QScalar.sqrt10(), 10)]
        nz = [(v, u, n) for v, u, n in nz if v != 0]
        if len(nz) == 1:
            v, unit, n = nz[0]
            # (t*sqrtn)^3 = t^3 * n * sqrtn
            r = _rat_cbrt(Fraction(v, n) if n > 1 else v)
            if r is not None:
                return QScalar(r) * unit
        raise ValueError(f"cube root of {self} not in Q(sqrt2,sqrt5)")

    # -- conversion ----------------------------------------------------

    def __float__(self) -> float:
        return (float(self.a) + float(self.b) * 2 ** 0.5
                + float(self.c) * 5 ** 0.5 + float(self.d) * 10 ** 0.5)

    def as_strings(self):
        return [str(self.a), str(self.b), str(self.c), str(self.d)]

    @staticmethod
    def from_strings(parts) -> "QScalar":
        if len(parts) != 4:
            raise ValueError("expected four rational strings")
        return QScalar(*[Fraction(p) for p in parts])

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for coeff, tag in ((self.a, ""), (self.b, "*r2"), (self.c, "*r5"), (self.d, "*r10")):
            if coeff:
                bits.append(f"{coeff}{tag}")
        return " + ".join(bits).replace("+ -", "- ")


def _rat_sqrt(x: Fraction):
    if x < 0:
        return None
    x = Fraction(x)
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def _icbrt(n: int):
    if n < 0:
        r = _icbrt(-n)
        return None if r is None else -r
    r = round(n ** (1 / 3)) if n < 2 ** 50 else int(n ** (1 / 3))
    for cand in range(max(r - 2, 0), r + 3):
        if cand ** 3 == n:
            return cand
    return None


def _rat_cbrt(x: Fraction):
    x = Fraction(x)
    pn, pd = _icbrt(x.numerator), _icbrt(x.denominator)
    if pn is not None and pd is not None:
        return Fraction(pn, pd)
    return None


_ZERO = QScalar(0)
_ONE = QScalar(1)

SQRT2 = QScalar.sqrt2()
SQRT5 = QScalar.sqrt5()
SQRT10 = QScalar.sqrt10()


def rational(p, q=1) -> QScalar:
    return QScalar(Fraction(p, q))
