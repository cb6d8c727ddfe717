"""Laurent polynomials in a collar parameter s over Q(sqrt2, sqrt5).

Geometric coefficients in this package depend on a single transverse
function rho.  Three parameterizations of the same ring are supported,
recorded in a marker on each element:

    PLAIN      rho = s          (polynomial data directly in rho)
    RHO_PLUS   rho = +s^2       (so (+rho)^(1/2) = s exactly)
    RHO_MINUS  rho = -s^2       (so (-rho)^(1/2) = s exactly)

The quadratic markers exist so that the half-integer powers of rho that
appear in the open-orbit structures are honest Laurent monomials in s.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .scalars import DegenerateError, QScalar

PLAIN = "plain"
RHO_PLUS = "rho+"
RHO_MINUS = "rho-"

_MARKERS = (PLAIN, RHO_PLUS, RHO_MINUS)


class CoeffFn:
    """Finite QScalar-combination of integer powers of s (negatives allowed)."""

    __slots__ = ("terms", "param")

    def __init__(self, terms: Optional[Dict[int, QScalar]] = None, param: str = PLAIN):
        if param not in _MARKERS:
            raise ValueError(f"unknown parameterization {param!r}")
        self.param = param
        self.terms: Dict[int, QScalar] = {}
        if terms:
            for e, c in terms.items():
                c = QScalar.of(c)
                if not c.is_zero():
                    self.terms[int(e)] = c

    # -- constructors --------------------------------------------------

    @staticmethod
    def of(x, param: str = PLAIN) -> "CoeffFn":
        if isinstance(x, CoeffFn):
            return x
        return CoeffFn({0: QScalar.of(x)}, param)

    @staticmethod
    def zero(param: str = PLAIN) -> "CoeffFn":
        return CoeffFn({}, param)

    @staticmethod
    def one(param: str = PLAIN) -> "CoeffFn":
        return CoeffFn({0: QScalar.one()}, param)

    @staticmethod
    def s(param: str = PLAIN) -> "CoeffFn":
        return CoeffFn({1: QScalar.one()}, param)

    @staticmethod
    def monomial(coeff, exp: int, param: str = PLAIN) -> "CoeffFn":
        return CoeffFn({exp: QScalar.of(coeff)}, param)

    @staticmethod
    def rho(param: str = PLAIN) -> "CoeffFn":
        """The function rho expressed in the marker's s-variable."""
        if param == PLAIN:
            return CoeffFn({1: QScalar.one()}, param)
        if param == RHO_PLUS:
            return CoeffFn({2: QScalar.one()}, param)
        return CoeffFn({2: QScalar(-1)}, param)

    # -- bookkeeping -----------------------------------------------------

    def _join(self, other) -> "CoeffFn":
        o = CoeffFn.of(other, self.param)
        if o.param == self.param:
            return o
        # constants are parameterization-agnostic
        if set(o.terms) <= {0}:
            return CoeffFn(o.terms, self.param)
        raise ValueError(f"parameterization mismatch {self.param!r} vs {o.param!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return set(self.terms) <= {0}

    def constant_value(self) -> QScalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant in s")
        return self.terms.get(0, QScalar.zero())

    def min_exp(self) -> int:
        if not self.terms:
            return 0
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            return 0
        return max(self.terms)

    def coeff(self, e: int) -> QScalar:
        return self.terms.get(e, QScalar.zero())

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other) -> "CoeffFn":
        o = self._join(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, QScalar.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return CoeffFn(out, self.param)

    __radd__ = __add__

    def __neg__(self) -> "CoeffFn":
        return CoeffFn({e: -c for e, c in self.terms.items()}, self.param)

    def __sub__(self, other) -> "CoeffFn":
        return self + (-self._join(other))

    def __rsub__(self, other) -> "CoeffFn":
        return self._join(other) + (-self)

    def __mul__(self, other) -> "CoeffFn":
        o = self._join(other)
        out: Dict[int, QScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = e1 + e2
                p = c1 * c2
                s = out.get(e)
                s = p if s is None else s + p
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return CoeffFn(out, self.param)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except ValueError:
            return NotImplemented

    def __hash__(self):
        return hash((self.param, tuple(sorted((e, c) for e, c in self.terms.items()))))

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> "CoeffFn":
        if len(self.terms) != 1:
            if not self.terms:
                raise DegenerateError("inverse of zero coefficient function")
            raise ValueError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return CoeffFn({-e: c.inverse()}, self.param)

    def __truediv__(self, other) -> "CoeffFn":
        o = self._join(other)
        if len(o.terms) == 1:
            return self * o.inverse()
        q, r = self.divmod(o)
        if not r.is_zero():
            raise ValueError("inexact Laurent division")
        return q

    def divmod(self, other):
        """Laurent long division from the top term: self = q*other + r.

        For an exact quotient the r returned is zero; otherwise division
        stops once the candidate quotient exponent drops below the range
        an exact quotient could occupy.
        """
        o = self._join(other)
        if o.is_zero():
            raise DegenerateError("division by zero coefficient function")
        lead_e = o.max_exp()
        lead_inv = o.coeff(lead_e).inverse()
        q = CoeffFn.zero(self.param)
        rem = self
        if rem.is_zero():
            return q, rem
        floor_exp = self.min_exp() - o.min_exp()
        while not rem.is_zero():
            qe = rem.max_exp() - lead_e
            if qe < floor_exp:
                break
            t = CoeffFn({qe: rem.coeff(rem.max_exp()) * lead_inv}, self.param)
            q = q + t
            rem = rem - t * o
        return q, rem

    # -- calculus ----------------------------------------------------------

    def d_ds(self) -> "CoeffFn":
        out = {}
        for e, c in self.terms.items():
            if e != 0:
                out[e - 1] = c * e
        return CoeffFn(out, self.param)

    def d_drho(self) -> "CoeffFn":
        """Derivative with respect to rho in the active parameterization."""
        if self.param == PLAIN:
            return self.d_ds()
        out = {}
        sign = 1 if self.param == RHO_PLUS else -1
        for e, c in self.terms.items():
            if e != 0:
                # d/drho = (sign/(2s)) d/ds
                out[e - 2] = c * Fraction(e * sign, 2)
        return CoeffFn(out, self.param)

    # -- evaluation / conversion -------------------------------------------

    def eval(self, s_value) -> QScalar:
        s_value = QScalar.of(s_value)
        out = QScalar.zero()
        for e, c in self.terms.items():
            out = out + c * (s_value ** e)
        return out

    def substitute_rho(self, param: str) -> "CoeffFn":
        """Reinterpret a PLAIN (polynomial-in-rho) element in an s^2 chart."""
        if self.param != PLAIN:
            raise ValueError("substitute_rho expects a PLAIN element")
        if param == PLAIN:
            return self
        sign = 1 if param == RHO_PLUS else -1
        out: Dict[int, QScalar] = {}
        for e, c in self.terms.items():
            coeff = c if (sign == 1 or e % 2 == 0) else -c
            out[2 * e] = out.get(2 * e, QScalar.zero()) + coeff
        return CoeffFn(out, param)

    def __float__(self):
        raise TypeError("evaluate CoeffFn at an explicit point instead of coercing")

    def __repr__(self):
        if not self.terms:
            return "0"
        var = "rho" if self.param == PLAIN else "s"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"({c})")
            else:
                bits.append(f"({c})*{var}^{e}")
        return " + ".join(bits)


def as_coeff(x, param: str = PLAIN) -> CoeffFn:
    return CoeffFn.of(x, param)
