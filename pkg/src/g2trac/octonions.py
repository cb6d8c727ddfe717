"""(Split) octonions by doubling quaternions, and the 7-dim cross product.

xi = +1 selects the definite algebra, xi = -1 the split one.  Imaginary
basis conventions are tied to the classical multiplication table whose
quadratic form is diag(1,1,1,xi,xi,xi,xi); the doubling construction is
mapped onto that basis once and for all in _CD_BASIS below.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from . import linalg
from .scalars import QScalar


class Quaternion:
    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w, x, y, z):
        self.w, self.x, self.y, self.z = (QScalar.of(t) for t in (w, x, y, z))

    def __add__(self, o):
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o):
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, o):
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def is_zero(self):
        return all(t.is_zero() for t in (self.w, self.x, self.y, self.z))


_Q_ZERO = Quaternion(0, 0, 0, 0)

# imaginary basis element -> (pair index 0|1, quaternion component, sign)
# chosen so the doubled product reproduces the classical table for both xi
_CD_BASIS = {
    1: (0, "x", 1),
    2: (0, "y", 1),
    3: (0, "z", 1),
    4: (1, "w", -1),
    5: (1, "x", 1),
    6: (1, "y", 1),
    7: (1, "z", -1),
}


class Octonion:
    """Eight components on the basis (1, e1..e7) plus the algebra flag xi."""

    __slots__ = ("comps", "xi")

    def __init__(self, comps: Sequence, xi: int = -1):
        if xi not in (1, -1):
            raise ValueError("xi must be +1 or -1")
        comps = list(comps)
        if len(comps) != 8:
            raise ValueError("octonion needs 8 components")
        self.comps = [QScalar.of(c) for c in comps]
        self.xi = xi

    @staticmethod
    def unit(xi: int = -1) -> "Octonion":
        return Octonion([1, 0, 0, 0, 0, 0, 0, 0], xi)

    @staticmethod
    def basis(i: int, xi: int = -1) -> "Octonion":
        comps = [0] * 8
        comps[i] = 1
        return Octonion(comps, xi)

    def _check(self, other: "Octonion"):
        if self.xi != other.xi:
            raise ValueError("mixing definite and split octonions")

    def __add__(self, o):
        self._check(o)
        return Octonion([a + b for a, b in zip(self.comps, o.comps)], self.xi)

    def __sub__(self, o):
        self._check(o)
        return Octonion([a - b for a, b in zip(self.comps, o.comps)], self.xi)

    def __neg__(self):
        return Octonion([-a for a in self.comps], self.xi)

    def scale(self, c):
        c = QScalar.of(c)
        return Octonion([a * c for a in self.comps], self.xi)

    def __eq__(self, o):
        if not isinstance(o, Octonion):
            return NotImplemented
        return self.xi == o.xi and all((a - b).is_zero() for a, b in zip(self.comps, o.comps))

    def is_zero(self):
        return all(a.is_zero() for a in self.comps)

    def _pair(self) -> Tuple[Quaternion, Quaternion]:
        a = [self.comps[0], QScalar.zero(), QScalar.zero(), QScalar.zero()]
        b = [QScalar.zero()] * 4
        slot = {"w": 0, "x": 1, "y": 2, "z": 3}
        for i in range(1, 8):
            half, comp, sign = _CD_BASIS[i]
            v = self.comps[i] if sign > 0 else -self.comps[i]
            if half == 0:
                a[slot[comp]] = a[slot[comp]] + v
            else:
                b[slot[comp]] = b[slot[comp]] + v
        return Quaternion(*a), Quaternion(*b)

    @staticmethod
    def _from_pair(a: Quaternion, b: Quaternion, xi: int) -> "Octonion":
        comps = [a.w] + [QScalar.zero()] * 7
        slot = {"w": 0, "x": 1, "y": 2, "z": 3}
        bl = [b.w, b.x, b.y, b.z]
        al = [a.w, a.x, a.y, a.z]
        for i in range(1, 8):
            half, comp, sign = _CD_BASIS[i]
            src = al[slot[comp]] if half == 0 else bl[slot[comp]]
            comps[i] = src if sign > 0 else -src
        return Octonion(comps, xi)

    def __mul__(self, o: "Octonion") -> "Octonion":
        """Doubled product (a,b)(c,d) = (ac -+ d b*, a* d + c b); -+ is -
        for the definite algebra and + for the split one."""
        self._check(o)
        a, b = self._pair()
        c, d = o._pair()
        t = d * b.conj()
        first = a * c - t if self.xi == 1 else a * c + t
        second = a.conj() * d + c * b
        return Octonion._from_pair(first, second, self.xi)

    def conj(self) -> "Octonion":
        return Octonion([self.comps[0]] + [-c for c in self.comps[1:]], self.xi)

    def re(self) -> QScalar:
        return self.comps[0]

    def im(self) -> "Octonion":
        return Octonion([QScalar.zero()] + self.comps[1:], self.xi)

    def __repr__(self):
        tags = ["1"] + [f"e{i}" for i in range(1, 8)]
        bits = [f"({c})*{t}" for c, t in zip(self.comps, tags) if not c.is_zero()]
        return " + ".join(bits) if bits else "0"


def cd_multiply(x: Octonion, y: Octonion) -> Octonion:
    return x * y


class ImaginaryVector:
    """Element of the 7-dimensional imaginary part, components on e1..e7."""

    __slots__ = ("comps", "xi")

    def __init__(self, comps: Sequence, xi: int = -1):
        comps = list(comps)
        if len(comps) != 7:
            raise ValueError("imaginary vector needs 7 components")
        self.comps = [QScalar.of(c) for c in comps]
        self.xi = xi

    @staticmethod
    def basis(i: int, xi: int = -1) -> "ImaginaryVector":
        comps = [0] * 7
        comps[i - 1] = 1
        return ImaginaryVector(comps, xi)

    def to_octonion(self) -> Octonion:
        return Octonion([QScalar.zero()] + self.comps, self.xi)

    @staticmethod
    def from_octonion(o: Octonion) -> "ImaginaryVector":
        return ImaginaryVector(o.comps[1:], o.xi)

    def _check(self, other: "ImaginaryVector"):
        if self.xi != other.xi:
            raise ValueError("mixing definite and split imaginary octonions")

    def __add__(self, o):
        self._check(o)
        return ImaginaryVector([a + b for a, b in zip(self.comps, o.comps)], self.xi)

    def __sub__(self, o):
        self._check(o)
        return ImaginaryVector([a - b for a, b in zip(self.comps, o.comps)], self.xi)

    def __neg__(self):
        return ImaginaryVector([-a for a in self.comps], self.xi)

    def scale(self, c):
        c = QScalar.of(c)
        return ImaginaryVector([a * c for a in self.comps], self.xi)

    def __eq__(self, o):
        if not isinstance(o, ImaginaryVector):
            return NotImplemented
        return self.xi == o.xi and all((a - b).is_zero() for a, b in zip(self.comps, o.comps))

    def is_zero(self):
        return all(a.is_zero() for a in self.comps)


def dot_cd(x: ImaginaryVector, y: ImaginaryVector) -> QScalar:
    """x . y = Re(x ybar), evaluated through the doubling product."""
    x._check(y)
    return (x.to_octonion() * y.to_octonion().conj()).re()


def cross_cd(x: ImaginaryVector, y: ImaginaryVector) -> ImaginaryVector:
    """x X y = -Im(x ybar) = (xy - yx)/2, through the doubling product."""
    x._check(y)
    prod = x.to_octonion() * y.to_octonion().conj()
    return ImaginaryVector.from_octonion(-prod.im())


def dot(x: ImaginaryVector, y: ImaginaryVector) -> QScalar:
    """x . y through the diagonal form the doubling product induces.

    Agrees with dot_cd everywhere (tested); kept separate so bulk sweeps
    do not pay the full doubling product per evaluation."""
    x._check(y)
    acc = QScalar.zero()
    for i in range(7):
        xi_c, yi_c = x.comps[i], y.comps[i]
        if xi_c.is_zero() or yi_c.is_zero():
            continue
        t = xi_c * yi_c
        acc = acc + (t if (i < 3 or x.xi == 1) else -t)
    return acc


def cross(x: ImaginaryVector, y: ImaginaryVector) -> ImaginaryVector:
    """x X y through the cached structure table built from the doubling
    product (bilinearity makes the two routes identical; tested)."""
    x._check(y)
    signs = _sign_table(x.xi)
    out = [QScalar.zero()] * 7
    for (k, a, b), s in signs.items():
        xa = x.comps[a]
        if xa.is_zero():
            continue
        yb = y.comps[b]
        if yb.is_zero():
            continue
        t = xa * yb
        out[k] = out[k] + t if s > 0 else out[k] - t
    return ImaginaryVector(out, x.xi)


def dot_matrix(xi: int):
    """Gram matrix of the imaginary inner product: diag(1,1,1,xi,xi,xi,xi)."""
    out = [[QScalar.zero() for _ in range(7)] for _ in range(7)]
    for i in range(7):
        out[i][i] = QScalar.of(1 if i < 3 else xi)
    return out


def jmap(x: ImaginaryVector):
    """Matrix of y -> -x X y on the basis e1..e7."""
    table = _structure_table(x.xi)
    out = [[QScalar.zero() for _ in range(7)] for _ in range(7)]
    for (k, a, b), v in table.items():
        xa = x.comps[a]
        if not xa.is_zero():
            out[k][b] = out[k][b] - xa * v
    return out


def dot_from_cross(x: ImaginaryVector, y: ImaginaryVector) -> QScalar:
    """Recover the bilinear form: x . y = -(1/6) tr(x X (y X .))."""
    x._check(y)
    acc = QScalar.zero()
    for j in range(1, 8):
        e = ImaginaryVector.basis(j, x.xi)
        v = cross(x, cross(y, e))
        acc = acc + v.comps[j - 1]
    return acc * QScalar.of(-1) / 6


def cross_structure_constants(xi: int):
    """xup[(k, a, b)] = e_k-component of e_{a+1} X e_{b+1} (0-based keys),
    derived from the doubling product."""
    table = {}
    for a in range(1, 8):
        for b in range(1, 8):
            v = cross_cd(ImaginaryVector.basis(a, xi), ImaginaryVector.basis(b, xi))
            for k in range(7):
                if not v.comps[k].is_zero():
                    table[(k, a - 1, b - 1)] = v.comps[k]
    return table


_STRUCTURE_CACHE = {}
_SIGN_CACHE = {}


def _structure_table(xi: int):
    table = _STRUCTURE_CACHE.get(xi)
    if table is None:
        table = cross_structure_constants(xi)
        _STRUCTURE_CACHE[xi] = table
    return table


def _sign_table(xi: int):
    """Same data with the (+-1)-valued coefficients as machine integers."""
    signs = _SIGN_CACHE.get(xi)
    if signs is None:
        signs = {}
        for key, v in _structure_table(xi).items():
            if v == QScalar.one():
                signs[key] = 1
            elif v == -QScalar.one():
                signs[key] = -1
            else:
                raise RuntimeError("structure constants are not unimodular")
        _SIGN_CACHE[xi] = signs
    return signs


def cross_to_volume(xi: int) -> QScalar:
    """Coefficient on e^{1..7} of (1/42) X_{K[AB} X^K_{CD} X_{EFG]}.

    The sign is reported as computed; the caller decides whether it
    matches the declared positive orientation.
    """
    from itertools import permutations as perms
    from fractions import Fraction
    from .tensors import perm_sign

    G = dot_matrix(xi)
    xup = cross_structure_constants(xi)

    def xlow(k, a, b):
        v = xup.get((k, a, b))
        return QScalar.zero() if v is None else v * G[k][k]

    acc = QScalar.zero()
    for p in perms(range(7)):
        inner = QScalar.zero()
        for k in range(7):
            t1 = xlow(k, p[0], p[1])
            if t1.is_zero():
                continue
            t2 = xup.get((k, p[2], p[3]))
            if t2 is None:
                continue
            inner = inner + t1 * t2
        if inner.is_zero():
            continue
        t3 = xlow(p[4], p[5], p[6])
        if t3.is_zero():
            continue
        v = inner * t3
        acc = acc + (v if perm_sign(p) > 0 else -v)
    return acc * QScalar(Fraction(1, 42 * 5040))


class NullFiltration:
    """Exact filtration <x> < ker J_x < (ker J_x)^perp < <x>^perp for null x."""

    def __init__(self, x: ImaginaryVector):
        if x.xi != -1:
            raise ValueError("null filtration lives in the split imaginary octonions")
        if x.is_zero():
            raise ValueError("filtration needs a nonzero vector")
        if not dot(x, x).is_zero():
            raise ValueError("filtration needs a null vector")
        self.x = x
        J = jmap(x)
        G = dot_matrix(-1)
        self.line = [list(x.comps)]
        self.kernel = linalg.nullspace(J)
        JT = linalg.transpose(J)
        self.image = linalg.row_space(JT)  # column space of J as row vectors
        self.kernel_perp = _perp(self.kernel, G)
        self.line_perp = _perp(self.line, G)

    def dims(self):
        return (len(self.line), len(self.kernel), len(self.kernel_perp), len(self.line_perp))

    def kernel_isotropic(self) -> bool:
        G = dot_matrix(-1)
        for u in self.kernel:
            for v in self.kernel:
                if not linalg.sum_prod(linalg.mat_vec(G, u), v).is_zero():
                    return False
        return True

    def chain_ok(self) -> bool:
        steps = [self.line, self.kernel, self.kernel_perp, self.line_perp]
        for small, big in zip(steps, steps[1:]):
            for v in small:
                if not linalg.subspace_contains(big, v):
                    return False
        return True

    def mapping_ok(self) -> bool:
        """im J = (ker J)^perp, J(<x>^perp) = ker J, J((ker J)^perp) = <x>."""
        J = jmap(self.x)
        if not linalg.same_subspace(self.image, self.kernel_perp):
            return False
        img1 = [linalg.mat_vec(J, v) for v in self.line_perp]
        if not linalg.same_subspace(linalg.row_space(img1), self.kernel):
            return False
        img2 = [linalg.mat_vec(J, v) for v in self.kernel_perp]
        return linalg.same_subspace(linalg.row_space(img2), self.line)


def null_filtration(x: ImaginaryVector) -> NullFiltration:
    return NullFiltration(x)


def _perp(basis: List[list], G) -> List[list]:
    if not basis:
        return [[QScalar.one() if i == j else QScalar.zero() for j in range(7)] for i in range(7)]
    rows = [linalg.mat_vec(G, v) for v in basis]
    return linalg.nullspace(rows)


def random_null_vector(rng) -> ImaginaryVector:
    """Rational point on the split null cone via projection from e1 + e4."""
    base = [QScalar.of(c) for c in (1, 0, 0, 1, 0, 0, 0)]
    G = dot_matrix(-1)
    while True:
        w = [QScalar.of(rng.randint(-9, 9)) for _ in range(7)]
        qw = linalg.sum_prod(linalg.mat_vec(G, w), w)
        if qw.is_zero():
            v = ImaginaryVector(w, -1)
            if not v.is_zero():
                return v
            continue
        bw = linalg.sum_prod(linalg.mat_vec(G, base), w)
        t = (bw * QScalar.of(-2)) / qw
        x = [b + t * ww for b, ww in zip(base, w)]
        v = ImaginaryVector(x, -1)
        if not v.is_zero() and dot(v, v).is_zero():
            return v
