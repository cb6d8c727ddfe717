"""Stability of 3-forms in dimensions 6 and 7, and the attached structures.

Dimension 6: orbit classification of 3-forms into the six normal-form
classes, and the induced (para-)complex structure for the two stable
classes.  Dimension 7: the induced symmetric bilinear form, signature
typing, and the dictionary between stable 3-forms and cross products.
Compatible pairs glue the two pictures together.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List

from . import linalg
from .scalars import DegenerateError, QScalar
from .tensors import SYM, AltTensor

B1, B2, B3, B4, B5, B6 = "beta1", "beta2", "beta3", "beta4", "beta5", "beta6"
DEFINITE, SPLIT, DEGENERATE = "definite", "split", "degenerate"


class ClassificationError(RuntimeError):
    """Witness invariants landed outside the classification; internal error."""


# -- dimension 6 -------------------------------------------------------------


def _vol_vector_of_5form(gamma: AltTensor) -> List[QScalar]:
    """v with gamma = v . e^{1..6}: v^a = (-1)^(a) * gamma_{complement}."""
    out = []
    for a in range(6):
        rest = tuple(i for i in range(6) if i != a)
        sign = 1 if a % 2 == 0 else -1
        out.append(gamma.get((), rest) * QScalar.of(sign))
    return out


def jtilde_matrix(beta: AltTensor):
    """Matrix of v -> kappa((v . beta) ^ beta), with the e^{1..6} factor dropped."""
    if beta.dim != 6 or beta.n_down != 3 or beta.n_up:
        raise ValueError("expected a 3-form on a 6-dimensional space")
    cols = []
    for a in range(6):
        vec = [QScalar.one() if i == a else QScalar.zero() for i in range(6)]
        gamma = beta.interior(vec).wedge(beta)
        cols.append(_vol_vector_of_5form(gamma))
    return [[cols[j][i] for j in range(6)] for i in range(6)]


def lam(beta: AltTensor) -> QScalar:
    """lambda(beta) = (1/6) tr(Jtilde^2), as the (e^{1..6})^2 coefficient."""
    J = jtilde_matrix(beta)
    J2 = linalg.mat_mul(J, J)
    tr = J2[0][0]
    for i in range(1, 6):
        tr = tr + J2[i][i]
    return tr * QScalar(Fraction(1, 6))


def kernel_dim(beta: AltTensor) -> int:
    rows = []
    for a in range(6):
        vec = [QScalar.one() if i == a else QScalar.zero() for i in range(6)]
        two = beta.interior(vec)
        rows.append([two.get((), (i, j)) for i, j in combinations(range(6), 2)])
    return 6 - linalg.rank(rows)


def classify6(beta: AltTensor) -> dict:
    """Orbit class of a 3-form in dimension 6 with its witness invariants.

    Stable forms are nondegenerate (their insertion kernel is zero), so
    the kernel is only computed on the lambda = 0 strata where it is the
    discriminating witness.
    """
    l = lam(beta)
    s = l.sign()
    if s > 0:
        return {"class": B1, "lambda": l, "kernel_dim": 0}
    if s < 0:
        return {"class": B2, "lambda": l, "kernel_dim": 0}
    k = kernel_dim(beta)
    if k == 0:
        cls = B3
    elif k == 1:
        cls = B4
    elif k == 3:
        cls = B5
    elif k == 6:
        cls = B6
    else:
        raise ClassificationError(
            f"lambda = 0 with kernel dimension {k}; no such orbit exists")
    return {"class": cls, "lambda": l, "kernel_dim": k}


def eps_complex_from_3form(beta: AltTensor, orientation: int = 1):
    """(J, eps, vol) for a stable 3-form; J^2 = eps id exactly.

    orientation fixes the positive square root used for the volume
    normalization.  Unstable input raises ValueError.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    l = lam(beta)
    s = l.sign()
    if s == 0:
        raise ValueError("3-form is not stable (lambda vanishes)")
    eps = 1 if s > 0 else -1
    vol_coeff = (l * QScalar.of(eps)).sqrt()
    if orientation < 0:
        vol_coeff = -vol_coeff
    Jt = jtilde_matrix(beta)
    inv = vol_coeff.inverse()
    J = [[x * inv for x in row] for row in Jt]
    # defining identity
    J2 = linalg.mat_mul(J, J)
    for i in range(6):
        for j in range(6):
            want = QScalar.of(eps) if i == j else QScalar.zero()
            if not (J2[i][j] - want).is_zero():
                raise ClassificationError("induced endomorphism fails J^2 = eps id")
    if eps == 1:
        for target in (1, -1):
            M = [[J[i][j] - (QScalar.of(target) if i == j else QScalar.zero())
                  for j in range(6)] for i in range(6)]
            if len(linalg.nullspace(M)) != 3:
                raise ClassificationError("paracomplex eigenspaces are not (3,3)")
    vol = AltTensor.form(6, 6)
    vol.set((), tuple(range(6)), vol_coeff)
    return J, eps, vol


# -- dimension 7 -------------------------------------------------------------


def htilde_matrix(phi: AltTensor):
    """Matrix of (1/6)(X . phi)^(Y . phi)^phi, e^{1..7} coefficient."""
    if phi.dim != 7 or phi.n_down != 3 or phi.n_up:
        raise ValueError("expected a 3-form on a 7-dimensional space")
    basis = []
    for a in range(7):
        vec = [QScalar.one() if i == a else QScalar.zero() for i in range(7)]
        basis.append(phi.interior(vec))
    out = [[QScalar.zero()] * 7 for _ in range(7)]
    sixth = QScalar(Fraction(1, 6))
    for i in range(7):
        for j in range(i, 7):
            w = basis[i].wedge(basis[j]).wedge(phi)
            val = w.get((), tuple(range(7))) * sixth
            out[i][j] = val
            out[j][i] = val
    return out


def _phi_norm_with(phi: AltTensor, hinv) -> QScalar:
    """phi_{ABC} phi_{DEF} h^{AD} h^{BE} h^{CF}, all indices raised with hinv.

    Staged: the three raisings are applied one slot at a time, so the
    cost stays cubic in the dimension."""
    n = phi.dim
    zero = phi.zero
    raised = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = phi.get((), (a, b, c))
                if not v.is_zero():
                    raised[a][b][c] = v
    for slot in range(3):
        new = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    v = raised[a][b][c]
                    if v.is_zero():
                        continue
                    idx = (a, b, c)[slot]
                    for d in range(n):
                        w = hinv[idx][d]
                        if w.is_zero():
                            continue
                        key = list((a, b, c))
                        key[slot] = d
                        ka, kb, kc = key
                        new[ka][kb][kc] = new[ka][kb][kc] + v * w
        raised = new
    acc = zero
    for (_, (a, b, c)), v in phi.comps.items():
        from itertools import permutations
        for p in permutations((a, b, c)):
            sv = v if perm_sign_rel((a, b, c), p) > 0 else -v
            t = raised[p[0]][p[1]][p[2]]
            if not t.is_zero():
                acc = acc + sv * t
    return acc


def perm_sign_rel(base, perm):
    from .tensors import perm_sign_rel as psr
    return psr(base, perm)


def metric_from_3form7(phi: AltTensor):
    """(H, vol, class) for a 7-dimensional 3-form.

    Degenerate input returns class 'degenerate' (H and vol are None).
    The scale of H is pinned by phi.phi = 42 under H-raising; resolving
    that normalization needs a cube root, taken exactly when it lies in
    the coefficient field.
    """
    ht = htilde_matrix(phi)
    try:
        hinv = linalg.inverse(ht)
    except DegenerateError:
        return None, None, DEGENERATE
    s = _phi_norm_with(phi, hinv)
    c = (s / 42).cbrt()
    H = [[x * c for x in row] for row in ht]
    sig = linalg.signature(H)
    if sig == (7, 0):
        cls = DEFINITE
    elif sig == (3, 4):
        cls = SPLIT
    else:
        raise ClassificationError(f"stable 3-form produced signature {sig}")
    vol_coeff = c.inverse()
    vol = AltTensor.form(7, 7)
    vol.set((), tuple(range(7)), vol_coeff)
    Ht = AltTensor.from_matrix(H, 7, 0, SYM)
    return Ht, vol, cls


def cross_from_3form7(phi: AltTensor):
    """Structure constants x^c_{ab} = H^{ck} phi_{kab}; the form-to-product
    side of the dictionary."""
    H, _, cls = metric_from_3form7(phi)
    if cls == DEGENERATE:
        raise DegenerateError("cannot build a cross product from a degenerate 3-form")
    hinv = linalg.inverse(H.as_matrix())
    table = {}
    for a in range(7):
        for b in range(7):
            for c in range(7):
                acc = QScalar.zero()
                for k in range(7):
                    w = hinv[c][k]
                    if w.is_zero():
                        continue
                    acc = acc + w * phi.get((), (k, a, b))
                if not acc.is_zero():
                    table[(c, a, b)] = acc
    return table, cls


# -- compatible pairs ---------------------------------------------------------


def pullback_through_endo(form: AltTensor, J) -> AltTensor:
    """J^* form, i.e. form(J., J., ...)."""
    return form.pullback(J)


def is_compatible(omega: AltTensor, beta: AltTensor) -> bool:
    return omega.wedge(beta).is_zero()


def is_normalized(omega: AltTensor, beta: AltTensor, orientation: int = 1) -> bool:
    J, eps, _ = eps_complex_from_3form(beta, orientation)
    lhs = pullback_through_endo(beta, J).wedge(beta)
    rhs = omega.wedge(omega).wedge(omega).scale(QScalar(Fraction(2, 3)))
    return (lhs - rhs).is_zero()


def normalized_orientation(omega: AltTensor, beta: AltTensor):
    """The orientation for which the pair is normalized, or None."""
    for orientation in (1, -1):
        if is_normalized(omega, beta, orientation):
            return orientation
    return None


def hermitian_metric_from_pair(omega: AltTensor, beta: AltTensor, orientation: int = 1):
    """g = eps omega(., J.) for the eps-complex structure J of beta."""
    J, eps, _ = eps_complex_from_3form(beta, orientation)
    g = AltTensor(6, 0, 2, SYM)
    for i in range(6):
        for j in range(i, 6):
            acc = QScalar.zero()
            for k in range(6):
                acc = acc + omega.get((), (i, k)) * J[k][j]
            acc = acc * QScalar.of(eps)
            if not acc.is_zero():
                g.set((), (i, j), acc)
    # symmetry of g is equivalent to compatibility; verify
    for i in range(6):
        for j in range(6):
            a = QScalar.zero()
            b = QScalar.zero()
            for k in range(6):
                a = a + omega.get((), (i, k)) * J[k][j]
                b = b + omega.get((), (j, k)) * J[k][i]
            if not (a - b).is_zero():
                raise ValueError("omega(., J.) is not symmetric; pair is incompatible")
    return g, J, eps


def assemble_g2_form(alpha: AltTensor, omega: AltTensor, beta: AltTensor) -> AltTensor:
    """Phi = alpha ^ omega + beta on the 7-dim extension.

    alpha is a 7-dim 1-form annihilating the 6-dim block; omega, beta are
    6-dim forms (compatible and normalized for one of the two
    orientations, verified).  Violations raise ValueError naming the
    failed identity.
    """
    if not is_compatible(omega, beta):
        raise ValueError("pair violates compatibility: omega ^ beta != 0")
    if normalized_orientation(omega, beta) is None:
        raise ValueError("pair violates normalization: J*beta ^ beta != (2/3) omega^3")
    omega7 = _extend_form(omega)
    beta7 = _extend_form(beta)
    return alpha.wedge(omega7) + beta7


def _extend_form(form: AltTensor) -> AltTensor:
    out = AltTensor.form(7, form.n_down)
    for (_, idx), v in form.comps.items():
        out.set((), idx, v)
    return out


def _restrict_form(form: AltTensor) -> AltTensor:
    out = AltTensor.form(6, form.n_down)
    for (_, idx), v in form.comps.items():
        if all(i < 6 for i in idx):
            out.set((), idx, v)
    return out


def split_by_unit_vector(phi: AltTensor, n: List[QScalar]):
    """(omega, beta) = (iota^*(n . Phi), iota^* Phi) for a unit/pseudo-unit n.

    n must satisfy H(n,n) = +-1 exactly; the complement is realized by an
    exact H-orthogonal change of basis sending n to the last basis leg.
    """
    H, _, cls = metric_from_3form7(phi)
    if cls == DEGENERATE:
        raise DegenerateError("split_by_unit_vector needs a stable 3-form")
    Hm = H.as_matrix()
    nn = linalg.sum_prod(linalg.mat_vec(Hm, n), n)
    if not (nn - QScalar.one()).is_zero() and not (nn + QScalar.one()).is_zero():
        raise ValueError("H(n, n) must be exactly +1 or -1")
    # basis of <n>^perp
    rows = [linalg.mat_vec(Hm, n)]
    comp = linalg.nullspace(rows)
    if len(comp) != 6:
        raise DegenerateError("orthocomplement of n is not 6-dimensional")
    # change of basis: columns = complement basis then n
    A = [[comp[j][i] for j in range(6)] + [n[i]] for i in range(7)]
    phi_ad = phi.pullback(A)
    two = phi_ad.interior([QScalar.zero()] * 6 + [QScalar.one()])
    omega = _restrict_form(two)
    beta = _restrict_form(phi_ad)
    return omega, beta, A
