"""Exact dense linear algebra over QScalar and over the Laurent ring.

Matrices are plain lists of lists.  Field routines (rank, kernel,
inverse, Sylvester signature) work over QScalar; the Laurent routines
avoid division except through exact quotients, so metric inverses stay
inside the coefficient ring whenever the geometry permits.
"""

from __future__ import annotations

from itertools import permutations
from typing import List, Sequence

from .laurent import CoeffFn
from .scalars import DegenerateError, QScalar

Mat = List[List]


def eye(n, one, zero) -> Mat:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Mat, B: Mat) -> Mat:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A: Mat, v: Sequence) -> list:
    return [sum_prod(row, v) for row in A]


def sum_prod(row, v):
    acc = row[0] * v[0]
    for i in range(1, len(row)):
        acc = acc + row[i] * v[i]
    return acc


def transpose(A: Mat) -> Mat:
    return [list(col) for col in zip(*A)]


def congruence(A: Mat, g: Mat) -> Mat:
    """A^T g A."""
    return mat_mul(transpose(A), mat_mul(g, A))


# -- field routines (QScalar entries) ------------------------------------


def rref(A: Mat):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [row[:] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if not R[i][c].is_zero()), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [R[i][j] - f * R[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A: Mat) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Mat) -> List[list]:
    """Basis of the right kernel, entries QScalar."""
    if not A:
        return []
    cols = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [QScalar.zero()] * cols
        v[fc] = QScalar.one()
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def solve(A: Mat, b: Sequence):
    """One exact solution of A x = b, or None if inconsistent."""
    n = len(A)
    cols = len(A[0])
    aug = [A[i][:] + [b[i]] for i in range(n)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [QScalar.zero()] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def inverse(A: Mat) -> Mat:
    n = len(A)
    aug = [A[i][:] + [QScalar.one() if i == j else QScalar.zero() for j in range(n)]
           for i in range(n)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DegenerateError("singular matrix")
    return [row[n:] for row in R]


def row_space(A: Mat) -> List[list]:
    R, pivots = rref(A)
    return [R[i] for i in range(len(pivots))]


def same_subspace(B1: List[list], B2: List[list]) -> bool:
    """Do two lists of row vectors span the same subspace (exactly)?"""
    if not B1 and not B2:
        return True
    if bool(B1) != bool(B2):
        return False
    r1 = rank(B1)
    r2 = rank(B2)
    return r1 == r2 == rank(B1 + B2)


def subspace_contains(B: List[list], v: list) -> bool:
    return rank(B + [v]) == rank(B) if B else all(x.is_zero() for x in v)


def signature(G: Mat):
    """Sylvester signature (p, q) of an exact symmetric QScalar matrix.

    Symmetric reduction with exact pivot signs; an off-diagonal
    hyperbolic pivot contributes (1, 1).  A nonzero matrix whose active
    block is identically zero below full elimination means a degenerate
    form and raises DegenerateError.
    """
    n = len(G)
    M = [row[:] for row in G]
    active = list(range(n))
    p = q = 0
    while active:
        piv = next((i for i in active if not M[i][i].is_zero()), None)
        if piv is not None:
            s = M[piv][piv].sign()
            if s > 0:
                p += 1
            else:
                q += 1
            inv = M[piv][piv].inverse()
            rest = [i for i in active if i != piv]
            col = {i: M[i][piv] for i in rest}
            for i in rest:
                fi = col[i] * inv
                for j in rest:
                    M[i][j] = M[i][j] - fi * col[j]
            active = rest
            continue
        pair = None
        for ii, i in enumerate(active):
            for j in active[ii + 1:]:
                if not M[i][j].is_zero():
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            raise DegenerateError("degenerate form: zero block in symmetric reduction")
        i, j = pair
        # hyperbolic 2x2 block: signature (1, 1); eliminate both rows/cols
        p += 1
        q += 1
        b = M[i][j]
        rest = [k for k in active if k not in (i, j)]
        binv = b.inverse()
        ci = {k: M[k][i] for k in rest}
        cj = {k: M[k][j] for k in rest}
        for k in rest:
            for l in rest:
                M[k][l] = M[k][l] - (ci[k] * cj[l] + cj[k] * ci[l]) * binv
        active = rest
    return p, q


# -- Laurent-entry routines ----------------------------------------------


def det_perm(A: Mat):
    """Determinant by signed permutation expansion (n <= 7 in practice)."""
    n = len(A)
    idx = list(range(n))
    total = None
    for perm in permutations(idx):
        inv = _parity(perm)
        term = A[0][perm[0]]
        for i in range(1, n):
            term = term * A[i][perm[i]]
        if inv < 0:
            term = -term
        total = term if total is None else total + term
    return total


def _parity(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def minor(A: Mat, i: int, j: int) -> Mat:
    return [[A[r][c] for c in range(len(A)) if c != j] for r in range(len(A)) if r != i]


def inverse_laurent(A: Mat) -> Mat:
    """Inverse of a CoeffFn matrix via adjugate / determinant.

    Succeeds exactly when every adjugate entry is divisible by det in the
    Laurent ring (true whenever the inverse has Laurent entries, e.g. for
    the collar metrics handled here, whose determinants are monomials).
    """
    n = len(A)
    d = det_perm(A)
    if d.is_zero():
        raise DegenerateError("singular matrix over the Laurent ring")
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = det_perm(minor(A, j, i))
            if (i + j) % 2:
                m = -m
            out[i][j] = m / d
    return out


def laurent_matrix_is_zero(A: Mat) -> bool:
    return all(x.is_zero() for row in A for x in row)


def eval_matrix(A: Mat, s_value) -> Mat:
    return [[x.eval(s_value) if isinstance(x, CoeffFn) else x for x in row] for row in A]
