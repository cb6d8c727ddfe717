import random
from fractions import Fraction

import pytest
from g2trac import linalg
from g2trac.octonions import (ImaginaryVector, Octonion, cd_multiply, cross,
                              cross_structure_constants, cross_to_volume, dot,
                              dot_from_cross, dot_matrix, jmap, null_filtration,
                              random_null_vector)
from g2trac.scalars import QScalar


def reference_mult_table(xi):
    """The 42 off-diagonal products e_a x e_b of the classical table,
    embedded independently of the algebra code."""
    t = {}

    def put(a, b, c, s):
        t[(a, b)] = (c, s)
        t[(b, a)] = (c, -s)

    put(1, 2, 3, 1); put(1, 3, 2, -1); put(1, 4, 5, 1); put(1, 5, 4, -1)
    put(1, 6, 7, 1); put(1, 7, 6, -1)
    put(2, 3, 1, 1); put(2, 4, 6, 1); put(2, 5, 7, -1); put(2, 6, 4, -1)
    put(2, 7, 5, 1)
    put(3, 4, 7, -1); put(3, 5, 6, -1); put(3, 6, 5, 1); put(3, 7, 4, 1)
    put(4, 5, 1, xi); put(4, 6, 2, xi); put(4, 7, 3, -xi)
    put(5, 6, 3, -xi); put(5, 7, 2, -xi)
    put(6, 7, 1, xi)
    return t


@pytest.mark.parametrize("xi", [1, -1])
def test_multiplication_table_all_42_entries(xi):
    table = reference_mult_table(xi)
    assert len(table) == 42
    for (a, b), (c, s) in table.items():
        got = cross(ImaginaryVector.basis(a, xi), ImaginaryVector.basis(b, xi))
        want = [QScalar.zero()] * 7
        want[c - 1] = QScalar(s)
        assert got.comps == want, (xi, a, b)


@pytest.mark.parametrize("xi", [1, -1])
def test_doubling_product_decomposition(xi):
    # x y = -x.y + x X y on imaginary elements
    rng = random.Random(5)
    for _ in range(25):
        x = ImaginaryVector([rng.randint(-4, 4) for _ in range(7)], xi)
        y = ImaginaryVector([rng.randint(-4, 4) for _ in range(7)], xi)
        prod = cd_multiply(x.to_octonion(), y.to_octonion())
        assert prod.re() == -dot(x, y)
        assert ImaginaryVector.from_octonion(prod.im()) == cross(x, y)


def test_unit_law():
    rng = random.Random(1)
    for xi in (1, -1):
        x = Octonion([rng.randint(-5, 5) for _ in range(8)], xi)
        assert cd_multiply(Octonion.unit(xi), x) == x
        assert cd_multiply(x, Octonion.unit(xi)) == x


def test_xi_mismatch_rejected():
    with pytest.raises(ValueError):
        cd_multiply(Octonion.unit(1), Octonion.unit(-1))


def test_conjugation_antiautomorphism():
    rng = random.Random(2)
    for xi in (1, -1):
        for _ in range(30):
            x = Octonion([rng.randint(-4, 4) for _ in range(8)], xi)
            y = Octonion([rng.randint(-4, 4) for _ in range(8)], xi)
            assert (cd_multiply(x, y).conj() - cd_multiply(y.conj(), x.conj())).is_zero()


def test_alternativity_200_pairs():
    rng = random.Random(3)
    for xi in (1, -1):
        for _ in range(100):
            x = Octonion([rng.randint(-6, 6) for _ in range(8)], xi)
            y = Octonion([rng.randint(-6, 6) for _ in range(8)], xi)
            assert (cd_multiply(cd_multiply(x, x), y)
                    - cd_multiply(x, cd_multiply(x, y))).is_zero()


def test_cross_examples():
    e = lambda i, xi=-1: ImaginaryVector.basis(i, xi)
    assert cross(e(1), e(1)).is_zero()
    got = cross(e(1), e(2))
    assert got == e(3)
    assert dot(e(1), e(2)).is_zero()
    # e4 x e5 = xi e1
    assert cross(e(4), e(5)) == e(1).scale(QScalar(-1))
    assert cross(e(4, 1), e(5, 1)) == e(1, 1)


def test_cross_compatibility_and_lagrange():
    rng = random.Random(4)
    for xi in (1, -1):
        for _ in range(60):
            x = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            y = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            c = cross(x, y)
            assert dot(c, x).is_zero()
            lhs = dot(c, c)
            rhs = dot(x, x) * dot(y, y) - dot(x, y) * dot(x, y)
            assert lhs == rhs


def test_table_routes_agree_with_doubling_product():
    # dual route: the cached-table cross/dot against -Im(x ybar)/Re(x ybar)
    from g2trac.octonions import cross_cd, dot_cd
    rng = random.Random(77)
    for xi in (1, -1):
        for _ in range(40):
            x = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            y = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            assert cross(x, y) == cross_cd(x, y)
            assert dot(x, y) == dot_cd(x, y)


def test_dot_from_cross_recovers_bilinear_form():
    rng = random.Random(6)
    for xi in (1, -1):
        for _ in range(15):
            x = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            y = ImaginaryVector([rng.randint(-5, 5) for _ in range(7)], xi)
            assert dot_from_cross(x, y) == dot(x, y)


def test_jmap_examples():
    e = lambda i: ImaginaryVector.basis(i, -1)
    J = jmap(e(1))
    col = [J[r][1] for r in range(7)]  # J_{e1}(e2) = -e1 x e2 = -e3
    assert col[2] == QScalar(-1) and sum(1 for v in col if not v.is_zero()) == 1
    x = ImaginaryVector([1, 2, 0, -1, 3, 0, 2], -1)
    Jx = jmap(x)
    assert all(v.is_zero() for v in linalg.mat_vec(Jx, x.comps))


def test_jmap_squared_identity():
    rng = random.Random(8)
    for xi in (1, -1):
        for _ in range(20):
            x = ImaginaryVector([rng.randint(-4, 4) for _ in range(7)], xi)
            y = ImaginaryVector([rng.randint(-4, 4) for _ in range(7)], xi)
            J = jmap(x)
            J2y = linalg.mat_vec(J, linalg.mat_vec(J, y.comps))
            want = [(-dot(x, x)) * c + dot(x, y) * d for c, d in zip(y.comps, x.comps)]
            assert all((a - b).is_zero() for a, b in zip(J2y, want))


def test_unit_vector_gives_eps_complex_structure_on_orthocomplement():
    # x = e4 in the split algebra: x.x = -1, so eps = +1 and J_x^2 = id there
    x = ImaginaryVector.basis(4, -1)
    assert dot(x, x) == QScalar(-1)
    J = jmap(x)
    G = dot_matrix(-1)
    perp = linalg.nullspace([linalg.mat_vec(G, x.comps)])
    for v in perp:
        J2v = linalg.mat_vec(J, linalg.mat_vec(J, v))
        assert all((a - b).is_zero() for a, b in zip(J2v, v))


def test_null_filtration_100_random():
    rng = random.Random(9)
    for _ in range(100):
        x = random_null_vector(rng)
        f = null_filtration(x)
        assert f.dims() == (1, 3, 4, 6)
        assert f.kernel_isotropic()
        assert f.chain_ok()
        assert f.mapping_ok()


def test_null_filtration_preconditions():
    with pytest.raises(ValueError):
        null_filtration(ImaginaryVector.basis(1, -1))  # non-null
    with pytest.raises(ValueError):
        null_filtration(ImaginaryVector([0] * 7, -1))  # zero
    with pytest.raises(ValueError):
        null_filtration(ImaginaryVector.basis(1, 1))   # definite algebra


def test_volume_form_sign_and_frozen_ratio():
    # positive orientation for both algebras; the exact multiple of
    # e^{1..7} is a recorded regression value
    for xi in (1, -1):
        coeff = cross_to_volume(xi)
        assert coeff.sign() == 1
        assert coeff == QScalar(Fraction(1, 210))


def test_structure_constants_sparsity():
    t = cross_structure_constants(-1)
    assert len(t) == 42
