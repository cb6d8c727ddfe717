import random
from fractions import Fraction

import pytest

from g2trac import linalg, stable_forms as sf
from g2trac.octonions import ImaginaryVector, cross
from g2trac.scalars import QScalar
from g2trac.tensors import AltTensor


def form(dim, degree, entries):
    t = AltTensor.form(dim, degree)
    for idx, c in entries:
        t.set((), tuple(i - 1 for i in idx), QScalar.of(c))
    return t


def beta_eps(eps):
    return form(6, 3, [((1, 3, 5), 1), ((1, 4, 6), eps), ((2, 3, 6), eps), ((2, 4, 5), eps)])


def phi_xi(xi):
    return form(7, 3, [((1, 2, 3), 1), ((1, 4, 5), xi), ((1, 6, 7), xi), ((2, 4, 6), xi),
                       ((2, 5, 7), -xi), ((3, 4, 7), -xi), ((3, 5, 6), -xi)])


NORMAL_FORMS = {
    sf.B1: form(6, 3, [((1, 2, 3), 1), ((4, 5, 6), 1)]),
    sf.B2: beta_eps(-1),
    sf.B3: form(6, 3, [((1, 5, 6), 1), ((2, 6, 4), 1), ((3, 4, 5), 1)]),
    sf.B4: form(6, 3, [((1, 2, 5), 1), ((3, 4, 5), 1)]),
    sf.B5: form(6, 3, [((1, 2, 3), 1)]),
    sf.B6: AltTensor.form(6, 3),
}


@pytest.mark.parametrize("eps", [1, -1])
def test_lambda_of_normal_stable_forms(eps):
    assert sf.lam(beta_eps(eps)) == QScalar(4 * eps)


def test_classification_of_all_six_normal_forms():
    for cls, beta in NORMAL_FORMS.items():
        assert sf.classify6(beta)["class"] == cls


def test_beta4_kernel_by_brute_force():
    beta = NORMAL_FORMS[sf.B4]
    # kernel = vectors whose insertion kills the form, found by enumeration
    count = 0
    for a in range(6):
        vec = [QScalar(1 if i == a else 0) for i in range(6)]
        if beta.interior(vec).is_zero():
            count += 1
    assert count == 1 and sf.classify6(beta)["kernel_dim"] == 1


def random_sl(rng, n):
    A = linalg.eye(n, QScalar(1), QScalar.zero())
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        E = linalg.eye(n, QScalar(1), QScalar.zero())
        E[i][j] = QScalar(Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
        A = linalg.mat_mul(A, E)
    return A


def test_classify6_constant_on_gl_orbits():
    rng = random.Random(13)
    for cls, beta in NORMAL_FORMS.items():
        for _ in range(50):
            A = random_sl(rng, 6)
            assert sf.classify6(beta.pullback(A))["class"] == cls


@pytest.mark.parametrize("eps", [1, -1])
def test_eps_complex_structure_action(eps):
    J, e, vol = sf.eps_complex_from_3form(beta_eps(eps))
    assert e == eps
    for i in (0, 2, 4):
        assert J[i + 1][i] == QScalar(eps)
        assert J[i][i + 1] == QScalar(1)
    J2 = linalg.mat_mul(J, J)
    for i in range(6):
        for j in range(6):
            want = QScalar(eps) if i == j else QScalar.zero()
            assert (J2[i][j] - want).is_zero()
    assert vol.get((), tuple(range(6))) == QScalar(2)


def test_paracomplex_eigenspaces_have_dims_3_3():
    J, eps, _ = sf.eps_complex_from_3form(beta_eps(1))
    assert eps == 1
    for target in (1, -1):
        M = [[J[i][j] - (QScalar(target) if i == j else QScalar.zero())
              for j in range(6)] for i in range(6)]
        assert len(linalg.nullspace(M)) == 3


def test_unstable_input_rejected():
    with pytest.raises(ValueError):
        sf.eps_complex_from_3form(NORMAL_FORMS[sf.B4])


@pytest.mark.parametrize("xi", [1, -1])
def test_metric_from_phi_xi(xi):
    H, vol, cls = sf.metric_from_3form7(phi_xi(xi))
    assert cls == (sf.DEFINITE if xi == 1 else sf.SPLIT)
    M = H.as_matrix()
    for i in range(7):
        for j in range(7):
            want = QScalar(1 if i < 3 else xi) if i == j else QScalar.zero()
            assert (M[i][j] - want).is_zero()
    assert vol.get((), tuple(range(7))) == QScalar(1)


def test_phi_norm_is_42():
    for xi in (1, -1):
        phi = phi_xi(xi)
        H, _, _ = sf.metric_from_3form7(phi)
        hinv = linalg.inverse(H.as_matrix())
        from g2trac.stable_forms import _phi_norm_with
        assert _phi_norm_with(phi, hinv) == QScalar(42)


def test_degenerate_3form_returns_class_not_error():
    phi = form(7, 3, [((1, 2, 3), 1)])
    H, vol, cls = sf.metric_from_3form7(phi)
    assert cls == sf.DEGENERATE and H is None


def test_gl_congruence_of_H():
    rng = random.Random(17)
    for xi in (1, -1):
        phi = phi_xi(xi)
        H0, _, cls0 = sf.metric_from_3form7(phi)
        for _ in range(25):
            A = random_sl(rng, 7)
            HA, _, clsA = sf.metric_from_3form7(phi.pullback(A))
            assert clsA == cls0
            want = linalg.congruence(A, H0.as_matrix())
            got = HA.as_matrix()
            assert all((want[i][j] - got[i][j]).is_zero()
                       for i in range(7) for j in range(7))


@pytest.mark.parametrize("xi", [1, -1])
def test_dictionary_cross_product_from_form(xi):
    table, cls = sf.cross_from_3form7(phi_xi(xi))
    for a in range(1, 8):
        for b in range(1, 8):
            want = cross(ImaginaryVector.basis(a, xi), ImaginaryVector.basis(b, xi)).comps
            for k in range(7):
                got = table.get((k, a - 1, b - 1), QScalar.zero())
                assert (got - want[k]).is_zero()


@pytest.mark.parametrize("xi", [1, -1])
def test_split_and_reassemble_round_trip(xi):
    phi = phi_xi(xi)
    n = [QScalar.zero()] * 6 + [QScalar.one()]
    omega, beta, A = sf.split_by_unit_vector(phi, n)
    assert sf.is_compatible(omega, beta)
    orient = sf.normalized_orientation(omega, beta)
    assert orient is not None
    g, J, eps = sf.hermitian_metric_from_pair(omega, beta, orient)
    assert eps == -xi
    assert g.signature_at(QScalar(1)) == ((6, 0) if xi == 1 else (3, 3))
    alpha = AltTensor.form(7, 1)
    alpha.set((), (6,), QScalar.one())
    rebuilt = sf.assemble_g2_form(alpha, omega, beta)
    assert (rebuilt - phi.pullback(A)).is_zero()


def test_assemble_rejects_incompatible_pair():
    omega = form(6, 2, [((1, 2), 1), ((3, 4), 1), ((5, 6), 1)])
    bad = form(6, 3, [((1, 2, 5), 1), ((1, 3, 5), 1)])
    alpha = AltTensor.form(7, 1)
    alpha.set((), (6,), QScalar.one())
    with pytest.raises(ValueError):
        sf.assemble_g2_form(alpha, omega, bad)


def test_split_rejects_null_vector():
    phi = phi_xi(-1)
    null = [QScalar.one(), QScalar.zero(), QScalar.zero(),
            QScalar.one(), QScalar.zero(), QScalar.zero(), QScalar.zero()]
    with pytest.raises(ValueError):
        sf.split_by_unit_vector(phi, null)


def test_adapted_frame_pair_assembles_to_stable_form():
    # the canonical (omega, nabla omega) pair of an adapted hermitian frame
    for eps in (1, -1):
        omega = form(6, 2, [((1, 2), 1), ((3, 4), 1), ((5, 6), 1)])
        beta = beta_eps(eps)
        assert sf.is_compatible(omega, beta)
        orient = sf.normalized_orientation(omega, beta)
        assert orient is not None
        alpha = AltTensor.form(7, 1)
        alpha.set((), (6,), QScalar.one())
        phi = sf.assemble_g2_form(alpha, omega, beta)
        H, vol, cls = sf.metric_from_3form7(phi)
        assert cls == (sf.SPLIT if eps == 1 else sf.DEFINITE)
        # H = g - eps alpha (x) alpha
        g, J, e2 = sf.hermitian_metric_from_pair(omega, beta, orient)
        M = H.as_matrix()
        for i in range(6):
            for j in range(6):
                assert (M[i][j] - g.get((), (i, j))).is_zero()
            assert M[i][6].is_zero()
        assert (M[6][6] + QScalar(eps)).is_zero()
