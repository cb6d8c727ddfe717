import random
from fractions import Fraction

import pytest

from g2trac.frames import FrameChart
from g2trac.laurent import CoeffFn, PLAIN
from g2trac.scalars import QScalar
from g2trac.tensors import AltTensor
from g2trac.qm_family import family_chart


def test_flat_chart_curvature_vanishes():
    chart = FrameChart.flat(6, PLAIN, rho_directions=(5,))
    assert chart.curvature().is_zero()
    assert chart.ricci().is_zero()
    assert chart.weyl().is_zero()
    assert chart.is_jacobi() and chart.is_torsion_free() and chart.is_special()


@pytest.fixture(scope="module")
def chart():
    return family_chart(Fraction(1, 2))


def test_family_chart_structure(chart):
    assert chart.is_jacobi()
    assert chart.is_torsion_free()
    assert chart.is_special()


def test_ricci_symmetric(chart):
    ric = chart.ricci()
    for a in range(6):
        for b in range(6):
            assert (ric.get((), (a, b)) - ric.get((), (b, a))).is_zero()


def test_weyl_totally_tracefree(chart):
    t1, t2 = chart.weyl_trace_defects()
    assert all(v.is_zero() for v in t1 + t2)


def test_curvature_reconstruction(chart):
    # R = W + delta P - delta P is exact by construction; verify independently
    R = chart.curvature()
    W = chart.weyl()
    P = chart.schouten()
    for a in range(6):
        for b in range(6):
            for c in range(6):
                for d in range(6):
                    want = W.get((c,), (a, b, d))
                    if c == a:
                        want = want + P.get((), (b, d))
                    if c == b:
                        want = want - P.get((), (a, d))
                    assert (R.get((c,), (a, b, d)) - want).is_zero()


def test_schouten_transformation_under_scale_change(chart):
    # P-hat = P - nabla Upsilon + Upsilon (x) Upsilon for exact Upsilon = df
    f = CoeffFn({2: QScalar(Fraction(1, 3)), 1: QScalar(-2)}, chart.param)
    ups = chart.exact_upsilon(f)
    hat = chart.change_scale(ups)
    assert hat.is_torsion_free()
    P = chart.schouten()
    Phat = hat.schouten()
    dU = [chart.cov_deriv(_one_form(chart, ups), a) for a in range(6)]
    for a in range(6):
        for b in range(6):
            want = P.get((), (a, b)) - dU[a].get((), (b,)) + ups[a] * ups[b]
            assert (Phat.get((), (a, b)) - want).is_zero()


def test_weyl_is_scale_invariant(chart):
    f = CoeffFn({1: QScalar(Fraction(2, 5))}, chart.param)
    hat = chart.change_scale(chart.exact_upsilon(f))
    W = chart.weyl()
    What = hat.weyl()
    for a in range(6):
        for b in range(6):
            for c in range(6):
                for d in range(6):
                    assert (W.get((c,), (a, b, d)) - What.get((c,), (a, b, d))).is_zero()


def _one_form(chart, comps):
    t = AltTensor(chart.dim, 0, 1, "none", chart.zero())
    for i, v in enumerate(comps):
        if not v.is_zero():
            t.set((), (i,), v)
    return t


def test_exterior_derivative_squares_to_zero(chart):
    rng = random.Random(23)
    form = AltTensor.form(6, 2, chart.zero())
    rho = chart.rho()
    for idx in ((0, 1), (1, 4), (2, 5), (3, 4)):
        form.set((), idx, chart.lift(QScalar(rng.randint(-3, 3))) * rho
                 + chart.lift(QScalar(rng.randint(-3, 3))))
    dd = chart.d_exterior(chart.d_exterior(form))
    assert dd.is_zero()


def test_levi_civita_is_metric_and_torsion_free(chart):
    g = AltTensor(6, 0, 2, "sym", chart.zero())
    g.set((), (0, 3), chart.one())
    g.set((), (1, 4), chart.one())
    g.set((), (2, 2), chart.lift(-1))
    g.set((), (5, 5), chart.one())
    g.set((), (4, 4), chart.lift(QScalar(2)))
    lc = chart.levi_civita(g)
    assert lc.is_torsion_free()
    for a in range(6):
        assert lc.cov_deriv(g, a).is_zero()
