from fractions import Fraction

import pytest

from g2trac import linalg
from g2trac.boundary import (bgg_round_trip_defect, bgg_split, boundary_3form,
                             boundary_connection_checks, conformal_parallel_defect,
                             distribution_checks, extract_distribution, j0_checks,
                             restrict_to_zero_locus)
from g2trac.coordfields import monge_check, parse_monge_polynomial
from g2trac.scalars import QScalar
from g2trac.symmetries import (dilation_negative_control, is_distribution_symmetry,
                               frame_symmetry_kernel_dim, solve_frame_symmetry,
                               symmetry_fields)
from g2trac.tensors import AltTensor


@pytest.fixture(scope="module")
def bd(pkg_half):
    return restrict_to_zero_locus(pkg_half)


def test_conformal_representative(pkg_half, bd):
    g0 = bd.conformal.g0
    assert g0.signature_at(QScalar.zero()) == (2, 3)
    # 2 e1e4 + 2 e2e5 - (e3)^2
    assert g0.get((), (0, 3)) == pkg_half.chart.one()
    assert g0.get((), (1, 4)) == pkg_half.chart.one()
    assert g0.get((), (2, 2)) == pkg_half.chart.lift(-1)
    assert g0.get((), (0, 0)).is_zero()


def test_restriction_needs_zero_locus():
    from g2trac.qm_family import build_model
    with pytest.raises(ValueError):
        restrict_to_zero_locus(build_model(1))


def test_j0_facts(bd):
    checks = j0_checks(bd)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_distribution_three_ways_and_facts(pkg_half, bd):
    dist = extract_distribution(pkg_half, bd)
    assert dist.growth == (2, 3, 5)
    checks = distribution_checks(pkg_half, bd, dist)
    assert all(checks.values()), [k for k, v in checks.items() if not v]
    # D = <E4, E5>, [D,D] = <E3, E4, E5>
    z, o = QScalar.zero(), QScalar.one()
    assert linalg.same_subspace(dist.d_basis, [[z, z, z, o, z], [z, z, z, z, o]])
    assert linalg.same_subspace(dist.bracket_basis,
                                [[z, z, o, z, z], [z, z, z, o, z], [z, z, z, z, o]])


def test_disagreement_raises_internal_error(pkg_half, bd):
    import g2trac.boundary as bmod
    original = bmod.declared_distribution
    bmod.declared_distribution = lambda: [[QScalar.one()] + [QScalar.zero()] * 4]
    try:
        with pytest.raises(RuntimeError):
            extract_distribution(pkg_half, bd)
    finally:
        bmod.declared_distribution = original


def test_boundary_connection_compatibility(pkg_half, bd):
    checks = boundary_connection_checks(pkg_half, bd)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_bgg_round_trip_slotwise(pkg_half, bd):
    defect = bgg_round_trip_defect(pkg_half, bd)
    assert defect.sigma.is_zero()
    assert defect.psi.is_zero()
    assert defect.nu.is_zero()
    assert defect.rho.is_zero()


def test_bgg_of_zero_is_zero(bd):
    zero = AltTensor.form(5, 2, bd.conformal.chart.zero())
    out = bgg_split(bd.conformal, zero)
    assert out.is_zero()


def test_bgg_output_parallel(pkg_half, bd):
    defects = conformal_parallel_defect(pkg_half, boundary_3form(bd), bd)
    assert all(v.is_zero() for v in defects)


def test_boundary_2form_slots(pkg_half, bd):
    from g2trac.scalars import SQRT2
    assert bd.sigma0.get((), (0, 1)) == SQRT2
    assert bd.psi0.get((), (0, 2, 3)) == QScalar(-1)
    assert bd.psi0.get((), (1, 2, 4)) == QScalar(-1)
    assert bd.rho0.get((), (3, 4)) == SQRT2
    assert bd.nu0.get((), (2,)) == QScalar(1)


# -- Monge normal form -----------------------------------------------------


def test_monge_q2_is_235():
    assert monge_check(parse_monge_polynomial("q^2"))["is235"]


def test_monge_q_is_not_235():
    res = monge_check(parse_monge_polynomial("q"))
    assert not res["is235"]
    assert res["samples"][0]["growth"] == (2, 3, 4)


def test_monge_q3_growth_at_requested_point():
    pt = {"x": QScalar.zero(), "y": QScalar.zero(), "p": QScalar.zero(),
          "q": QScalar.one(), "z": QScalar.zero()}
    res = monge_check(parse_monge_polynomial("q^3"), [pt])
    assert res["is235"] and res["samples"][0]["growth"] == (2, 3, 5)


def test_monge_quadratic_plus_tail_family_member():
    res = monge_check(parse_monge_polynomial("q^2 + 3*p^4 + 1/2*z"))
    assert res["is235"]


def test_monge_parser_signs():
    F = parse_monge_polynomial("-q^2 + p - 2/3*z")
    assert F.diff("q").diff("q").eval(
        {v: QScalar.one() for v in "xypqz"}) == QScalar(-2)
    assert monge_check(F)["is235"]


# -- symmetry generators -----------------------------------------------------


@pytest.mark.parametrize("name", ["xi1", "xi2", "xi3", "xi4", "xi5", "xi6"])
def test_coordinate_symmetries(name):
    m = Fraction(5, 6)
    fields = symmetry_fields(m)
    assert is_distribution_symmetry(fields[name], m)


def test_xi7_when_polynomial():
    m = Fraction(5, 6)
    xi7 = symmetry_fields(m)["xi7"]
    assert xi7 is not None
    # with the antiderivative constant fixed at 0 it is a symmetry too
    assert is_distribution_symmetry(xi7, m)


def test_xi7_degenerates_at_one_half():
    assert symmetry_fields(Fraction(1, 2))["xi7"] is None


def test_frame_symmetry_solution_and_negative_control(pkg_half):
    sym = solve_frame_symmetry(pkg_half, Fraction(2))
    assert sym is not None
    assert sym.lam[5][5] == QScalar(-2)
    assert frame_symmetry_kernel_dim(pkg_half, Fraction(0)) == 0
    assert dilation_negative_control(pkg_half, sym)
