"""Zero-locus geometry: conformal restriction, the degenerate endomorphism,
the rank-2 distribution and its bracket growth, and the splitting operator
that rebuilds the parallel tractor 3-form from its boundary 2-form slot.

The conformal tractor bundle is realized as the restriction of the
ambient tractor bundle (same 7 slots: tangent 0..4, the collar leg 5
playing the null partner Y, the density leg 6 playing X); the collar
normal form makes this identification exact at s = 0, and the ambient
connection coefficients encode the conformal ones (checked, not assumed:
see boundary_connection_checks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import linalg
from .frames import FrameChart
from .laurent import PLAIN, CoeffFn
from .scalars import QScalar
from .tensors import NONE, SYM, AltTensor
from .geometry import GeometryPackage


@dataclass
class ConformalChart:
    chart: FrameChart          # 5-dim chart carrying the Levi-Civita connection
    g0: AltTensor              # representative metric (constant frame components)
    schouten: AltTensor        # conformal Schouten of g0

    @property
    def dim(self):
        return 5


@dataclass
class BoundaryData:
    conformal: ConformalChart
    sigma0: AltTensor          # X Z Z slot (the boundary 2-form)
    psi0: AltTensor            # Z Z Z slot
    nu0: AltTensor             # X Y Z slot (1-form)
    rho0: AltTensor            # Y Z Z slot (2-form)
    J0: List[List[QScalar]]    # degenerate endomorphism of TM0
    Jtr0: List[List[QScalar]]  # full 7x7 tractor endomorphism at s = 0
    H0: List[List[QScalar]]    # tractor metric at s = 0


def _eval0(f: CoeffFn) -> QScalar:
    return f.eval(QScalar.zero())


def conformal_schouten(chart: FrameChart, g: AltTensor) -> AltTensor:
    """(1/(d-2)) (Ric - Sc/(2(d-1)) g) for the Levi-Civita chart of g."""
    d = chart.dim
    ric = chart.ricci()
    gm = g.as_matrix()
    ginv = linalg.inverse_laurent(gm)
    sc = chart.zero()
    for a in range(d):
        for b in range(d):
            w = ginv[a][b]
            if not w.is_zero():
                sc = sc + w * ric.get((), (a, b))
    out = AltTensor(d, 0, 2, NONE, chart.zero())
    pref = chart.lift(Fraction(1, d - 2))
    trace_pref = chart.lift(Fraction(1, 2 * (d - 1)))
    for a in range(d):
        for b in range(d):
            v = (ric.get((), (a, b)) - gm[a][b] * sc * trace_pref) * pref
            if not v.is_zero():
                out.set((), (a, b), v)
    return out


def restrict_to_zero_locus(pkg: GeometryPackage) -> BoundaryData:
    """Conformal data induced on the zero locus s = 0."""
    n = pkg.dim
    if n != 6:
        raise ValueError("zero-locus restriction expects a 6-dimensional package")
    tau0 = pkg.tau.eval(QScalar.zero())
    if not tau0.is_zero():
        raise ValueError("empty zero locus: tau does not vanish at s = 0")
    Hm = [[_eval0(v) for v in row] for row in pkg.H.as_matrix()]
    # boundary chart: the group directions with their brackets, Levi-Civita of g0
    base = FrameChart(5, PLAIN, rho_directions=())
    for a in range(5):
        for b in range(a + 1, 5):
            comps = {}
            for c in range(6):
                v = pkg.chart.C[a][b][c]
                if not v.is_zero():
                    if c >= 5:
                        raise ValueError("boundary brackets leave the zero locus")
                    comps[c] = _eval0(v)
            if comps:
                base.set_bracket(a, b, comps)
    g0 = AltTensor(5, 0, 2, SYM, base.zero())
    for a in range(5):
        for b in range(a, 5):
            v = Hm[a][b]
            if not v.is_zero():
                g0.set((), (a, b), base.lift(v))
    lc = base.levi_civita(g0)
    P0 = conformal_schouten(lc, g0)
    conf = ConformalChart(lc, g0, P0)

    full = pkg.phi.full(pkg.chart.zero())
    sigma0 = AltTensor.form(5, 2)
    psi0 = AltTensor.form(5, 3)
    nu0 = AltTensor.form(5, 1)
    rho0 = AltTensor.form(5, 2)
    for idx in combinations(range(5), 2):
        v = _eval0(full.get((), (6,) + idx))
        if not v.is_zero():
            sigma0.set((), idx, v)
        w = _eval0(full.get((), (5,) + idx))
        if not w.is_zero():
            rho0.set((), idx, w)
    for idx in combinations(range(5), 3):
        v = _eval0(full.get((), idx))
        if not v.is_zero():
            psi0.set((), idx, v)
    for c in range(5):
        v = _eval0(full.get((), (6, 5, c)))
        if not v.is_zero():
            nu0.set((), (c,), v)

    Jtr0 = [[_eval0(pkg.J[a][b]) if a < 6 and b < 6 else QScalar.zero()
             for b in range(7)] for a in range(7)]
    for b in range(6):
        Jtr0[6][b] = _eval0(pkg.chi[b])
    J0 = [[Jtr0[a][b] for b in range(5)] for a in range(5)]
    # the endomorphism must stabilize the boundary tangent space
    for b in range(5):
        if not Jtr0[5][b].is_zero():
            raise ValueError("J does not restrict tangentially to the zero locus")
    return BoundaryData(conf, sigma0, psi0, nu0, rho0, J0, Jtr0, Hm)


# -- distribution extraction -------------------------------------------------


@dataclass
class Distribution235:
    d_basis: List[list]
    bracket_basis: List[list]
    growth: Tuple[int, int, int]


def distribution_from_J0(bd: BoundaryData) -> List[list]:
    """D = im J0 as row vectors in the boundary frame."""
    cols = linalg.transpose(bd.J0)
    return linalg.row_space(cols)


def distribution_from_omega(pkg: GeometryPackage) -> List[list]:
    """D = ker(omega restricted over M0) inside the full 6-dim tangent space;
    the kernel is tangent to the zero locus and returned in the 5-dim frame."""
    sig = pkg.phi.sigma
    rows = []
    for b in range(6):
        rows.append([_eval0(sig.get((), (a, b))) for a in range(6)])
    ker = linalg.nullspace(rows)
    out = []
    for v in ker:
        if not v[5].is_zero():
            raise ValueError("kernel of the 2-form is not tangent to the zero locus")
        out.append(v[:5])
    return linalg.row_space(out)


def declared_distribution() -> List[list]:
    z, o = QScalar.zero(), QScalar.one()
    return [[z, z, z, o, z], [z, z, z, z, o]]


def bracket_closure(chart: FrameChart, basis: List[list]) -> List[list]:
    """Span of basis together with pairwise brackets (constant components)."""
    fields = [[CoeffFn.of(v, chart.param) for v in vec] for vec in basis]
    from .geometry import _field_bracket
    rows = [list(vec) for vec in basis]
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            br = _field_bracket(chart, fields[i], fields[j])
            rows.append([b.constant_value() for b in br])
    return linalg.row_space(rows)


def extract_distribution(pkg: GeometryPackage, bd: Optional[BoundaryData] = None) -> Distribution235:
    """The rank-2 distribution on the zero locus, computed three ways.

    im J0, ker omega|_{M0} and the declared span must agree exactly;
    disagreement raises an internal-consistency error.
    """
    bd = bd or restrict_to_zero_locus(pkg)
    d1 = distribution_from_J0(bd)
    d2 = distribution_from_omega(pkg)
    d3 = declared_distribution()
    if not (linalg.same_subspace(d1, d2) and linalg.same_subspace(d2, d3)):
        raise RuntimeError("distribution characterizations disagree (im J0 / ker omega / declared)")
    lc = bd.conformal.chart
    step2 = bracket_closure(lc, d1)
    step3 = bracket_closure(lc, step2)
    growth = (len(d1), len(step2), len(step3))
    return Distribution235(d1, step2, growth)


def distribution_checks(pkg: GeometryPackage, bd: BoundaryData, dist: Distribution235) -> Dict[str, bool]:
    out = {}
    out["growth_235"] = dist.growth == (2, 3, 5)
    # [D,D] = ker J0
    kerJ0 = linalg.nullspace(bd.J0)
    out["bracket_equals_ker_J0"] = linalg.same_subspace(dist.bracket_basis, kerJ0)
    # [D,D] = ker(iota* omega)
    rows = []
    for b in range(5):
        rows.append([bd.sigma0.get((), (a, b)) for a in range(5)])
    out["bracket_equals_ker_pullback"] = linalg.same_subspace(
        dist.bracket_basis, linalg.nullspace(rows))
    # D-perp (w.r.t. g0) = [D,D]
    g0 = bd.conformal.g0.as_matrix()
    g0q = [[v.constant_value() for v in row] for row in g0]
    perp_rows = [linalg.mat_vec(g0q, v) for v in dist.d_basis]
    out["perp_equals_bracket"] = linalg.same_subspace(
        linalg.nullspace(perp_rows), dist.bracket_basis)
    # total nullity of D
    nullity = True
    for u in dist.d_basis:
        for v in dist.bracket_basis:
            if not linalg.sum_prod(linalg.mat_vec(g0q, u), v).is_zero():
                nullity = False
    out["g0_kills_D_bracket_pairs"] = nullity
    # omega0 decomposable with bivector spanning D: rank of sigma0 is 2
    rows2 = [[bd.sigma0.get((), (a, b)) for a in range(5)] for b in range(5)]
    out["omega0_rank_2"] = linalg.rank(rows2) == 2
    return out


def j0_checks(bd: BoundaryData) -> Dict[str, bool]:
    """Pointwise facts about the degenerate endomorphisms at the boundary."""
    out = {}
    J0 = bd.J0
    J0sq = linalg.mat_mul(J0, J0)
    out["J0_squared_zero"] = all(v.is_zero() for row in J0sq for v in row)
    out["J0_rank_2"] = linalg.rank(J0) == 2
    out["J0_kernel_dim_3"] = len(linalg.nullspace(J0)) == 3
    Jt = bd.Jtr0
    H0 = bd.H0
    # Jtr^2 = X (x) X_flat (tau = 0 on the boundary)
    J2 = linalg.mat_mul(Jt, Jt)
    ok = True
    for A in range(7):
        for B in range(7):
            want = H0[B][6] if A == 6 else QScalar.zero()
            if not (J2[A][B] - want).is_zero():
                ok = False
    out["Jtractor_squared_is_XX"] = ok
    kerJ = linalg.nullspace(Jt)
    out["tractor_kernel_dim_3"] = len(kerJ) == 3
    img = linalg.row_space(linalg.transpose(Jt))
    out["tractor_image_dim_4"] = len(img) == 4
    # filtration dims (1,3,4,6): <X> < ker < ker-perp=im < X-perp
    X = [QScalar.zero()] * 6 + [QScalar.one()]
    out["X_in_kernel"] = linalg.subspace_contains(kerJ, X)
    kerperp = linalg.nullspace([linalg.mat_vec(H0, v) for v in kerJ])
    out["image_is_kernel_perp"] = linalg.same_subspace(img, kerperp)
    Xperp = linalg.nullspace([linalg.mat_vec(H0, X)])
    out["filtration_dims"] = (1, len(kerJ), len(kerperp), len(Xperp)) == (1, 3, 4, 6)
    chain = True
    for small, big in (([X], kerJ), (kerJ, kerperp), (kerperp, Xperp)):
        for v in small:
            if not linalg.subspace_contains(big, v):
                chain = False
    out["filtration_chain"] = chain
    # varpi projections: varpi(ker Jtr) = im J0, varpi(im Jtr) = ker J0
    varpi_ker = linalg.row_space([v[:5] for v in kerJ])
    varpi_im = linalg.row_space([v[:5] for v in img])
    cols = linalg.transpose(bd.J0)
    out["varpi_ker_is_im_J0"] = linalg.same_subspace(varpi_ker, linalg.row_space(cols))
    out["varpi_im_is_ker_J0"] = linalg.same_subspace(varpi_im, linalg.nullspace(bd.J0))
    return out


def boundary_connection_checks(pkg: GeometryPackage, bd: BoundaryData) -> Dict[str, bool]:
    """The ambient connection data encodes the conformal one at s = 0.

    In the collar normal form the ambient Christoffel components with
    output along the collar leg must be -g0_{ab} (the Y-slot term of the
    conformal tractor connection) and the restricted projective Schouten
    must vanish against the collar leg.
    """
    out = {}
    ok = True
    g0 = bd.conformal.g0
    for a in range(5):
        for b in range(5):
            got = _eval0(pkg.chart.G[a][b][5])
            want = -g0.get((), (a, b)).constant_value()
            if not (got - want).is_zero():
                ok = False
    out["collar_christoffel_is_minus_g0"] = ok
    P = pkg.chart.schouten()
    out["ambient_schouten_kills_collar_leg"] = all(
        _eval0(P.get((), (a, 5))).is_zero() for a in range(5))
    # ambient tangential Christoffel with tangential output reproduces the
    # boundary Levi-Civita connection of g0
    lc = bd.conformal.chart
    ok2 = True
    for a in range(5):
        for c in range(5):
            for b in range(5):
                if not (_eval0(pkg.chart.G[a][c][b]) - lc.G[a][c][b].constant_value()).is_zero():
                    ok2 = False
    out["tangential_christoffel_is_boundary_lc"] = ok2
    # ambient P restricted tangentially equals the conformal Schouten of g0
    okP = True
    for a in range(5):
        for b in range(5):
            if not (_eval0(P.get((), (a, b))) - bd.conformal.schouten.get((), (a, b)).constant_value()).is_zero():
                okP = False
    out["tangential_schouten_is_conformal_schouten"] = okP
    return out


# -- BGG splitting -------------------------------------------------------------


@dataclass
class ConformalTractor3Form:
    sigma: AltTensor   # X Z Z slot
    psi: AltTensor     # Z Z Z slot
    nu: AltTensor      # X Y Z slot
    rho: AltTensor     # Y Z Z slot

    def __sub__(self, o):
        return ConformalTractor3Form(self.sigma - o.sigma, self.psi - o.psi,
                                     self.nu - o.nu, self.rho - o.rho)

    def is_zero(self):
        return (self.sigma.is_zero() and self.psi.is_zero()
                and self.nu.is_zero() and self.rho.is_zero())


def bgg_split(conf: ConformalChart, omega0: AltTensor) -> ConformalTractor3Form:
    """Splitting operator on weight-3 boundary 2-forms.

    Slots, in the scale of the representative metric:
      top     omega0
      middle  alternation of nabla omega0  |  -(1/4) nabla^k omega0_{kc}
      bottom  -(1/15) nabla^k nabla_k omega0_{bc}
              - (2/15) alt_{bc} nabla^k nabla_{c} omega0_{kb}
              - (1/10) alt_{bc} nabla_{c} nabla^k omega0_{kb}
              - (4/5) P^k_{[b} omega0_{c]k} - (1/5) P^k_k omega0_{bc}
    """
    lc = conf.chart
    n = 5
    gm = conf.g0.as_matrix()
    ginv = linalg.inverse_laurent(gm)
    P = conf.schouten
    t = AltTensor(n, 0, 3, NONE, lc.zero())   # t_{a bc} = nabla_a omega_{bc}
    for a in range(n):
        da = lc.cov_deriv(omega0, a)
        for (_, bc), v in da.comps.items():
            t.set((), (a,) + bc, v)
    s = AltTensor(n, 0, 4, NONE, lc.zero())   # s_{a b cd} = nabla_a t_{b cd}
    for a in range(n):
        da = lc.cov_deriv(t, a)
        for (_, idx), v in da.comps.items():
            s.set((), (a,) + idx, v)
    psi = t.alternation()
    nu = AltTensor.form(n, 1, lc.zero())
    quarter = lc.lift(Fraction(-1, 4))
    for c in range(n):
        acc = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if not w.is_zero():
                    acc = acc + w * t.get((), (l, k, c))
        v = acc * quarter
        if not v.is_zero():
            nu.set((), (c,), v)
    bottom = AltTensor.form(n, 2, lc.zero())
    for (b, c) in combinations(range(n), 2):
        acc = lc.zero()
        # -(1/15) laplacian
        lap = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if not w.is_zero():
                    lap = lap + w * s.get((), (l, k, b, c))
        acc = acc + lap * Fraction(-1, 15)
        # -(2/15) alt_{bc} nabla^k nabla_c omega_{kb}
        t2 = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if not w.is_zero():
                    t2 = t2 + w * (s.get((), (l, c, k, b)) - s.get((), (l, b, k, c)))
        acc = acc + t2 * Fraction(-1, 15)   # includes the 1/2 of the alternation
        # -(1/10) alt_{bc} nabla_c nabla^k omega_{kb}
        t3 = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if not w.is_zero():
                    t3 = t3 + w * (s.get((), (c, l, k, b)) - s.get((), (b, l, k, c)))
        acc = acc + t3 * Fraction(-1, 20)
        # -(4/5) P^k_{[b} omega_{c]k}
        t4 = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if w.is_zero():
                    continue
                t4 = t4 + w * (P.get((), (l, b)) * omega0.get((), (c, k))
                               - P.get((), (l, c)) * omega0.get((), (b, k)))
        acc = acc + t4 * Fraction(-2, 5)    # includes the 1/2 of the alternation
        # -(1/5) P^k_k omega_{bc}
        trP = lc.zero()
        for k in range(n):
            for l in range(n):
                w = ginv[k][l]
                if not w.is_zero():
                    trP = trP + w * P.get((), (l, k))
        acc = acc + trP * omega0.get((), (b, c)) * Fraction(-1, 5)
        if not acc.is_zero():
            bottom.set((), (b, c), acc)
    return ConformalTractor3Form(omega0.copy(), psi, nu, bottom)


def boundary_3form(bd: BoundaryData) -> ConformalTractor3Form:
    z = CoeffFn.zero(PLAIN)

    def lift(tensor):
        out = AltTensor(5, 0, tensor.n_down, tensor.sym, z)
        for (_, idx), v in tensor.comps.items():
            out.set((), idx, CoeffFn.of(v, PLAIN))
        return out

    return ConformalTractor3Form(lift(bd.sigma0), lift(bd.psi0), lift(bd.nu0), lift(bd.rho0))


def bgg_round_trip_defect(pkg: GeometryPackage, bd: Optional[BoundaryData] = None):
    bd = bd or restrict_to_zero_locus(pkg)
    target = boundary_3form(bd)
    got = bgg_split(bd.conformal, target.sigma)
    return got - target


def conformal_parallel_defect(pkg: GeometryPackage, form: ConformalTractor3Form,
                              bd: Optional[BoundaryData] = None):
    """Derivative of the assembled tractor form along boundary directions,
    taken with the restricted ambient tractor connection at s = 0."""
    from .tractor import d_cotractor_tensor
    bd = bd or restrict_to_zero_locus(pkg)
    chart = pkg.chart
    F = AltTensor.form(7, 3, chart.zero())
    for (_, idx), v in form.psi.comps.items():
        F.set((), idx, CoeffFn.of(v.constant_value(), chart.param))
    for (_, idx), v in form.sigma.comps.items():
        F.set((), (6,) + idx, CoeffFn.of(v.constant_value(), chart.param))
    for (_, idx), v in form.rho.comps.items():
        F.set((), (5,) + idx, CoeffFn.of(v.constant_value(), chart.param))
    for (_, idx), v in form.nu.comps.items():
        F.set((), (6, 5) + idx, CoeffFn.of(v.constant_value(), chart.param))
    defects = []
    for a in range(5):
        d = d_cotractor_tensor(chart, F, a)
        for (_, idx), v in d.comps.items():
            defects.append(_eval0(v))
    return defects
