"""Projective tractor calculus over a framed chart.

Tractor indices run 0..n:S slots 0..n-1 are the tangent legs of the
scale's splitting, slot n is the density leg (the canonical tractor X
is the coordinate vector of slot n).  All component formulas are the
scale forms of the invariant connections; scale changes are available
and property-tested, so nothing depends on the chart's preferred scale
beyond bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from typing import List

from .frames import FrameChart
from .laurent import CoeffFn
from .scalars import QScalar
from .tensors import ALT, NONE, SYM, AltTensor, perm_sign


class Tractor3Form:
    """Pair (sigma_{bc}, mu_{bcd}) of chart forms; the weight-3 slots of a
    tractor 3-form in the scale of the chart's distinguished connection."""

    __slots__ = ("sigma", "mu")

    def __init__(self, sigma: AltTensor, mu: AltTensor):
        if sigma.n_down != 2 or mu.n_down != 3 or sigma.n_up or mu.n_up:
            raise ValueError("tractor 3-form slots must be a 2-form and a 3-form")
        self.sigma = sigma
        self.mu = mu

    def __sub__(self, other: "Tractor3Form") -> "Tractor3Form":
        return Tractor3Form(self.sigma - other.sigma, self.mu - other.mu)

    def __add__(self, other: "Tractor3Form") -> "Tractor3Form":
        return Tractor3Form(self.sigma + other.sigma, self.mu + other.mu)

    def is_zero(self) -> bool:
        return self.sigma.is_zero() and self.mu.is_zero()

    def full(self, zero) -> AltTensor:
        """All components on tractor indices 0..n: Phi_{nbc} = sigma_{bc},
        Phi_{bcd} = mu_{bcd}."""
        n = self.sigma.dim
        out = AltTensor.form(n + 1, 3, zero)
        for (_, idx), v in self.mu.comps.items():
            out.set((), idx, v)
        for (_, idx), v in self.sigma.comps.items():
            out.set((), (n,) + idx, v)
        return out

    @staticmethod
    def from_full(full: AltTensor) -> "Tractor3Form":
        n = full.dim - 1
        sigma = AltTensor.form(n, 2, full.zero)
        mu = AltTensor.form(n, 3, full.zero)
        for idx in combinations(range(n), 3):
            v = full.get((), idx)
            if not v.is_zero():
                mu.set((), idx, v)
        for idx in combinations(range(n), 2):
            v = full.get((), (n,) + idx)
            if not v.is_zero():
                sigma.set((), idx, v)
        return Tractor3Form(sigma, mu)


# -- connections -----------------------------------------------------------


def d_tractor(chart: FrameChart, V: List[CoeffFn], a: int) -> List[CoeffFn]:
    """nabla_a of an (unweighted) tractor V = (nu^0..nu^{n-1}, rho)."""
    n = chart.dim
    P = chart.schouten()
    wf = chart.weight_form[a]
    nu, rho = V[:n], V[n]
    out = []
    for b in range(n):
        acc = chart.dir_deriv(a, nu[b]) - wf * nu[b]
        for e in range(n):
            g = chart.G[a][e][b]
            if not g.is_zero():
                acc = acc + g * nu[e]
        if b == a:
            acc = acc + rho
        out.append(acc)
    acc = chart.dir_deriv(a, rho) - wf * rho
    for b in range(n):
        p = P.get((), (a, b))
        if not p.is_zero():
            acc = acc - p * nu[b]
    out.append(acc)
    return out


def d_cotractor(chart: FrameChart, U: List[CoeffFn], a: int) -> List[CoeffFn]:
    """nabla_a of a cotractor U = (mu_0..mu_{n-1}, sigma)."""
    n = chart.dim
    P = chart.schouten()
    wf = chart.weight_form[a]
    mu, sigma = U[:n], U[n]
    out = []
    for b in range(n):
        acc = chart.dir_deriv(a, mu[b]) + wf * mu[b]
        for e in range(n):
            g = chart.G[a][b][e]
            if not g.is_zero():
                acc = acc - g * mu[e]
        p = P.get((), (a, b))
        if not p.is_zero():
            acc = acc + p * sigma
        out.append(acc)
    acc = chart.dir_deriv(a, sigma) + wf * sigma - mu[a]
    out.append(acc)
    return out


def d_tractor_3form(chart: FrameChart, phi: Tractor3Form, a: int) -> Tractor3Form:
    """Slot formula: (nabla_a sigma_{bc} - mu_{abc},
                      nabla_a mu_{bcd} + P_{ab}sigma_{cd} + P_{ac}sigma_{db} + P_{ad}sigma_{bc})."""
    n = chart.dim
    P = chart.schouten()
    ds = chart.cov_deriv(phi.sigma, a, weight=3)
    dm = chart.cov_deriv(phi.mu, a, weight=3)
    top = AltTensor.form(n, 2, chart.zero())
    for idx in combinations(range(n), 2):
        v = ds.get((), idx) - phi.mu.get((), (a,) + idx)
        if not v.is_zero():
            top.set((), idx, v)
    bot = AltTensor.form(n, 3, chart.zero())
    for (b, c, d) in combinations(range(n), 3):
        v = dm.get((), (b, c, d))
        v = v + P.get((), (a, b)) * phi.sigma.get((), (c, d))
        v = v + P.get((), (a, c)) * phi.sigma.get((), (d, b))
        v = v + P.get((), (a, d)) * phi.sigma.get((), (b, c))
        if not v.is_zero():
            bot.set((), (b, c, d), v)
    return Tractor3Form(top, bot)


def d_cotractor_tensor(chart: FrameChart, T: AltTensor, a: int) -> AltTensor:
    """nabla_a of a covariant tractor tensor with components on indices 0..n.

    Generic slot-by-slot action: tangent slots get the frame connection
    plus P_{a b}*(slot -> density), the density slot subtracts
    (slot -> a).  Used to cross-validate the closed slot formulas and to
    differentiate the tractor volume.  Alternating input stays
    alternating, so only canonical index sets are visited for it.
    """
    n = chart.dim
    P = chart.schouten()
    k = T.n_down
    if T.sym == ALT:
        out = AltTensor(n + 1, 0, k, ALT, chart.zero())
        tuples = combinations(range(n + 1), k)
    else:
        out = AltTensor(n + 1, 0, k, NONE, chart.zero())
        tuples = product(range(n + 1), repeat=k)
    wf = chart.weight_form[a]
    for down in tuples:
        base = T.get((), down)
        acc = chart.dir_deriv(a, base)
        if not wf.is_zero():
            acc = acc + wf * base * k
        for s in range(k):
            B = down[s]
            if B < n:
                for e in range(n):
                    g = chart.G[a][B][e]
                    if not g.is_zero():
                        t = T.get((), down[:s] + (e,) + down[s + 1:])
                        if not t.is_zero():
                            acc = acc - g * t
                p_row = [P.get((), (a, B))]
                if not p_row[0].is_zero():
                    t = T.get((), down[:s] + (n,) + down[s + 1:])
                    if not t.is_zero():
                        acc = acc + p_row[0] * t
            else:
                t = T.get((), down[:s] + (a,) + down[s + 1:])
                if not t.is_zero():
                    acc = acc - t
        if not acc.is_zero():
            out.set((), down, acc)
    return out


def tractor_volume(chart: FrameChart) -> AltTensor:
    """The canonical parallel tractor (n+1)-form in the chart scale,
    built from the frame volume (valid because the distinguished
    connection preserves it)."""
    n = chart.dim
    eps = AltTensor.form(n + 1, n + 1, chart.zero())
    # component on (n, 0, 1, .., n-1) is +1; canonical key is (0..n)
    sign = perm_sign((n,) + tuple(range(n)))
    eps.set((), tuple(range(n + 1)), chart.lift(sign))
    return eps


def htilde7(full: AltTensor, zero) -> List[List]:
    """Matrix of (1/6)(X . Phi) ^ (Y . Phi) ^ Phi on the e^{0..6} slot."""
    basis = []
    one = QScalar.one()
    for a in range(7):
        vec = [one if i == a else QScalar.zero() for i in range(7)]
        basis.append(full.interior(vec))
    out = [[zero for _ in range(7)] for _ in range(7)]
    sixth = QScalar(Fraction(1, 6))
    for i in range(7):
        for j in range(i, 7):
            w = basis[i].wedge(basis[j]).wedge(full)
            val = w.get((), tuple(range(7))) * sixth
            out[i][j] = val
            out[j][i] = val
    return out


def _phi_norm_laurent(full: AltTensor, hinv) -> CoeffFn:
    """Phi_{ABC} Phi_{DEF} h^{AD} h^{BE} h^{CF} over the Laurent ring."""
    expanded = []
    for (_, idx), v in full.comps.items():
        for p in permutations(idx):
            s = perm_sign_rel_cached(idx, p)
            expanded.append((p, v if s > 0 else -v))
    acc = None
    for (a, b, c), va in expanded:
        for (d, e, f), vb in expanded:
            w = hinv[a][d] * hinv[b][e] * hinv[c][f]
            if w.is_zero():
                continue
            t = va * vb * w
            acc = t if acc is None else acc + t
    return acc


def laurent_cbrt(f: CoeffFn) -> CoeffFn:
    if len(f.terms) != 1:
        raise ValueError("cube root only for Laurent monomials")
    (e, c), = f.terms.items()
    if e % 3:
        raise ValueError("cube root exponent not divisible by 3")
    return CoeffFn.monomial(c.cbrt(), e // 3, f.param)


def tractor_metric_from_phi(chart: FrameChart, phi: Tractor3Form) -> AltTensor:
    """The tractor metric a generic parallel 3-form induces.

    Normalized by the trace identity 6 H_{AD} = Phi_{ABC} Phi_D^{BC}
    (equivalently Phi.Phi = 42 under H-raising), which is orientation
    free and needs no root extraction beyond an exact monomial cube
    root.  Degenerate input raises DegenerateError.
    """
    n = chart.dim
    if n != 6:
        raise ValueError("the tractor metric construction needs a 6-dimensional chart")
    from .linalg import inverse_laurent
    from .scalars import DegenerateError
    full = phi.full(chart.zero())
    ht = htilde7(full, chart.zero())
    hinv = inverse_laurent(ht)
    s = _phi_norm_laurent(full, hinv)
    if s is None:
        raise DegenerateError("tractor 3-form is degenerate")
    c = laurent_cbrt(s * QScalar(Fraction(1, 42)))
    H = AltTensor(7, 0, 2, SYM, chart.zero())
    for i in range(7):
        for j in range(i, 7):
            v = ht[i][j] * c
            if not v.is_zero():
                H.set((), (i, j), v)
    return H


def tractor_metric_hhdef(chart: FrameChart, phi: Tractor3Form, orientation: int = 1) -> AltTensor:
    """H_{AB} = (1/144) Phi_{A C1 C2} Phi_{B C3 C4} Phi_{C5 C6 C7} eps^{C1..C7},
    the epsilon-contraction route, with an explicit orientation for the
    tractor volume.  Used to cross-check the trace-normalized metric."""
    n = chart.dim
    if n != 6:
        raise ValueError("the tractor metric construction needs a 6-dimensional chart")
    full = phi.full(chart.zero())
    vol = tractor_volume(chart)
    eps_sign = vol.get((), tuple(range(7))) * QScalar.of(orientation)
    triples = [(idx, v) for (_, idx), v in full.comps.items()]
    H = AltTensor(7, 0, 2, SYM, chart.zero())
    pref = QScalar(Fraction(1, 144))
    for A in range(7):
        for B in range(A, 7):
            acc = chart.zero()
            for idx3, v3 in triples:
                for p3 in permutations(idx3):
                    s3 = perm_sign_rel_cached(idx3, p3)
                    phi3 = v3 if s3 > 0 else -v3
                    rest = [x for x in range(7) if x not in p3]
                    for p12 in permutations(rest, 2):
                        va = full.get((), (A,) + p12)
                        if va.is_zero():
                            continue
                        last = tuple(x for x in rest if x not in p12)
                        for p34 in (last, (last[1], last[0])):
                            vb = full.get((), (B,) + p34)
                            if vb.is_zero():
                                continue
                            term = va * vb * phi3
                            if perm_sign(p12 + p34 + p3) < 0:
                                term = -term
                            acc = acc + term
            acc = acc * pref * eps_sign
            if not acc.is_zero():
                H.set((), (A, B), acc)
    return H


def phi_volume_ratio(chart: FrameChart, phi: Tractor3Form, H: AltTensor) -> CoeffFn:
    """Coefficient of (1/42) Phi_{K[AB} Phi^K_{CD} Phi_{EFG]} against the
    frame tractor volume; its sign is the orientation of Phi relative to
    the chart frame."""
    from .linalg import inverse_laurent
    full = phi.full(chart.zero())
    hinv = inverse_laurent(H.as_matrix())
    triples = [(idx, v) for (_, idx), v in full.comps.items()]
    acc = chart.zero()
    for idx1, v1 in triples:
        for p1 in permutations(idx1):
            s1 = perm_sign_rel_cached(idx1, p1)
            k = p1[0]
            f1 = v1 if s1 > 0 else -v1
            for idx2, v2 in triples:
                for p2 in permutations(idx2):
                    s2 = perm_sign_rel_cached(idx2, p2)
                    l = p2[0]
                    w = hinv[k][l]
                    if w.is_zero():
                        continue
                    if len({p1[1], p1[2], p2[1], p2[2]}) != 4:
                        continue
                    f12 = f1 * (v2 if s2 > 0 else -v2) * w
                    used = {p1[1], p1[2], p2[1], p2[2]}
                    for idx3, v3 in triples:
                        if used & set(idx3):
                            continue
                        for p3 in permutations(idx3):
                            s3 = perm_sign_rel_cached(idx3, p3)
                            perm = (p1[1], p1[2], p2[1], p2[2]) + p3
                            term = f12 * (v3 if s3 > 0 else -v3)
                            if perm_sign(perm) < 0:
                                term = -term
                            acc = acc + term
    frame_sign = tractor_volume(chart).get((), tuple(range(7)))
    return acc * QScalar(Fraction(1, 42 * 5040)) * frame_sign


_psr_cache = {}


def perm_sign_rel_cached(base, perm):
    key = (base, perm)
    v = _psr_cache.get(key)
    if v is None:
        pos = {x: i for i, x in enumerate(base)}
        v = perm_sign([pos[x] for x in perm])
        _psr_cache[key] = v
    return v


# -- Killing-Yano prolongation ------------------------------------------------


def ky_symmetrized_derivative(chart: FrameChart, omega: AltTensor) -> AltTensor:
    """Brute-force oracle: S_{abc} = (nabla_a omega_{bc} + nabla_b omega_{ac})/2."""
    n = chart.dim
    d = [chart.cov_deriv(omega, a, weight=3) for a in range(n)]
    out = AltTensor(n, 0, 3, NONE, chart.zero())
    half = chart.lift(Fraction(1, 2))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = (d[a].get((), (b, c)) + d[b].get((), (a, c))) * half
                if not v.is_zero():
                    out.set((), (a, b, c), v)
    return out


def ky_prolong(chart: FrameChart, omega: AltTensor):
    """Prolongation data for the Killing-Yano operator on a weight-3 2-form.

    Returns (pair, hat_derivs, residual):
      pair       the candidate (omega, mu) with mu the alternation of
                 nabla omega,
      hat_derivs per-direction values of the prolongation connection on
                 the pair, including the Weyl correction term,
      residual   S_{abc} = nabla_{(a} omega_{b)c}, recovered from the
                 first-slot defect d via S_abc = d_abc - d_cba / 2.
    """
    n = chart.dim
    d = [chart.cov_deriv(omega, a, weight=3) for a in range(n)]
    raw = AltTensor(n, 0, 3, NONE, chart.zero())
    for a in range(n):
        for (_, bc), v in d[a].comps.items():
            raw.set((), (a,) + bc, raw.get((), (a,) + bc) + v)
    mu = raw.alternation()
    pair = Tractor3Form(omega, mu)
    W = chart.weyl()
    hat = []
    for a in range(n):
        base = d_tractor_3form(chart, pair, a)
        corr = AltTensor.form(n, 3, chart.zero())
        for (b, c, dd) in combinations(range(n), 3):
            acc = chart.zero()
            # (3/2) omega_{k[b} W_{cd]}{}^k{}_a = (1/2) * cyclic sum
            for (x, y, z) in ((b, c, dd), (c, dd, b), (dd, b, c)):
                for k in range(n):
                    o = omega.get((), (k, x))
                    if o.is_zero():
                        continue
                    w = W.get((k,), (y, z, a))
                    if not w.is_zero():
                        acc = acc + o * w
            acc = acc * chart.lift(Fraction(1, 2))
            if not acc.is_zero():
                corr.set((), (b, c, dd), acc)
        hat.append(Tractor3Form(base.sigma, base.mu - corr))
    # first-slot defect and the exact recovery of the symmetrized derivative
    defect = AltTensor(n, 0, 3, NONE, chart.zero())
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = d[a].get((), (b, c)) - mu.get((), (a, b, c))
                if not v.is_zero():
                    defect.set((), (a, b, c), v)
    residual = AltTensor(n, 0, 3, NONE, chart.zero())
    half = chart.lift(Fraction(1, 2))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = defect.get((), (a, b, c)) - defect.get((), (c, b, a)) * half
                if not v.is_zero():
                    residual.set((), (a, b, c), v)
    return pair, hat, residual


# -- scale changes --------------------------------------------------------------


def scale_tractor(V: List[CoeffFn], upsilon: List[CoeffFn]) -> List[CoeffFn]:
    n = len(V) - 1
    rho = V[n]
    for a in range(n):
        rho = rho - upsilon[a] * V[a]
    return V[:n] + [rho]


def scale_cotractor(U: List[CoeffFn], upsilon: List[CoeffFn]) -> List[CoeffFn]:
    n = len(U) - 1
    return [U[b] + upsilon[b] * U[n] for b in range(n)] + [U[n]]


def scale_3form(phi: Tractor3Form, upsilon: List[CoeffFn]) -> Tractor3Form:
    n = phi.sigma.dim
    mu = phi.mu.copy()
    for (b, c, d) in combinations(range(n), 3):
        v = mu.get((), (b, c, d))
        v = v + upsilon[b] * phi.sigma.get((), (c, d))
        v = v + upsilon[c] * phi.sigma.get((), (d, b))
        v = v + upsilon[d] * phi.sigma.get((), (b, c))
        mu.set((), (b, c, d), v)
    return Tractor3Form(phi.sigma.copy(), mu)
