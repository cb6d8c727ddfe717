"""Framed charts: structure functions, a distinguished connection, curvature.

A FrameChart is a frame E_1..E_n with bracket structure functions,
a torsion-free connection given in frame components, and a derivation
table saying which frame directions differentiate the coefficient ring
(for the collar charts: only the transverse direction acts, as d/drho).

Conventions: [E_a, E_b] = c^c_{ab} E_c and nabla_{E_a} E_c = G^b_{ac} E_b
(direction first); curvature (nabla_a nabla_b - nabla_b nabla_a) U^c =
R_{ab}{}^c{}_d U^d includes the -nabla_{[E_a,E_b]} frame correction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .laurent import PLAIN, CoeffFn
from .linalg import inverse_laurent
from .tensors import NONE, AltTensor


class FrameChart:
    def __init__(self, dim: int, param: str = PLAIN,
                 rho_directions: Iterable[int] = (), labels: Optional[List[str]] = None):
        self.dim = dim
        self.param = param
        self.rho_directions = frozenset(rho_directions)
        self.labels = labels or [f"E{i + 1}" for i in range(dim)]
        z = self.zero()
        self.C = [[[z for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
        self.G = [[[z for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
        # scale 1-form: the connection form of the weight-1 density bundle
        # relative to the frame trivialization (zero when the frame volume
        # is parallel, accumulated under projective changes of scale)
        self.weight_form: List[CoeffFn] = [z for _ in range(dim)]
        self._cache: Dict[str, object] = {}

    # -- ring helpers ------------------------------------------------------

    def zero(self) -> CoeffFn:
        return CoeffFn.zero(self.param)

    def one(self) -> CoeffFn:
        return CoeffFn.one(self.param)

    def lift(self, x) -> CoeffFn:
        return CoeffFn.of(x, self.param)

    def rho(self) -> CoeffFn:
        return CoeffFn.rho(self.param)

    # -- data entry ---------------------------------------------------------

    def set_bracket(self, a: int, b: int, comps: Dict[int, object]) -> None:
        """[E_a, E_b] = sum comps[c] * E_c (and the skew partner)."""
        for c, v in comps.items():
            v = self.lift(v)
            self.C[a][b][c] = v
            self.C[b][a][c] = -v
        self._cache.clear()

    def set_gamma(self, a: int, c: int, comps: Dict[int, object]) -> None:
        """nabla_{E_a} E_c = sum comps[b] * E_b."""
        for b, v in comps.items():
            self.G[a][c][b] = self.lift(v)
        self._cache.clear()

    def bracket(self, a: int, b: int) -> List[CoeffFn]:
        return list(self.C[a][b])

    def gamma(self, a: int, c: int, b: int) -> CoeffFn:
        return self.G[a][c][b]

    # -- derivation table ----------------------------------------------------

    def dir_deriv(self, a: int, f: CoeffFn) -> CoeffFn:
        if a in self.rho_directions:
            return f.d_drho()
        return self.zero()

    # -- tensor covariant derivative -----------------------------------------

    def cov_deriv(self, T: AltTensor, a: int, weight: int = 0) -> AltTensor:
        """Frame components of nabla_{E_a} T (same valence, raw symmetry).

        weight is the projective density weight of the components; it
        couples through the chart's scale 1-form (zero in a scale whose
        frame volume is parallel)."""
        from itertools import product
        out = AltTensor(self.dim, T.n_up, T.n_down, NONE, self.zero())
        rng = range(self.dim)
        wform = self.weight_form[a] if weight else None
        for up in product(rng, repeat=T.n_up):
            for down in product(rng, repeat=T.n_down):
                acc = self.dir_deriv(a, T.get(up, down))
                if wform is not None and not wform.is_zero():
                    acc = acc + wform * T.get(up, down) * weight
                for s in range(T.n_up):
                    for e in rng:
                        g = self.G[a][e][up[s]]
                        if g.is_zero():
                            continue
                        t = T.get(up[:s] + (e,) + up[s + 1:], down)
                        if not t.is_zero():
                            acc = acc + g * t
                for s in range(T.n_down):
                    for e in rng:
                        g = self.G[a][down[s]][e]
                        if g.is_zero():
                            continue
                        t = T.get(up, down[:s] + (e,) + down[s + 1:])
                        if not t.is_zero():
                            acc = acc - g * t
                if not acc.is_zero():
                    out.set(up, down, acc)
        return out

    # -- structural checks ------------------------------------------------------

    def jacobi_defect(self) -> List[CoeffFn]:
        """All components of sum_cyc [[E_a,E_b],E_c]; empty chart data is fine
        because the structure functions here never depend on group directions."""
        out = []
        n = self.dim
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for d in range(n):
                        acc = self.zero()
                        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                            # [[E_x,E_y],E_z]^d, structure functions may depend on rho
                            for e in range(n):
                                f = self.C[x][y][e]
                                if not f.is_zero():
                                    acc = acc + f * self.C[e][z][d]
                            acc = acc + self.dir_deriv(z, self.C[x][y][d]) * (-1)
                        out.append(acc)
        return out

    def is_jacobi(self) -> bool:
        return all(v.is_zero() for v in self.jacobi_defect())

    def torsion_defect(self) -> List[CoeffFn]:
        out = []
        for a in range(self.dim):
            for c in range(a + 1, self.dim):
                for b in range(self.dim):
                    out.append(self.G[a][c][b] - self.G[c][a][b] - self.C[a][c][b])
        return out

    def is_torsion_free(self) -> bool:
        return all(v.is_zero() for v in self.torsion_defect())

    def volume_defect(self) -> List[CoeffFn]:
        """Per-direction trace sum_b G^b_{ab}; zero iff the frame volume is parallel."""
        out = []
        for a in range(self.dim):
            acc = self.zero()
            for b in range(self.dim):
                acc = acc + self.G[a][b][b]
            out.append(acc)
        return out

    def is_special(self) -> bool:
        return all(v.is_zero() for v in self.volume_defect())

    # -- curvature tower -----------------------------------------------------------

    def curvature(self) -> AltTensor:
        """R_{ab}{}^c{}_d stored with up slot (c,) and down slots (a, b, d)."""
        if "R" in self._cache:
            return self._cache["R"]
        n = self.dim
        R = AltTensor(n, 1, 3, NONE, self.zero())
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(n):
                    for d in range(n):
                        acc = self.dir_deriv(a, self.G[b][d][c]) - self.dir_deriv(b, self.G[a][d][c])
                        for e in range(n):
                            t1 = self.G[b][d][e]
                            if not t1.is_zero():
                                acc = acc + t1 * self.G[a][e][c]
                            t2 = self.G[a][d][e]
                            if not t2.is_zero():
                                acc = acc - t2 * self.G[b][e][c]
                            t3 = self.C[a][b][e]
                            if not t3.is_zero():
                                acc = acc - t3 * self.G[e][d][c]
                        if not acc.is_zero():
                            R.set((c,), (a, b, d), acc)
                            R.set((c,), (b, a, d), -acc)
        self._cache["R"] = R
        return R

    def ricci(self) -> AltTensor:
        if "Ric" in self._cache:
            return self._cache["Ric"]
        R = self.curvature()
        out = AltTensor(self.dim, 0, 2, NONE, self.zero())
        for b in range(self.dim):
            for d in range(self.dim):
                acc = self.zero()
                for a in range(self.dim):
                    acc = acc + R.get((a,), (a, b, d))
                if not acc.is_zero():
                    out.set((), (b, d), acc)
        self._cache["Ric"] = out
        return out

    def schouten(self) -> AltTensor:
        if "P" in self._cache:
            return self._cache["P"]
        ric = self.ricci()
        out = ric.scale(self.lift(Fraction(1, self.dim - 1)))
        self._cache["P"] = out
        return out

    def weyl(self) -> AltTensor:
        if "W" in self._cache:
            return self._cache["W"]
        R = self.curvature()
        P = self.schouten()
        n = self.dim
        W = AltTensor(n, 1, 3, NONE, self.zero())
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        acc = R.get((c,), (a, b, d))
                        if c == a:
                            acc = acc - P.get((), (b, d))
                        if c == b:
                            acc = acc + P.get((), (a, d))
                        if not acc.is_zero():
                            W.set((c,), (a, b, d), acc)
        self._cache["W"] = W
        return W

    def cotton(self) -> AltTensor:
        """C_{abd} = nabla_a P_{bd} - nabla_b P_{ad}."""
        if "Cot" in self._cache:
            return self._cache["Cot"]
        P = self.schouten()
        dP = [self.cov_deriv(P, a) for a in range(self.dim)]
        out = AltTensor(self.dim, 0, 3, NONE, self.zero())
        for a in range(self.dim):
            for b in range(self.dim):
                for d in range(self.dim):
                    acc = dP[a].get((), (b, d)) - dP[b].get((), (a, d))
                    if not acc.is_zero():
                        out.set((), (a, b, d), acc)
        self._cache["Cot"] = out
        return out

    def weyl_trace_defects(self) -> Tuple[List[CoeffFn], List[CoeffFn]]:
        """Both traces of W: over (c,a) and over (c,d)."""
        W = self.weyl()
        t1, t2 = [], []
        for b in range(self.dim):
            for d in range(self.dim):
                acc = self.zero()
                for a in range(self.dim):
                    acc = acc + W.get((a,), (a, b, d))
                t1.append(acc)
        for a in range(self.dim):
            for b in range(self.dim):
                acc = self.zero()
                for c in range(self.dim):
                    acc = acc + W.get((c,), (a, b, c))
                t2.append(acc)
        return t1, t2

    def is_projectively_flat(self) -> bool:
        return self.weyl().is_zero() and self.cotton().is_zero()

    # -- constructions ----------------------------------------------------------

    @staticmethod
    def flat(dim: int, param: str = PLAIN, rho_directions=()) -> "FrameChart":
        return FrameChart(dim, param, rho_directions)

    def with_connection(self, G) -> "FrameChart":
        out = FrameChart(self.dim, self.param, self.rho_directions, self.labels)
        out.C = [[list(col) for col in row] for row in self.C]
        out.G = [[list(col) for col in row] for row in G] if isinstance(G, list) else G
        return out

    def levi_civita(self, g: AltTensor) -> "FrameChart":
        """Chart with the same brackets and the Levi-Civita connection of g."""
        n = self.dim
        gm = g.as_matrix()
        ginv = inverse_laurent(gm)
        half = self.lift(Fraction(1, 2))
        K = [[[self.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for c in range(n):
                for d in range(n):
                    # 2 g(nabla_a E_c, E_d)
                    acc = self.dir_deriv(a, gm[c][d]) + self.dir_deriv(c, gm[a][d]) \
                        - self.dir_deriv(d, gm[a][c])
                    for e in range(n):
                        f1 = self.C[a][c][e]
                        if not f1.is_zero():
                            acc = acc + f1 * gm[e][d]
                        f2 = self.C[a][d][e]
                        if not f2.is_zero():
                            acc = acc - f2 * gm[e][c]
                        f3 = self.C[c][d][e]
                        if not f3.is_zero():
                            acc = acc - f3 * gm[e][a]
                    K[a][c][d] = acc
        G = [[[self.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for c in range(n):
                for b in range(n):
                    acc = self.zero()
                    for d in range(n):
                        w = ginv[b][d]
                        if not w.is_zero():
                            acc = acc + w * K[a][c][d]
                    G[a][c][b] = acc * half
        out = FrameChart(self.dim, self.param, self.rho_directions, self.labels)
        out.C = [[list(col) for col in row] for row in self.C]
        out.G = G
        return out

    def change_scale(self, upsilon: List[CoeffFn]) -> "FrameChart":
        """Projective change nabla -> nabla + Upsilon terms (same geodesics).

        The new chart keeps the original frame trivialization, so its
        scale 1-form picks up Upsilon (weight-1 densities obey
        nabla-hat sigma = nabla sigma + Upsilon sigma)."""
        n = self.dim
        out = FrameChart(self.dim, self.param, self.rho_directions, self.labels)
        out.C = [[list(col) for col in row] for row in self.C]
        G = [[[self.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for c in range(n):
                for b in range(n):
                    acc = self.G[a][c][b]
                    if b == c:
                        acc = acc + upsilon[a]
                    if b == a:
                        acc = acc + upsilon[c]
                    G[a][c][b] = acc
        out.G = G
        out.weight_form = [self.weight_form[a] + upsilon[a] for a in range(n)]
        return out

    def exact_upsilon(self, f: CoeffFn) -> List[CoeffFn]:
        """Upsilon = df for a coefficient function f (components per direction)."""
        return [self.dir_deriv(a, f) for a in range(self.dim)]

    def substitute_param(self, param: str) -> "FrameChart":
        """Reinterpret a PLAIN chart in an s^2 parameterization of rho."""
        if self.param != PLAIN:
            raise ValueError("substitute_param expects a PLAIN chart")
        out = FrameChart(self.dim, param, self.rho_directions, self.labels)
        out.C = [[[v.substitute_rho(param) for v in col] for col in row] for row in self.C]
        out.G = [[[v.substitute_rho(param) for v in col] for col in row] for row in self.G]
        return out

    def d_exterior(self, form: AltTensor) -> AltTensor:
        """Frame exterior derivative of a covariant alternating form."""
        from itertools import combinations
        k = form.n_down
        out = AltTensor.form(self.dim, k + 1, self.zero())
        for idx in combinations(range(self.dim), k + 1):
            acc = self.zero()
            for pos in range(k + 1):
                rest = idx[:pos] + idx[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                term = self.dir_deriv(idx[pos], form.get((), rest))
                acc = acc + (term if sign > 0 else -term)
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    rest = tuple(x for p, x in enumerate(idx) if p not in (i, j))
                    sign = 1 if (i + j) % 2 == 0 else -1
                    br = self.C[idx[i]][idx[j]]
                    term = self.zero()
                    for e in range(self.dim):
                        f = br[e]
                        if not f.is_zero():
                            term = term + f * form.get((), (e,) + rest)
                    acc = acc + (term if sign > 0 else -term)
            if not acc.is_zero():
                out.set((), idx, acc)
        return out
