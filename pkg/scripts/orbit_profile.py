#!/usr/bin/env python3
"""Profile the curved-orbit structures along a transverse path.

Usage:
    python scripts/orbit_profile.py --m 1/2 [--points "-2,-1,0,1,2"]

Prints tau, the orbit label, and (off the zero locus) the Einstein
constant, scalar-curvature sign and the invariant energy of the
canonical structure, all from exact data (floats only in the display).
"""

import argparse
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from g2trac.geometry import npk_extract, npk_verify
from g2trac.qm_family import FamilyParams, build_qm
from g2trac.scalars import QScalar


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", required=True)
    ap.add_argument("--points", default="-2,-1,0,1,2",
                    help="signed collar coordinates s; the point has rho = s|s|")
    args = ap.parse_args()
    m = Fraction(args.m)
    pkg = build_qm(FamilyParams(m))
    cache = {}
    print(f"family parameter m = {m}; tau = {pkg.tau}")
    for chunk in args.points.split(","):
        s = Fraction(chunk)
        rho = QScalar(s * abs(s))
        tau = pkg.tau.eval(rho)
        sign = tau.sign()
        label = "M+" if sign > 0 else ("M-" if sign < 0 else "M0")
        line = f"  s = {str(s):>5}  tau = {float(tau):+9.4f}  {label}"
        if sign != 0:
            if sign not in cache:
                cache[sign] = npk_verify(npk_extract(pkg, sign))
            rep = cache[sign]
            kind = "nearly Kahler" if rep.eps == -1 else "nearly para-Kahler"
            line += (f"  {kind}: alpha = {rep.alpha}, Sc sign {rep.scalar_curvature_sign:+d},"
                     f" <dJ,dJ> = {rep.nabla_j_norm}")
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
