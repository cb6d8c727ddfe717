"""Command line interface.

Subcommands: classify-form, verify-family, orbit, monge-check, export.
Exit codes: 0 success / all checks pass, 1 verification failure,
2 invalid or degenerate input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .scalars import DegenerateError, QScalar
from .laurent import PLAIN


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(2) from exc


def _parse_samples(text: str):
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if chunk:
            out.append(QScalar(Fraction(chunk)))
    return out


def _default_samples():
    env = os.environ.get("G2TRAC_SAMPLES")
    if env:
        return _parse_samples(env)
    return None


def cmd_classify_form(args) -> int:
    from .laurent import CoeffFn
    from .tensor_io import load_tensor
    from .tensors import AltTensor
    from . import stable_forms as sf
    try:
        t = load_tensor(args.file)
        if isinstance(t.zero, CoeffFn):
            # pointwise classification of a coefficient-function tensor
            at = QScalar(Fraction(args.at))
            pt = AltTensor(t.dim, t.n_up, t.n_down, t.sym)
            for (up, down), v in t.comps.items():
                pt.set(up, down, v.eval(at))
            t = pt
    except (OSError, ValueError, KeyError) as exc:
        print(f"invalid tensor file: {exc}", file=sys.stderr)
        return 2
    dim = args.dim or t.dim
    if dim != t.dim:
        print(f"file has dim {t.dim}, --dim says {dim}", file=sys.stderr)
        return 2
    if dim == 6:
        info = sf.classify6(t)
        payload = {"dim": 6, "class": info["class"],
                   "lambda": str(info["lambda"]), "kernel_dim": info["kernel_dim"],
                   "stable": info["class"] in (sf.B1, sf.B2)}
        degenerate = not payload["stable"]
    elif dim == 7:
        H, vol, cls = sf.metric_from_3form7(t)
        payload = {"dim": 7, "class": cls}
        if cls != sf.DEGENERATE:
            payload["signature"] = list(H.signature_at(QScalar.one()))
            payload["metric_diagonal"] = [float(H.as_matrix()[i][i]) for i in range(7)]
        degenerate = cls == sf.DEGENERATE
    else:
        print("only dimensions 6 and 7 are supported", file=sys.stderr)
        return 2
    if args.report == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")
    return 2 if degenerate else 0


def _build_package(m: Fraction, samples):
    from .qm_family import FamilyParams, build_qm
    params = FamilyParams(m, samples=tuple(samples) if samples else ())
    return build_qm(params)


def cmd_verify_family(args) -> int:
    from .verify import verify
    try:
        m = Fraction(args.m)
    except (ValueError, ZeroDivisionError):
        print(f"invalid family parameter {args.m!r}", file=sys.stderr)
        return 2
    if m in (0, 1):
        print("the family parameter must avoid 0 and 1", file=sys.stderr)
        return 2
    samples = _parse_samples(args.samples) if args.samples else _default_samples()
    pkg = _build_package(m, samples)
    rep = verify(pkg, depth=args.depth, samples=samples)
    print(rep.to_json() if args.report == "json" else rep.to_text())
    return 0 if rep.all_ok() else 1


def cmd_orbit(args) -> int:
    from .geometry import npk_extract, npk_verify
    try:
        m = Fraction(args.m)
        s = Fraction(args.s)
    except (ValueError, ZeroDivisionError):
        print("invalid --m or --s", file=sys.stderr)
        return 2
    if m in (0, 1):
        print("the family parameter must avoid 0 and 1", file=sys.stderr)
        return 2
    pkg = _build_package(m, _default_samples())
    # s is the signed collar coordinate: the point has rho = s * |s|
    rho = QScalar(s * abs(s))
    tau_val = pkg.tau.eval(rho)       # PLAIN: the variable is rho itself
    sign = tau_val.sign()
    label = "M+" if sign > 0 else ("M-" if sign < 0 else "M0")
    payload = {"m": str(m), "s": str(s), "tau": float(tau_val), "orbit": label}
    if sign != 0:
        orb = npk_extract(pkg, 1 if sign > 0 else -1)
        rep = npk_verify(orb)
        payload.update({
            "eps": rep.eps,
            "killing_yano_residual_zero": rep.ky_residual_zero,
            "einstein_residual_zero": rep.einstein_zero,
            "alpha": str(rep.alpha),
            "scalar_curvature_sign": rep.scalar_curvature_sign,
            "weyl_identity_zero": rep.weyl_identity_zero,
            "nabla_j_norm": str(rep.nabla_j_norm),
        })
    if args.report == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")
    return 0


def cmd_monge_check(args) -> int:
    from .coordfields import monge_check, parse_monge_polynomial
    try:
        F = parse_monge_polynomial(args.poly)
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        print(f"cannot parse polynomial: {exc}", file=sys.stderr)
        return 2
    res = monge_check(F)
    if args.report == "json":
        print(json.dumps(res, indent=2, sort_keys=True, default=str))
    else:
        print(f"is235: {res['is235']}")
        for s in res["samples"]:
            print(f"  point {s['point']}: growth {s['growth']}, "
                  f"d2F/dq2 nonzero: {s['fqq_nonzero']}")
    return 0 if res["is235"] else 1


def cmd_export(args) -> int:
    from .tensor_io import tensor_to_json
    from .tensors import AltTensor, NONE
    try:
        m = Fraction(args.m)
    except (ValueError, ZeroDivisionError):
        print("invalid --m", file=sys.stderr)
        return 2
    if m in (0, 1):
        print("the family parameter must avoid 0 and 1", file=sys.stderr)
        return 2
    pkg = _build_package(m, None)
    full = pkg.phi.full(pkg.chart.zero())
    Jt = AltTensor(6, 1, 1, NONE, pkg.chart.zero())
    for a in range(6):
        for b in range(6):
            if not pkg.J[a][b].is_zero():
                Jt.set((a,), (b,), pkg.J[a][b])
    docs = {"phi": tensor_to_json(full, PLAIN),
            "H": tensor_to_json(pkg.H, PLAIN),
            "J": tensor_to_json(Jt, PLAIN)}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, doc in docs.items():
            path = os.path.join(args.out, f"{name}_m_{m.numerator}_{m.denominator}.json")
            with open(path, "w") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
            print(path)
    else:
        print(json.dumps(docs, indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="g2trac", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify-form", help="orbit type of a 3-form (dim 6 or 7)")
    p.add_argument("--file", required=True)
    p.add_argument("--dim", type=int, choices=(6, 7))
    p.add_argument("--at", default="1",
                   help="evaluation point for coefficient-function tensors")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_classify_form)

    p = sub.add_parser("verify-family", help="run the verification battery at a parameter")
    p.add_argument("--m", required=True, help="rational family parameter P/Q")
    p.add_argument("--depth", choices=("quick", "full"), default="full")
    p.add_argument("--samples", help="comma-separated rational s samples")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify_family)

    p = sub.add_parser("orbit", help="orbit data at a collar point")
    p.add_argument("--m", required=True)
    p.add_argument("--s", required=True,
                   help="signed collar coordinate; the point has rho = s|s|")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("monge-check", help="bracket growth of a Monge-form distribution")
    p.add_argument("--poly", required=True, help="polynomial in x, y, p, q, z")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_monge_check)

    p = sub.add_parser("export", help="dump a package's 3-form, metric and endomorphism")
    p.add_argument("--m", required=True)
    p.add_argument("--out", help="directory for JSON files (stdout if omitted)")
    p.set_defaults(fn=cmd_export)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except DegenerateError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
