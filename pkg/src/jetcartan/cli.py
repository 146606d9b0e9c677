"""Command-line front end.

Subcommands mirror the package layout: ``poly``, ``vf``, ``group``, ``ad``,
``spencer``, ``frame``, ``ops`` operate on canonically serialized objects
(files or stdin), and ``suite`` runs the deterministic verification suites.

Exit codes: 0 = pass, 1 = a check or residual failed, 2 = usage error
(bad arguments, malformed input, unknown suite).  The default seed comes
from the JETCARTAN_SEED environment variable when set.
"""

import argparse
import os
import sys
from fractions import Fraction

from .errors import JetError, SerializationError, UnknownSuite
from .poly import TruncPoly
from .maps import PolyMap
from .vf import VFJet, bracket
from .spencer import (SpencerCochain, partial, complex_certificate,
                      solve_preimage)
from . import jet_group as jg
from . import adjoint
from .frames import (frame_form, structure_residual, bianchi_residual,
                     ProlongedFrame, torsion, reduce as frame_reduce)
from .ops import (Deformation, BundleAutomorphism, D_theta_auto, D_theta_def,
                  auto_mul, def_compose, develop, cech_from_deformation,
                  lagrangian_density, project_bar, is_prolongation)
from . import serialize
from .suites import run_suite, SUITES


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load(path):
    return serialize.loads(_read(path))


def _emit(args, obj):
    text = obj if isinstance(obj, str) else serialize.dumps(obj) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(name, ok, extra=""):
    line = f"{name}: {'pass' if ok else 'fail'}"
    if extra:
        line += f" ({extra})"
    print(line, file=sys.stderr)
    return 0 if ok else 1


def _parse_point(text, n):
    if not text:
        return (Fraction(0),) * n
    parts = [Fraction(p) for p in text.split(",")]
    if len(parts) != n:
        raise SerializationError(f"point needs {n} coordinates")
    return tuple(parts)


# -- subcommand handlers -----------------------------------------------------


def _cmd_poly(args):
    if args.action == "mul":
        a, b = _load(args.files[0]), _load(args.files[1])
        _emit(args, a * b)
    elif args.action == "invert":
        _emit(args, _load(args.files[0]).inverse())
    elif args.action == "compose":
        f, g = _load(args.files[0]), _load(args.files[1])
        _emit(args, f.after(g))
    elif args.action == "project":
        _emit(args, _load(args.files[0]).project(args.order or 1))
    return 0


def _cmd_vf(args):
    if args.action == "bracket":
        X, Y = _load(args.files[0]), _load(args.files[1])
        _emit(args, bracket(X, Y))
    elif args.action == "grades":
        X = _load(args.files[0])
        print(" ".join(str(g) for g in X.grades()))
    return 0


def _cmd_group(args):
    if args.action == "mul":
        _emit(args, jg.mul(_load(args.files[0]), _load(args.files[1])))
    elif args.action == "inv":
        _emit(args, jg.inv(_load(args.files[0])))
    elif args.action == "project":
        _emit(args, jg.project(_load(args.files[0]), args.order or 1))
    elif args.action == "factor":
        levels = jg.factor(_load(args.files[0]))
        _emit(args, "\n".join(serialize.dumps(l) for l in levels) + "\n")
    elif args.action == "exp":
        _emit(args, jg.exp(_load(args.files[0])))
    elif args.action == "log":
        _emit(args, jg.log(_load(args.files[0])))
    return 0


def _cmd_ad(args):
    g = _load(args.files[0])
    x = _load(args.files[1])
    if isinstance(x, SpencerCochain):
        _emit(args, adjoint.ad_on_cochain(g, x))
    else:
        _emit(args, adjoint.ad(g, x))
    return 0


def _cmd_spencer(args):
    if args.action == "partial":
        _emit(args, partial(_load(args.files[0])))
        return 0
    if args.action == "ranks":
        n = args.n or 2
        k = args.k if args.k is not None else 1
        cert = complex_certificate(n, k)
        print(f"n: {n}")
        print(f"k: {k}")
        print(f"dims: {' '.join(str(d) for d in cert['dims'])}")
        print(f"ranks: {' '.join(str(r) for r in cert['ranks'])}")
        return _report("exact", cert["exact"])
    if args.action == "solve":
        target = _load(args.files[0])
        k = args.k if args.k is not None else 1
        s = solve_preimage(target, k)
        _emit(args, s)
        return _report("preimage", partial(s) == target)
    return 2


def _cmd_frame(args):
    if args.action == "form":
        _emit(args, frame_form(_load(args.files[0]), args.j))
        return 0
    if args.action == "structure":
        r = structure_residual(_load(args.files[0]))
        _emit(args, r)
        return _report("structure-residual-zero", r.is_zero())
    if args.action == "bianchi":
        r = bianchi_residual(_load(args.files[0]))
        _emit(args, r)
        return _report("bianchi-residual-zero", r.is_zero())
    frame = _load(args.files[0])
    shift = _load(args.files[1])
    p = ProlongedFrame(frame, shift)
    if args.action == "torsion":
        _emit(args, torsion(p))
        return 0
    if args.action == "reduce":
        r = frame_reduce(p)
        _emit(args, r.shift)
        return _report("torsion-zero", torsion(r).is_zero())
    return 2


def _cmd_ops(args):
    if args.action == "dtheta-f":
        f = _load(args.files[0])
        mu = D_theta_auto(f)
        _emit(args, mu)
        return _report("flat", D_theta_def(mu).is_zero())
    if args.action == "dtheta-mu":
        mu = _load(args.files[0])
        D = D_theta_def(mu)
        _emit(args, D)
        return _report("flat", D.is_zero())
    if args.action == "compose":
        a, b = _load(args.files[0]), _load(args.files[1])
        if isinstance(a, Deformation):
            _emit(args, def_compose(a, b))
        else:
            _emit(args, auto_mul(a, b))
        return 0
    if args.action == "develop":
        mu = _load(args.files[0])
        point = _parse_point(args.point, mu.ctx.n)
        dev = develop(mu, point, order=args.order or 4)
        _emit(args, dev.auto)
        return _report("exact", dev.exact, f"order {dev.order}")
    if args.action == "cech":
        mu = _load(args.files[0])
        from .suites import _CECH_CENTERS, _CECH_SAMPLES
        cc = cech_from_deformation(mu, _CECH_CENTERS, _CECH_SAMPLES,
                                   order=args.order or 7)
        ok = all(is_prolongation(f) for f in cc.overlaps.values())
        for (i, j) in sorted(cc.overlaps):
            print(f"overlap {i}{j}: "
                  f"{'prolongation' if is_prolongation(cc.overlaps[(i, j)]) else 'gauge'}")
        return _report("cocycle", ok, f"{len(cc.overlaps)} overlaps")
    if args.action == "lagrangian":
        beta = _load(args.files[0])
        mu = _load(args.files[1])
        point = _parse_point(args.point, mu.ctx.n)
        v = lagrangian_density(beta, mu, point)
        print(f"density: {v}")
        return 0
    if args.action == "project-bar":
        mu = _load(args.files[0])
        bc = project_bar(mu)
        _emit(args, bc.lower)
        print("top: " + " ".join(serialize.dumps(t) for t in bc.top))
        return 0
    return 2


def _cmd_suite(args):
    report = run_suite(args.name, n=args.n, k=args.k, order=args.order,
                       seed=args.seed, cases=args.cases)
    text = report.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------


def _common(p, files=0):
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--seed", type=int,
                   default=int(os.environ.get("JETCARTAN_SEED", "0")))
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--out", default=None)
    if files:
        p.add_argument("files", nargs="*" if files < 0 else files,
                       help="serialized input files ('-' for stdin)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="jetcartan",
        description="Exact jet-calculus toolkit: truncated polynomial "
                    "algebra, jet groups, Spencer complexes, frame "
                    "geometry, and nonlinear Spencer operators over Q.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("poly", help="truncated polynomials and maps")
    p.add_argument("action", choices=["mul", "invert", "compose", "project"])
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_poly)

    p = sub.add_parser("vf", help="vector-field jets")
    p.add_argument("action", choices=["bracket", "grades"])
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_vf)

    p = sub.add_parser("group", help="jet groups")
    p.add_argument("action",
                   choices=["mul", "inv", "project", "factor", "exp", "log"])
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("ad", help="adjoint action (g, X-or-cochain)")
    _common(p, files=2)
    p.set_defaults(fn=_cmd_ad)

    p = sub.add_parser("spencer", help="Spencer complex")
    p.add_argument("action", choices=["partial", "ranks", "solve"])
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_spencer)

    p = sub.add_parser("frame", help="jet frames and the frame form")
    p.add_argument("action",
                   choices=["form", "structure", "bianchi", "torsion",
                            "reduce"])
    p.add_argument("--j", type=int, default=0,
                   help="parameter direction for the frame form")
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_frame)

    p = sub.add_parser("ops", help="nonlinear Spencer operators")
    p.add_argument("action",
                   choices=["dtheta-f", "dtheta-mu", "compose", "develop",
                            "cech", "lagrangian", "project-bar"])
    p.add_argument("--point", default="",
                   help="chart point as comma-separated rationals")
    _common(p, files=-1)
    p.set_defaults(fn=_cmd_ops)

    p = sub.add_parser("suite", help="deterministic verification suites")
    p.add_argument("name", choices=sorted(SUITES))
    _common(p)
    p.set_defaults(fn=_cmd_suite)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        # argparse exits 2 on usage errors and 0 on --help; pass through
        return ex.code
    try:
        return args.fn(args)
    except (SerializationError, UnknownSuite, FileNotFoundError,
            IndexError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except JetError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
