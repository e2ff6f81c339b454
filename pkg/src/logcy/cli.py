"""Command line: ``logcy <command> --in surface.json``.

Exit status: 0 on success, 1 when a verification finds a counterexample,
2 on usage or input errors.
"""
import argparse
import sys

from . import bridge, emit
from .destab import destab_pipeline_run
from .classify import classify_nontoric_blowdown
from .errors import LcyError
from .fan import mmp_reduce
from .io import dumps, emit_fibration_doc, parse_surface_doc, surface_doc
from .picard import toric_cohomology

VERIFY_CHOICES = ["monodromy", "bridge", "elemtrans", "stab", "torus", "all"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _parser():
    p = _Parser(prog="logcy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def io_args(sp, need_in=True):
        sp.add_argument("--in", dest="inp", default="-" if not need_in else None,
                        help="input document (default: stdin)")
        sp.add_argument("--out", default="-", help="output path (default: stdout)")
        sp.add_argument("--canonical", action="store_true", help="canonical byte form")

    io_args(sub.add_parser("build", help="surface -> fibration document"), False)
    v = sub.add_parser("verify", help="run a certificate on a surface or a random corpus")
    v.add_argument("check", nargs="?", default="all", choices=VERIFY_CHOICES)
    v.add_argument("--corpus", type=int, default=None, metavar="N")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--kmax", type=int, default=12)
    io_args(v, False)
    io_args(sub.add_parser("classify", help="non-toric blow-down report"), False)
    io_args(sub.add_parser("destab", help="fibration after the destabilisation scripts"), False)
    io_args(sub.add_parser("mmp", help="toric minimal model of the fan"), False)
    c = sub.add_parser("cohomology", help="h0 h1 h2 of a toric divisor")
    c.add_argument("--divisor", required=True, help="comma separated coefficients a1,...,ak")
    io_args(c, False)
    e = sub.add_parser("emit", help="almost-toric base, handlebody data or SVG")
    e.add_argument("what", choices=["base", "handlebody", "svg"])
    io_args(e, False)
    return p


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_checks(models, names):
    results, ok = [], True
    for idx, model in enumerate(models):
        for name in names:
            if name == "torus" and model.total_m:
                continue
            cert = bridge.CHECKS[name](model)
            ok &= cert.passed
            if not cert.passed:
                d = cert.to_dict()
                d["model"] = surface_doc(model)
                results.append(d)
    return ok, results


def _verify(args):
    names = [n for n in VERIFY_CHOICES if n != "all"] if args.check == "all" else [args.check]
    if args.corpus is not None:
        models = bridge.random_corpus(args.corpus, seed=args.seed, kmax=args.kmax)
        if "torus" in names:
            models += bridge.random_corpus(args.corpus, seed=args.seed, kmax=args.kmax, toric=True)
        ok, failures = _run_checks(models, names)
        seed = bridge.corpus_seed() if args.seed is None else args.seed
        doc = {"kind": "corpus", "checks": names, "models": len(models), "seed": seed,
               "passed": ok, "failures": failures, "class_level_only": True}
        return doc, ok
    model, _ = parse_surface_doc(_read(args.inp))
    if args.check == "all":
        certs = [bridge.CHECKS[n](model).to_dict() for n in names if n != "torus" or not model.total_m]
        ok = all(c["passed"] for c in certs)
        return {"kind": "certificates", "passed": ok, "certificates": certs}, ok
    cert = bridge.CHECKS[args.check](model)
    return cert.to_dict(), cert.passed


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status = 0
        if args.cmd == "verify":
            doc, ok = _verify(args)
            status = 0 if ok else 1
            _write(args.out, dumps(doc, args.canonical))
            return status
        if args.cmd == "cohomology":
            model, _ = parse_surface_doc(_read(args.inp))
            try:
                a = [int(x) for x in args.divisor.split(",")]
            except ValueError:
                print("logcy: error: --divisor takes comma separated integers", file=sys.stderr)
                return 2
            h = toric_cohomology(model.fan, a)
            _write(args.out, " ".join(str(x) for x in h) + "\n")
            return 0
        model, _ = parse_surface_doc(_read(args.inp))
        if args.cmd == "build":
            text = dumps(emit_fibration_doc(bridge.build_standard(model)), args.canonical)
        elif args.cmd == "classify":
            text = dumps(classify_nontoric_blowdown(model).to_dict(), args.canonical)
        elif args.cmd == "destab":
            run = destab_pipeline_run(model, classify_nontoric_blowdown(model))
            doc = emit_fibration_doc(run.fibration)
            doc["deleted_nonzero"] = run.deleted_nonzero
            text = dumps(doc, args.canonical)
        elif args.cmd == "mmp":
            res = mmp_reduce(model.fan)
            text = dumps({"kind": "mmp", "minimal": res.name, "rays": res.fan.to_list(),
                          "trace": [list(t) for t in res.trace]}, args.canonical)
        else:
            if args.what == "svg":
                text = emit.emit_svg(model)
            elif args.what == "base":
                text = dumps(emit.emit_almost_toric(model), args.canonical)
            else:
                text = dumps(emit.emit_handlebody(model), args.canonical)
        _write(args.out, text)
        return status
    except LcyError as exc:
        print(f"logcy: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"logcy: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
