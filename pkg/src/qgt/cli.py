"""Command-line entry point: ``qgt COMMAND FILE``; see ``qgt --help``."""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import report
from .algebra import NotFiniteDimensionalWithinCap
from .hat import ExcludedQuiver, InvalidWeights
from .scalars import ScalarParseError
from .specfile import ParseError, SemanticError, parse_spec, parse_weights_option

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3


def corpus_names():
    root = resources.files("qgt") / "corpus"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".qgt"))


def read_source(arg: str) -> str:
    if arg.startswith("corpus:"):
        name = arg.split(":", 1)[1]
        res = resources.files("qgt") / "corpus" / f"{name}.qgt"
        if not res.is_file():
            raise FileNotFoundError(f"no corpus entry {name!r}; available: {', '.join(corpus_names())}")
        return res.read_text()
    if arg == "-":
        return sys.stdin.read()
    return Path(arg).read_text()


def _parser():
    p = argparse.ArgumentParser(prog="qgt", description="Exact checks for weighted surface algebras and their extensions.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("file", help="spec file, '-' for stdin, or corpus:NAME")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--json", metavar="OUT", help="also write the JSON report to OUT")

    b = sub.add_parser("build", help="build the algebra and report dimensions and Gabriel quiver")
    common(b)
    b.add_argument("--emit-relations", action="store_true")

    c = sub.add_parser("check", help="run verification suites")
    common(c)
    c.add_argument("--suite", choices=("all",) + report.SUITES, default="all")
    c.add_argument("--weights", help="hat weights, e.g. m1=2,mp1=3 (overrides the file)")
    c.add_argument("--max-steps", type=int, default=8)
    c.add_argument("--t", action="append", default=None, help="extra parameter value for the degeneration suite")

    a = sub.add_parser("analyze", help="quiver structure, blocks, orbits and degrees")
    common(a)

    s = sub.add_parser("basis", help="basis and socle data of one indecomposable projective")
    common(s)
    s.add_argument("--vertex", type=int, required=True)

    pe = sub.add_parser("period", help="periods of the simple modules")
    common(pe)
    pe.add_argument("--max", type=int, default=8, dest="max_steps", help="largest period to search for")

    h = sub.add_parser("hat", help="build the hat algebra and run its checks")
    common(h)
    h.add_argument("--weights", help="hat weights, e.g. m1=2,mp1=3 (overrides the file)")
    h.add_argument("--max-steps", type=int, default=8)

    d = sub.add_parser("degenerate", help="one-parameter family and its degree data")
    common(d)
    d.add_argument("--t", action="append", default=None, help="parameter value (repeatable); default 0, 1, 2")
    d.add_argument("--weights", help="hat weights used when the file has a hat line")

    sub.add_parser("corpus", help="list bundled examples")
    return p


def _emit(args, rep, out):
    text = report.to_json(rep)
    if args.json:
        Path(args.json).write_text(text)
    out.write(text if args.format == "json" else report.to_text(rep))


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    if args.cmd == "corpus":
        out.write("\n".join(corpus_names()) + "\n")
        return EXIT_OK
    try:
        spec = parse_spec(read_source(args.file))
        override = parse_weights_option(args.weights) if getattr(args, "weights", None) else None
    except (ParseError, SemanticError, ScalarParseError, OSError) as exc:
        print(f"qgt: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.cmd == "basis":
            rep = report.basis_report(spec, args.vertex)
            text = report.json.dumps(rep, sort_keys=True, indent=2) + "\n"
            if args.json:
                Path(args.json).write_text(text)
            out.write(text if args.format == "json" else "\n".join(f"{k}: {v}" for k, v in sorted(rep.items())) + "\n")
            return EXIT_OK
        if args.cmd == "build":
            rep = report.run_suites(spec, ("wsa",), emit_relations=args.emit_relations)
        elif args.cmd == "analyze":
            rep = report.run_suites(spec, ("analyze",))
        elif args.cmd == "period":
            rep = report.run_suites(spec, ("period",), max_steps=args.max_steps)
        elif args.cmd == "hat":
            rep = report.run_suites(spec, ("hat",), max_steps=args.max_steps, override=override)
        elif args.cmd == "degenerate":
            rep = report.run_suites(spec, ("degenerate",), override=override, ts=tuple(args.t or ("0", "1", "2")))
        else:
            ts = ("0", "1", "2") + tuple(args.t or ())
            rep = report.run_suites(spec, report.suites_for(spec, args.suite), max_steps=args.max_steps,
                                    override=override, ts=ts)
    except (SemanticError, ScalarParseError, ExcludedQuiver, InvalidWeights) as exc:
        print(f"qgt: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyError as exc:
        print(f"qgt: unknown vertex or arrow {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotFiniteDimensionalWithinCap, ArithmeticError, ValueError, AssertionError, NotImplementedError) as exc:
        print(f"qgt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(args, rep, out)
    return EXIT_FAIL if report.failed(rep) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
