"""Command-line front end.

Exit status: 0 when every check passes (warnings allowed), 1 when any
check fails, 2 on parse or semantic errors in the input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, SemanticError, TwistFRTError
from .pipeline import COMMANDS, run_pipeline
from .specfile import PRESETS, parse_spec, preset_text

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _binding(items):
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise SemanticError(f"--param expects name=rational, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SemanticError(f"--param value {value!r} is not a rational number") from None
    return out


COMMAND_HELP = {
    "check-yb": "Yang-Baxter and spectral structure of B",
    "derive-bialgebra": "echelonized ideal, cross relations and confluence",
    "check-bialgebra": "coproduct, counit, coideal and comodule checks",
    "solve-twist": "solve the diagonal twist equations and verify the family",
    "check-hopf": "determinant, localization and antipode",
    "normal-form": "reduce an expression in the best certified system",
    "confluence": "critical pairs and normal-word counts per degree",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistfrt",
        description="Twisted FRT bialgebras: derive, check and report.",
    )
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--spec", type=Path, help="algebra spec file")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in spec")
    common.add_argument("--json", type=Path, metavar="PATH", help="write the JSON report here ('-' for stdout)")
    common.add_argument("--max-degree", type=int, default=None, help="confluence bound (default 4, or the spec's)")
    common.add_argument(
        "--param", action="append", metavar="NAME=VALUE", help="specialize a parameter to a rational value"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=COMMAND_HELP[name])
        if name == "normal-form":
            p.add_argument("expr", help="noncommutative expression, e.g. 'e1 b a'")
        if name == "confluence":
            p.add_argument("--figure", type=Path, help="save a plot of normal-word counts (png, pdf, svg)")
    sub.add_parser("presets", help="list built-in presets, or print one with --show")
    sub.choices["presets"].add_argument("--show", choices=sorted(PRESETS))
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "presets":
        if args.show:
            sys.stdout.write(PRESETS[args.show])
        else:
            sys.stdout.write("".join(f"{n}\n" for n in PRESETS))
        return EXIT_OK

    try:
        if args.spec is not None:
            text = args.spec.read_text(encoding="utf-8")
        else:
            text = preset_text(args.preset or "quantum-plane")
        spec = parse_spec(text)
        report = run_pipeline(
            spec,
            args.command,
            binding=_binding(args.param),
            max_degree=args.max_degree,
            expr=getattr(args, "expr", None),
            figure=getattr(args, "figure", None),
            spec_text=text,
        )
    except (ParseError, SemanticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TwistFRTError as exc:
        print(f"error in {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    if args.json is not None and str(args.json) == "-":
        sys.stdout.write(report.dumps())
    else:
        sys.stdout.write(report.text())
        if args.json is not None:
            args.json.write_text(report.dumps(), encoding="utf-8")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
