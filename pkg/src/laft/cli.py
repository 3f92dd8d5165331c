"""``laft`` command line.

Exit codes: 0 success, 1 usage or syntax errors (and failed verify runs),
2 domain errors, reported as ``ErrorName: message`` on stderr.
"""

from __future__ import annotations

import argparse
import sys

from .classes import ConnectionObject, normalize
from .compose import comp_inverse
from .errors import DomainError, ExprSyntaxError, RootUnavailable
from .exprio import format_series, parse_series, to_json
from .field import make_field
from .fourier import TransformKind, transform_connection
from .series import Var
from .verify import SUITES, run_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="laft", description="Local Fourier transforms of formal connections.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transform", help="apply a local Fourier transform to a class")
    t.add_argument("--kind", required=True, choices=[k.value for k in TransformKind])
    t.add_argument("--f", required=True, help='series such as "-4*z^-1"')
    t.add_argument("--jordan", type=int, default=1, help="Jordan block size m")
    t.add_argument("--backend", choices=["rational", "complex"], default="rational")
    t.add_argument("--prec", type=int, default=None, help="bits for the complex backend")
    t.add_argument("--json", action="store_true")

    n = sub.add_parser("normalize", help="project a series to its canonical class")
    n.add_argument("--f", required=True)
    n.add_argument("--q", required=True, type=int)
    n.add_argument("--backend", choices=["rational", "complex"], default="rational")
    n.add_argument("--prec", type=int, default=None)

    i = sub.add_parser("invert", help="compositional inverse of a Laurent series")
    i.add_argument("--f", required=True)
    i.add_argument("--order", type=int, default=10, help="terms on the output grid")
    i.add_argument("--backend", choices=["rational", "complex"], default="rational")
    i.add_argument("--prec", type=int, default=None)

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    return parser


def _field(args):
    return make_field(args.backend, args.prec)


def _cmd_transform(args) -> int:
    kind = TransformKind(args.kind)
    default_var = Var.Z if kind is TransformKind.ZERO_INF else Var.ZETA
    f = parse_series(args.f, default_var=default_var, field=_field(args))
    e = ConnectionObject(((normalize(f), args.jordan),))
    out = transform_connection(e, kind)
    cls, m = out.summands[0]
    if args.json:
        print(to_json(cls, jordan=m))
    else:
        print(str(cls) if m == 1 else f"{cls}  [jordan {m}]")
    return 0


def _cmd_normalize(args) -> int:
    f = parse_series(args.f, field=_field(args))
    print(normalize(f, args.q))
    return 0


def _cmd_invert(args) -> int:
    f = parse_series(args.f, field=_field(args))
    print(format_series(comp_inverse(f, order=args.order)))
    return 0


def _cmd_verify(args) -> int:
    result = run_suite(args.suite, trials=args.trials, seed=args.seed)
    for line in result.lines():
        print(line)
    return 0 if result.ok else 1


COMMANDS = {
    "transform": _cmd_transform,
    "normalize": _cmd_normalize,
    "invert": _cmd_invert,
    "verify": _cmd_verify,
}


def _glue_values(argv):
    # series such as "-4*z^-1" start with "-"; keep argparse from reading
    # them as options
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--f":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--f={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ExprSyntaxError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        if isinstance(exc, RootUnavailable):
            print("hint: rerun with --backend complex", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
