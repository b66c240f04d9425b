"""Command-line front end. JSON goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 invalid input, 2 request beyond the size caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .characters import character_table_row
from .combinatorics import Partition
from .dimension import asymptotic_ratio, degree_gate, slip_dim, slip_dim_symbolic
from .qstate import QuditState, random_state
from .schur_weyl import InfeasibleSize, build_basis, load_basis
from .sl2_ladder import degree6_five_qubit, degree6_polynomial
from .slip_qubit import BipartiteCut, f_ell
from .slocc import DEFAULT_TOL, compare

THREADS_ENV = "SLIPFORGE_THREADS"


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _complex(z) -> list[float]:
    return [float(z.real), float(z.imag)]


def _rational(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_dim(args):
    if args.dims is not None:
        dims = args.dims
        if not degree_gate(args.k, dims):
            return {"dimension": 0, "reason": "degree gate"}
        if len(set(dims)) == 1:
            return {"dimension": slip_dim(args.k, len(dims), dims[0])}
        if args.seed is None:
            raise UsageError("unequal dims are counted constructively and need --seed")
        return {"dimension": len(build_basis(dims, args.k, args.seed).tensors), "reason": "constructive rank"}
    if args.m is None:
        raise UsageError("give --m (with --n, --symbolic or --asymptotic) or --dims")
    if args.symbolic:
        return slip_dim_symbolic(args.k, args.m).to_json()
    if args.asymptotic is not None:
        return {"ratios": [_rational(q) for q in asymptotic_ratio(args.k, args.m, args.asymptotic)]}
    if args.n is None:
        raise UsageError("give --n")
    if args.k % args.m:
        return {"dimension": 0, "reason": "degree gate"}
    return {"dimension": slip_dim(args.k, args.n, args.m)}


def cmd_char(args):
    lam = Partition(tuple(args.lam))
    if lam.k != args.k:
        raise UsageError(f"lambda {lam} is not a partition of {args.k}")
    if not lam.is_rectangular():
        raise UsageError("only rectangular lambda are supported")
    return character_table_row(lam)


def cmd_basis(args):
    return build_basis(args.dims, args.k, args.seed, args.form).to_json()


def cmd_eval(args):
    manifest = _load_json(args.basis)
    psi = QuditState.load(args.state)
    if list(psi.dims) != list(manifest["dims"]):
        raise UsageError("state dims do not match the basis")
    return {"values": [_complex(v(psi)) for v in load_basis(manifest)]}


def cmd_qubit_slip(args):
    psi = QuditState.load(args.state)
    return {"value": _complex(f_ell(psi, BipartiteCut(tuple(args.cut), psi.n), args.ell))}


def cmd_d6q5(args):
    if args.dump_poly:
        with open(args.dump_poly, "w") as fh:
            fh.write(degree6_polynomial().dumps())
        return {"written": args.dump_poly, "terms": len(degree6_polynomial())}
    if not args.state:
        raise UsageError("give --state or --dump-poly")
    return {"value": _complex(degree6_five_qubit(QuditState.load(args.state)))}


def cmd_classify(args):
    a, b = QuditState.load(args.a), QuditState.load(args.b)
    return compare(a, b, args.degrees, args.tol, args.seed).to_json()


def cmd_random_state(args):
    return random_state(args.dims, args.seed).to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slipforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dim", help="dimension of degree-k SLIPs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--dims", type=_int_list)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--asymptotic", type=int, metavar="N_MAX")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("char", help="rectangular character table row")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("basis", help="seeded SLIP basis manifest")
    p.add_argument("--dims", type=_int_list, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--form", choices=["auto", "matching", "product"], default="auto")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("eval", help="evaluate a basis manifest at a state")
    p.add_argument("--basis", required=True)
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("qubit-slip", help="Tr[(U A V A^T)^ell] over a cut")
    p.add_argument("--state", required=True)
    p.add_argument("--cut", type=_int_list, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_qubit_slip)

    p = sub.add_parser("d6q5", help="degree-6 five-qubit invariant")
    p.add_argument("--state")
    p.add_argument("--dump-poly")
    p.set_defaults(func=cmd_d6q5)

    p = sub.add_parser("classify", help="SLOCC ratio test of two states")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--degrees", type=_int_list)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("random-state", help="seeded random normalized state")
    p.add_argument("--dims", type=_int_list, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_random_state)
    return parser


def _check_threads():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return
    try:
        ok = int(raw) >= 1
    except ValueError:
        ok = False
    if not ok:
        raise UsageError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}")


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        _check_threads()
        args = build_parser().parse_args(argv)
        result = args.func(args)
        text = json.dumps(result, allow_nan=False)
    except InfeasibleSize as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(text, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
