"""Command-line front end: ``lcinv <command> ...`` or ``python -m lcinv``.

Exit status: 0 on success, 1 when a verification fails (``check``,
strict ``canon`` on an ambiguous class), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .clifford import action_table
from .fingerprint import (
    CodeError,
    StabilizerCode,
    compare,
    deviation,
    fingerprint,
    projector,
    verdict_line,
)
from .formats import FormatError, fmt_complex, fmt_real, parse_matrix
from .invariants import eval_gamma, qubit_count, x_transform
from .limits import CapExceeded, Limits
from .normal_form import (
    NormalFormError,
    OrbitMatrix,
    bounds_dnr,
    canonicalize,
    count_dnr,
    enumerate_normal_forms,
    gamma_from_matrix,
)
from .orbits import enumerate_Or, orbit_members
from .verify import verify_suite


class UsageError(Exception):
    """Bad input; reported on one line with exit status 2."""


def _positive(name: str):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be at least 1, got {v}")
        return v
    return parse


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tol must be a number, got {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError("tol must be non-negative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostic, exit 2
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("resource limits (defaults from LCINV_* environment variables)")
    g.add_argument("--threads", type=_positive("threads"), default=1, help="worker threads")
    g.add_argument("--max-dense-dim", type=_positive("max-dense-dim"))
    g.add_argument("--max-enum-cells", type=_positive("max-enum-cells"))
    g.add_argument("--max-enum-candidates", type=_positive("max-enum-candidates"))
    g.add_argument("--max-burnside-r", type=_positive("max-burnside-r"))
    g.add_argument("--max-burnside-n", type=_positive("max-burnside-n"))

    p = _Parser(prog="lcinv", description="Local-Clifford polynomial invariants of qubit operators.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("orbits", parents=[common], help="count or list the orbits O_r")
    s.add_argument("--r", type=_positive("r"), required=True)
    s.add_argument("--list", action="store_true", help="print one orbit per line")

    s = sub.add_parser("dims", parents=[common], help="number of normal forms d_{n,r}")
    s.add_argument("--n", type=_positive("n"), required=True)
    s.add_argument("--r", type=_positive("r"), required=True)
    s.add_argument("--method", choices=["enumeration", "burnside"], default="enumeration")
    s.add_argument("--bounds", action="store_true", help="also print the lower and upper bounds")

    s = sub.add_parser("normal-forms", parents=[common], help="list all normal forms")
    s.add_argument("--n", type=_positive("n"), required=True)
    s.add_argument("--r", type=_positive("r"), required=True)

    s = sub.add_parser("canon", parents=[common], help="normal form of an orbit matrix file")
    s.add_argument("--matrix", required=True, help="file: 'n r' then n rows of r digits")
    s.add_argument("--no-strict", action="store_true",
                   help="pick the least normal form when a class holds several")

    s = sub.add_parser("eval", parents=[common], help="evaluate invariants on a matrix file")
    s.add_argument("--input", required=True, help="matrix file: 'n' then 2^n rows of re,im")
    s.add_argument("--r", type=_positive("r"), required=True)
    which = s.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="every normal form (default)")
    which.add_argument("--gamma", help="one orbit matrix as digit rows, e.g. 011/123")
    s.add_argument("--unsigned", action="store_true",
                   help="plain orbit sums (not invariant when a row uses each label an odd number of times)")

    s = sub.add_parser("fingerprint", parents=[common], help="invariant fingerprint, optionally compared")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--stabilizer", help="file: 'n k' then k lines like +0011")
    src.add_argument("--input", help="matrix file")
    s.add_argument("--max-degree", type=_positive("max-degree"), default=3)
    s.add_argument("--compare", metavar="FILE2", help="second file of the same kind")
    s.add_argument("--tol", type=_tol, default=1e-9)

    s = sub.add_parser("check", parents=[common], help="run the self-verification suite")
    s.add_argument("--n", type=_positive("n"), required=True)
    s.add_argument("--r", type=_positive("r"), required=True)
    s.add_argument("--trials", type=_positive("trials"), default=20)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--tol", type=_tol, default=1e-9)

    sub.add_parser("action-table", parents=[common], help="the 24 one-qubit conjugation actions")
    return p


def _limits(args) -> Limits:
    return Limits.from_env().replace(
        max_dense_dim=args.max_dense_dim,
        max_enum_cells=args.max_enum_cells,
        max_enum_candidates=args.max_enum_candidates,
        max_burnside_r=args.max_burnside_r,
        max_burnside_n=args.max_burnside_n,
    )


def _read(path: str, what: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{what}: cannot read {path}: {exc.strerror}") from None


def _load_matrix(path: str, what: str = "--input"):
    try:
        return parse_matrix(_read(path, what))
    except FormatError as exc:
        raise UsageError(f"{what} {path}: {exc}") from None


def _load_code(path: str, what: str = "--stabilizer") -> StabilizerCode:
    try:
        return StabilizerCode.from_text(_read(path, what))
    except CodeError as exc:
        raise UsageError(f"{what} {path}: {exc}") from None


def _cmd_orbits(args, out) -> int:
    ds = enumerate_Or(args.r)
    if not args.list:
        print(len(ds), file=out)
        return 0
    for d in ds:
        print(f"{d} size={len(orbit_members(d))}", file=out)
    return 0


def _cmd_dims(args, out) -> int:
    print(count_dnr(args.n, args.r, args.method, _limits(args)), file=out)
    if args.bounds:
        lower, upper = bounds_dnr(args.n, args.r)
        print(f"lower={lower} ({fmt_real(float(lower))}) upper={upper}", file=out)
    return 0


def _cmd_normal_forms(args, out) -> int:
    blocks = [M.to_text() for M in enumerate_normal_forms(args.n, args.r, _limits(args))]
    out.write("\n".join(blocks))
    return 0


def _cmd_canon(args, out) -> int:
    try:
        M = OrbitMatrix.from_text(_read(args.matrix, "--matrix"))
        N = canonicalize(M, strict=not args.no_strict)
    except NormalFormError as exc:
        print(f"lcinv: canon: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(f"--matrix {args.matrix}: {exc}") from None
    out.write(N.to_text())
    return 0


def _cmd_eval(args, out) -> int:
    rho = _load_matrix(args.input)
    n = qubit_count(rho)
    if args.gamma:
        try:
            M = OrbitMatrix.from_digits(args.gamma)
            g = gamma_from_matrix(M)
        except ValueError as exc:
            raise UsageError(f"--gamma: {exc}") from None
        if M.n != n or M.r != args.r:
            raise UsageError(f"--gamma: shape {M.n}x{M.r} does not match n={n}, r={args.r}")
        targets = [M]
    else:
        targets = enumerate_normal_forms(n, args.r, _limits(args))
    x = x_transform(rho)
    for M in targets:
        v = eval_gamma(x, gamma_from_matrix(M), signed=not args.unsigned)
        print(f"{M.digits()} {fmt_complex(v)}", file=out)
    return 0


def _cmd_fingerprint(args, out) -> int:
    limits = _limits(args)

    def load(path: str, what: str):
        if args.stabilizer is not None:
            return projector(_load_code(path, what), limits)
        return _load_matrix(path, what)

    first = args.stabilizer if args.stabilizer is not None else args.input
    kind = "--stabilizer" if args.stabilizer is not None else "--input"
    a = fingerprint(load(first, kind), args.max_degree, args.threads, limits)
    out.write(a.to_text())
    if args.compare:
        b = fingerprint(load(args.compare, "--compare"), args.max_degree, args.threads, limits)
        if b.n != a.n:
            raise UsageError(f"--compare: {args.compare} has {b.n} qubits, expected {a.n}")
        print(f"max_deviation {fmt_real(deviation(a, b))}", file=out)
        print(verdict_line(compare(a, b, args.tol), args.max_degree), file=out)
    return 0


def _cmd_check(args, out) -> int:
    report = verify_suite(args.n, args.r, args.trials, args.seed, args.tol, args.threads, _limits(args))
    out.write(report.to_text())
    return 0 if report.ok else 1


def _cmd_action_table(args, out) -> int:
    print(action_table(), file=out)
    return 0


COMMANDS = {
    "orbits": _cmd_orbits,
    "dims": _cmd_dims,
    "normal-forms": _cmd_normal_forms,
    "canon": _cmd_canon,
    "eval": _cmd_eval,
    "fingerprint": _cmd_fingerprint,
    "check": _cmd_check,
    "action-table": _cmd_action_table,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, CapExceeded, ValueError) as exc:
        print(f"lcinv: {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
