"""Command-line front end.

Subcommands: ``boundary2``, ``surface3``, ``sumrate``, ``verify``, ``info``.
Exit status is 0 on success, 1 on a domain error (bad channel file, failed
verification) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import region2, region3, sumrate, verify
from .channel import NormalizedChannel, load_channel, three_user, two_user
from .errors import GicError
from .export import fmt_number, write_curve, write_sumrate, write_surface

OUTPUT_DIR_ENV = "GICREGION_OUTPUT_DIR"

_PAIR_FLAGS = ("a12", "a21", "pbar1", "pbar2")
_TRIPLE_FLAGS = ("a12", "a13", "a21", "a23", "a31", "a32", "pbar1", "pbar2", "pbar3")


class UsageError(Exception):
    pass


def _add_channel_args(p: argparse.ArgumentParser, users: int | None) -> None:
    g = p.add_argument_group("channel (a JSON file, or inline normalized parameters)")
    g.add_argument("--channel", metavar="FILE", help="channel description in JSON")
    flags = _TRIPLE_FLAGS if users in (None, 3) else _PAIR_FLAGS
    for name in flags:
        g.add_argument(f"--{name}", type=float, metavar="X")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument(
        "--output", "-o", metavar="PATH",
        help=f"output file (default stdout); relative paths resolve under ${OUTPUT_DIR_ENV} if set",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gicregion",
        description="SINR and capacity regions of the Gaussian interference channel "
        "with interference treated as noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary2", help="sample the two-user capacity-region boundary")
    _add_channel_args(p, 2)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--spacing", choices=("t", "rate"), default="t",
                   help="uniform in s1 (t) or uniform in the user-1 rate (rate)")
    _add_output_args(p)

    p = sub.add_parser("surface3", help="sample the boundary faces of the three-user SINR region")
    _add_channel_args(p, 3)
    p.add_argument("--resolution", type=int, default=41)
    _add_output_args(p)

    p = sub.add_parser("sumrate", help="maximize the two-user sum rate")
    _add_channel_args(p, 2)
    _add_output_args(p)

    p = sub.add_parser("verify", help="run the randomized property checks")
    p.add_argument("--channel", metavar="FILE",
                   help="also run the n-user membership check on this channel (any n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None,
                   help="random draws per check (default: each check's own size)")
    p.add_argument("--nusers", type=int, nargs="+", default=None, metavar="N",
                   help="user counts for the n-user oracle check (default 4 5)")
    p.add_argument("--only", nargs="+", choices=sorted(verify.CHECKS), metavar="CHECK",
                   help="run only these checks")
    for name, default in vars(verify.Tolerances()).items():
        p.add_argument(f"--tol-{name.replace('_', '-')}", dest=f"tol_{name}", type=float,
                       default=default, metavar="X")

    p = sub.add_parser("info", help="print the normalized channel and regime diagnostics")
    _add_channel_args(p, None)
    return parser


def _resolve_channel(args: argparse.Namespace, users: int | None) -> NormalizedChannel:
    names = _TRIPLE_FLAGS if users in (None, 3) else _PAIR_FLAGS
    inline = {k: getattr(args, k, None) for k in names}
    given = {k: v for k, v in inline.items() if v is not None}
    if args.channel and given:
        raise UsageError("give either --channel or inline parameters, not both")
    if args.channel:
        ch = load_channel(args.channel)
    elif not given:
        raise UsageError("a channel is required: --channel FILE or inline parameters")
    else:
        pair = users == 2 or (users is None and set(given) == set(_PAIR_FLAGS))
        want = _PAIR_FLAGS if pair else _TRIPLE_FLAGS
        missing = [k for k in want if k not in given]
        if missing:
            raise UsageError("missing inline parameters: " + ", ".join(f"--{k}" for k in missing))
        ch = two_user(*(given[k] for k in want)) if pair else three_user(*(given[k] for k in want))
    if users is not None and ch.n != users:
        raise GicError(f"this command needs a {users}-user channel, got n={ch.n}")
    return ch


def _emit(data: bytes, output: str | None) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def _cmd_boundary2(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    ch = _resolve_channel(args, 2)
    curve = region2.capacity_boundary(ch, args.samples, spacing=args.spacing)
    _emit(write_curve(curve, args.format, channel=ch, spacing=args.spacing), args.output)
    return 0


def _cmd_surface3(args) -> int:
    if args.resolution < 2:
        raise UsageError("--resolution must be >= 2")
    ch = _resolve_channel(args, 3)
    _emit(write_surface(region3.sample_surface(ch, args.resolution), args.format), args.output)
    return 0


def _cmd_sumrate(args) -> int:
    ch = _resolve_channel(args, 2)
    _emit(write_sumrate(sumrate.maximize_sum_rate(ch), args.format, channel=ch), args.output)
    return 0


def _cmd_verify(args) -> int:
    tol = verify.Tolerances(**{k: getattr(args, f"tol_{k}") for k in vars(verify.Tolerances())})
    names = args.only or list(verify.CHECKS)
    overrides: dict[str, dict] = {}
    if args.trials is not None:
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        t = args.trials
        overrides = {
            "fixed_points": {"trials": t},
            "roundtrip_2user": {"trials": t},
            "roundtrip_3user": {"trials": t},
            "boundary_endpoints": {"trials": t},
            "hyperbola_redundancy": {"points": t},
            "corner_optimality": {"channels": t},
            "phi3_closed_vs_block": {"trials": t},
            "degeneration_3user": {"trials": t},
            "nuser_oracle": {"points": t},
        }
    if args.nusers:
        if min(args.nusers) < 2:
            raise UsageError("--nusers values must be >= 2")
        overrides.setdefault("nuser_oracle", {})["sizes"] = tuple(args.nusers)
    results = [verify.run_check(n, args.seed, tol, **overrides.get(n, {})) for n in names]
    if args.channel:
        results.append(verify.check_channel_oracle(load_channel(args.channel), args.seed, tol, args.trials or 1000))
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def _cmd_info(args) -> int:
    ch = _resolve_channel(args, None)
    n = ch.n
    print(f"users: {n}")
    print("pbar: " + " ".join(fmt_number(p) for p in ch.pbar))
    print("a:")
    for row in ch.a:
        print("  " + " ".join(fmt_number(x) for x in row))
    print("cross gains (a_ij vs 1):")
    for i in range(n):
        for j in range(n):
            if i != j:
                a = ch.a[i, j]
                rel = "<" if a < 1 else ("=" if a == 1 else ">")
                print(f"  a{i + 1}{j + 1} = {fmt_number(a)} {rel} 1")
    print("pairwise products a_ij*a_ji:")
    for i in range(n):
        for j in range(i + 1, n):
            print(f"  ({i + 1},{j + 1}): {fmt_number(ch.a[i, j] * ch.a[j, i])}")
    print("single-user rates 0.5*log2(1+pbar_i) [bits]: "
          + " ".join(fmt_number(region2.rate_bits(p)) for p in ch.pbar))
    return 0


_COMMANDS = {
    "boundary2": _cmd_boundary2,
    "surface3": _cmd_surface3,
    "sumrate": _cmd_sumrate,
    "verify": _cmd_verify,
    "info": _cmd_info,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gicregion {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (GicError, OSError) as exc:
        print(f"gicregion {args.command}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
