"""Command-line entry point: ``kpancake <subcommand> --n N --k K ...``.

Exit codes: 0 success, 1 verification failure (or a non-Hamiltonian greedy
walk), 2 argument or input errors, 3 capacity errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterator, Optional, TextIO

from .analysis import avg_flip_length, verify_listing
from .core import ColouredPermutation, check_capacity, flip, format_perm, parse
from .errors import CapacityError, KPancakeError, ParseError, RangeError
from .generation import GREEDY_BUDGET, greedy, iter_flipseq, iter_successor, rec_listing, successor
from .genseq import iter_sigma
from .rank import rank, unrank

METHODS = ("greedy-min", "greedy-max", "recursive", "successor", "flipseq")


class _ArgError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kpancake", description="Flip Gray codes for k-coloured permutations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def sized(name, help, need_n=True):
        p = sub.add_parser(name, help=help)
        if need_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        return p

    p = sized("gen", "list every coloured permutation in Gray code order")
    p.add_argument("--method", choices=METHODS, default="flipseq")
    p.add_argument("--start", help="start permutation (recursive and flipseq only)")
    p.add_argument("--stream", action="store_true", help="flush after every line")

    sized("flipseq", "print the flip sequence, one length per line")

    p = sized("rank", "rank of a permutation in the canonical listing", need_n=False)
    p.add_argument("--n", type=int)
    p.add_argument("--perm", required=True)

    p = sized("unrank", "permutation at a given rank")
    p.add_argument("--rank", type=int, required=True)

    p = sized("successor", "successor of a permutation in the canonical listing", need_n=False)
    p.add_argument("--n", type=int)
    p.add_argument("--perm", required=True)

    p = sized("verify", "check a listing read from a file or stdin")
    p.add_argument("--input", help="listing file (default: stdin)")

    p = sized("stats", "average flip length and its bound")
    p.add_argument("--empirical-limit", type=int, default=10**6,
                   help="skip the measured average above this many permutations")
    return ap


def _perm_arg(text: str, k: int, n: Optional[int]) -> ColouredPermutation:
    pi = parse(text, k)
    if n is not None and pi.n != n:
        raise _ArgError(f"permutation has {pi.n} entries, --n is {n}")
    return pi


def _read_listing(stream: TextIO, n: int, k: int) -> Iterator[ColouredPermutation]:
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line or line.startswith("total:"):
            continue
        try:
            pi = parse(line, k)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if pi.n != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {pi.n}")
        yield pi


def _gen(args, out: TextIO) -> int:
    n, k = args.n, args.k
    total = check_capacity(n, k)
    start = None
    if args.start is not None:
        if args.method not in ("recursive", "flipseq"):
            raise _ArgError("--start is only accepted by --method recursive or flipseq")
        start = _perm_arg(args.start, k, n)

    status = 0
    if args.method.startswith("greedy"):
        if total > 10**7:
            print(f"warning: greedy construction stores all {total} permutations", file=sys.stderr)
        outcome = greedy(n, k, "min" if args.method == "greedy-min" else "max", budget=max(total, GREEDY_BUDGET))
        perms = iter(outcome.listing)
        status = 0 if outcome.is_hamilton_cycle else 1
    elif args.method == "recursive":
        perms = iter(rec_listing(start or ColouredPermutation.identity(n, k)))
    elif args.method == "successor":
        perms = iter_successor(n, k)
    else:
        perms = iter_flipseq(n, k, start)

    count = 0
    for pi in perms:
        out.write(format_perm(pi) + "\n")
        count += 1
        if args.stream:
            out.flush()
    out.write(f"total:{count}\n")
    return status


def _run(args, out: TextIO) -> int:
    cmd = args.command
    if cmd == "gen":
        return _gen(args, out)
    if cmd == "flipseq":
        check_capacity(args.n, args.k)
        out.writelines(f"{x}\n" for x in iter_sigma(args.n, args.k))
        return 0
    if cmd == "rank":
        out.write(f"{rank(_perm_arg(args.perm, args.k, args.n))}\n")
        return 0
    if cmd == "unrank":
        out.write(format_perm(unrank(args.rank, args.n, args.k)) + "\n")
        return 0
    if cmd == "successor":
        pi = _perm_arg(args.perm, args.k, args.n)
        j = successor(pi)
        out.write(f"{format_perm(flip(pi, j))}\nflip:{j}\n")
        return 0
    if cmd == "verify":
        check_capacity(args.n, args.k)
        if args.input:
            with open(args.input) as fh:
                report = verify_listing(_read_listing(fh, args.n, args.k), args.n, args.k)
        else:
            report = verify_listing(_read_listing(sys.stdin, args.n, args.k), args.n, args.k)
        out.write(report.to_text() + "\n")
        return 0 if report.is_hamilton_cycle else 1
    if cmd == "stats":
        stats = avg_flip_length(args.n, args.k, empirical_limit=args.empirical_limit)
        out.write(stats.to_text() + "\n")
        return 0
    raise _ArgError(f"unknown command {cmd}")  # pragma: no cover


def main(argv=None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    try:
        for name in ("n", "k"):
            value = getattr(args, name, None)
            if value is not None and value < 1:
                raise _ArgError(f"--{name} must be >= 1")
        return _run(args, out)
    except CapacityError as exc:
        print(f"kpancake: {exc}", file=sys.stderr)
        return 3
    except (_ArgError, ParseError, RangeError, KPancakeError) as exc:
        print(f"kpancake: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:  # pragma: no cover - downstream closed early
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
