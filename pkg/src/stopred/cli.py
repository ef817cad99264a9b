"""Command-line entry point: ``stopred <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import codes as cd
from .decoders import (
    ReceivedWord,
    agd_a_schedule,
    agd_b_schedule,
    agd_decode,
    explicit_schedule,
    iterative_decode,
)
from .gf2 import BitMatrix, BitVector, format_matrix, read_matrix, write_matrix
from .perms import format_perms, read_perms
from .sadcover import CoverError, expand_by_perms, greedy_sad, verify_sad
from .sim import DECODERS, SimConfig, format_csv, format_gnuplot, parse_config, simulate
from .stopsets import (
    WitnessNotFoundError,
    count_undecodable,
    hierarchy_witness,
    stopping_distance,
)

CODES = {
    "hamming7": cd.hamming7,
    "golay23": cd.golay23,
    "golay24": cd.golay24,
    "golay24-ext": cd.golay24_extended,
    "bch31-16": cd.bch31_16,
}


def _code(args) -> cd.LinearCode:
    if getattr(args, "poly", None):
        C = cd.cyclic_code(args.n, args.poly)
    elif getattr(args, "code_matrix", None):
        C = cd.LinearCode.from_parity(read_matrix(args.code_matrix))
    else:
        C = CODES[args.code]()
    if getattr(args, "extend", False):
        C = cd.extend(C)
    return C


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_range(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _word(text: str, n: int) -> BitVector:
    t = text.strip()
    if set(t) <= {"0", "1"} and len(t) == n:
        return BitVector.from_str(t)
    return cd.parse_octal_word(t, n)


def cmd_build(args) -> int:
    C = _code(args)
    kind = args.matrix
    if kind == "wolfmann":
        M = cd.golay24_wolfmann()
    elif kind == "parity":
        M = C.parity
    elif kind == "generator":
        M = C.generator
    elif kind == "shift":
        if not args.word:
            raise SystemExit("--word is required for a cyclic-shift matrix")
        offsets = [int(x) for x in args.offsets.split(",")] if args.offsets else None
        m = len(offsets) if offsets else args.rows
        M = cd.cyclic_shift_matrix(_word(args.word, C.n), m, offsets, extended=C.extended)
    else:
        D = cd.dual(C)
        weight = args.weight or D.min_distance()
        words = cd.min_weight_words(D, weight)
        cg = cd.cogs(words, C.n, extended=C.extended)
        if kind == "cogs":
            M = BitMatrix.from_vectors([c.representative for c in cg])
            if args.out:
                Path(args.out + ".orbits").write_text(
                    "".join(f"orbit {c.orbit_size}\n" for c in cg)
                )
        elif kind == "cog":
            M = cd.cog_matrix(cg, args.rows or C.n - C.k)
        else:
            M = cd.orbit_matrix(cg)
    _emit(format_matrix(M), args.out)
    return 0


def cmd_stopping_distance(args) -> int:
    H = read_matrix(args.matrix)
    sd = stopping_distance(H, args.bound)
    bound = args.bound if args.bound is not None else H.ncols
    print(sd if sd is not None else f"none up to {bound}")
    return 0


def cmd_enumerate(args) -> int:
    H = read_matrix(args.matrix)
    perms = read_perms(args.perms) if args.perms else None
    lines = ["sigma,count,mode,matrix"]
    for s in _parse_range(args.sigma):
        t0 = time.perf_counter()
        c = count_undecodable(H, s, args.mode, perms, memoryless=args.memoryless, workers=args.workers)
        lines.append(f"{s},{c},{args.mode},{args.matrix}")
        print(f"sigma={s} count={c} ({time.perf_counter() - t0:.1f}s)", file=sys.stderr)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sad_verify(args) -> int:
    H = read_matrix(args.matrix)
    res = verify_sad(H, read_perms(args.perms), args.s, weak=args.weak)
    print(res.summary())
    if res.counterexample is not None:
        print(f"unresolved {res.counterexample}")
    return 0 if res.verified else 1


def cmd_sad_search(args) -> int:
    H = read_matrix(args.matrix)
    try:
        res = greedy_sad(H, read_perms(args.perms), args.s, weak=args.weak)
    except CoverError as exc:
        print(f"s={args.s} size=0 verified=false ({exc})")
        return 1
    _emit(format_perms(res.perms), args.out)
    print(res.summary(), file=sys.stderr if not args.out else sys.stdout)
    return 0 if res.verified else 1


def cmd_expand(args) -> int:
    H = read_matrix(args.matrix)
    X = expand_by_perms(H, read_perms(args.perms))
    _emit(format_matrix(X), args.out)
    return 0


def cmd_witness(args) -> int:
    C = _code(args)
    pool = cd.min_weight_words(cd.dual(C), args.weight or cd.dual(C).min_distance())
    try:
        rec = hierarchy_witness(
            C, args.level, pool, args.max_rows, random_trials=args.trials, seed=args.seed
        )
    except WitnessNotFoundError as exc:
        print(f"inconclusive: {exc}")
        return 2
    if args.out:
        write_matrix(rec.matrix, args.out)
    print(rec.summary())
    return 0


def cmd_decode(args) -> int:
    H = read_matrix(args.matrix)
    y = ReceivedWord.from_str(args.word)
    if args.agd == "none" and not args.perms:
        out = iterative_decode(H, y)
    else:
        C = cd.LinearCode.from_parity(H)
        if args.perms:
            sched = explicit_schedule(read_perms(args.perms))
        elif args.agd == "a":
            sched = agd_a_schedule(C.n, args.extended, args.seed)
        else:
            sched = agd_b_schedule(C.n, args.extended, args.seed)
        out = agd_decode(C, H, sched, y, memoryless=args.memoryless)
    print(out.status)
    print(out.codeword if out.codeword is not None else out.residual)
    return 0 if out.recovered else 1


def cmd_simulate(args) -> int:
    opts = parse_config(Path(args.config).read_text()) if args.config else {}
    matrix = args.matrix or opts.get("matrix")
    if not matrix:
        raise SystemExit("a matrix file is required (--matrix or matrix= in the config)")
    decoder = args.decoder or opts.get("decoder", "iterative")
    er = args.er or opts.get("er", "0.1,0.2,0.3")
    trials = args.trials or int(opts.get("trials", 1000))
    seed = args.seed if args.seed is not None else int(opts.get("seed", 0))
    extended = args.extended or opts.get("extended", "false").lower() in ("1", "true", "yes")
    H = read_matrix(matrix)
    C = cd.LinearCode.from_parity(H)
    if extended:
        C = cd.LinearCode(C.n, C.k, C.generator, C.parity, extended=True)
    cfg = SimConfig(H, decoder, [float(x) for x in er.split(",")], trials, seed, code=C, name=matrix)
    t0 = time.perf_counter()
    recs = simulate(cfg)
    dt = time.perf_counter() - t0
    _emit(format_csv(recs), args.out)
    if args.gnuplot:
        Path(args.gnuplot).write_text(format_gnuplot(recs, f"{decoder} on {matrix}"))
    total = trials * len(recs)
    print(f"{total} trials in {dt:.1f}s ({total / dt:.0f} trials/s)", file=sys.stderr)
    for r in recs:
        if r.low_failures:
            print(f"warning: er={r.er} has only {r.failures} failures", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stopred", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def code_opts(sp):
        sp.add_argument("--code", choices=sorted(CODES), default="golay23")
        sp.add_argument("--poly", help="cyclic generator polynomial, binary or octal, high degree first")
        sp.add_argument("--n", type=int, help="length for --poly")
        sp.add_argument("--code-matrix", help="parity-check matrix file defining the code")
        sp.add_argument("--extend", action="store_true", help="append an overall parity bit")

    sp = sub.add_parser("build", help="construct a code matrix")
    code_opts(sp)
    sp.add_argument(
        "--matrix",
        choices=["parity", "generator", "cogs", "cog", "orbit", "shift", "wolfmann"],
        default="parity",
    )
    sp.add_argument("--weight", type=int, help="dual word weight for cogs (default: dual minimum)")
    sp.add_argument("--rows", type=int, help="row count for cog/shift matrices")
    sp.add_argument("--word", help="generator word for shift matrices (0/1 string or octal)")
    sp.add_argument("--offsets", help="comma-separated shift offsets")
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("stopping-distance", help="smallest stopping set size")
    sp.add_argument("matrix")
    sp.add_argument("--bound", type=int)
    sp.set_defaults(func=cmd_stopping_distance)

    sp = sub.add_parser("enumerate", help="count undecodable erasure patterns")
    sp.add_argument("matrix")
    sp.add_argument("--sigma", default="1-12", help="sizes, e.g. 8-12 or 3,5")
    sp.add_argument("--mode", choices=["peeling", "ml", "agd"], default="peeling")
    sp.add_argument("--perms", help="permutation file for agd mode")
    sp.add_argument("--memoryless", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_enumerate)

    for name, fn in (("sad-verify", cmd_sad_verify), ("sad-search", cmd_sad_search)):
        sp = sub.add_parser(name)
        sp.add_argument("matrix")
        sp.add_argument("perms")
        sp.add_argument("--s", type=int, default=5)
        sp.add_argument("--weak", action="store_true", help="only require images not to be stopping sets")
        if name == "sad-search":
            sp.add_argument("-o", "--out")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("expand", help="stack permuted copies of a matrix")
    sp.add_argument("matrix")
    sp.add_argument("perms")
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("witness", help="search cyclic-shift matrices for a stopping distance")
    code_opts(sp)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--max-rows", type=int, required=True)
    sp.add_argument("--weight", type=int)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--out")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("decode", help="decode one received word (0, 1, ? per coordinate)")
    sp.add_argument("matrix")
    sp.add_argument("word")
    sp.add_argument("--perms", help="explicit schedule file")
    sp.add_argument("--agd", choices=["none", "a", "b"], default="none")
    sp.add_argument("--extended", action="store_true")
    sp.add_argument("--memoryless", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("simulate", help="Monte-Carlo FER on the BEC")
    sp.add_argument("--matrix")
    sp.add_argument("--config", help="key=value file (matrix, decoder, er, trials, seed, extended)")
    sp.add_argument("--decoder", choices=DECODERS)
    sp.add_argument("--er", help="comma-separated erasure rates")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int, help="master seed (default 0)")
    sp.add_argument("--extended", action="store_true")
    sp.add_argument("-o", "--out")
    sp.add_argument("--gnuplot", help="also write a plot data file")
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
