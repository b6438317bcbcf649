"""Command-line entry point.

Exit codes: 0 success / property holds, 1 property violated, 2 input or
format error, 3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .errors import InputError, SizeGuardError, TableRangeError
from .generators import gen_binary_words, gen_helly_sequence, gen_random, gen_shatter_family, index_word, word_length
from .harness import (
    CorpusSpec,
    PsiTables,
    iter_corpus,
    probe_fractional_helly,
    psi_eval,
    valid_helly_sequences,
    verify_binary_words,
    verify_helly_growth,
    verify_levi,
    verify_minimal_nonpartitionable,
    verify_radon_bound,
)
from .homology import CubicalSetSystem, betti, shatter_profile
from .setcore import (
    COLORFUL_GUARD,
    SetSystem,
    bits_to_mask,
    colorful_helly_number,
    graded,
    helly_number,
    radon_number,
)

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _t_values(text: str) -> list[int]:
    """'21', '1,5,9' or '1-64'."""
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return _ints(text)


def _load(path: str):
    try:
        return io.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _abstract(system) -> SetSystem:
    return system.to_set_system() if isinstance(system, CubicalSetSystem) else system


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def emit(report: dict, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps({k: _jsonable(v) for k, v in report.items()}, sort_keys=True) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(map(str, value))
        elif isinstance(value, bool):
            value = str(value).lower()
        stream.write(f"{key}={value}\n")


def _kv(lines: list[str]) -> dict:
    return dict(ln.split("=", 1) for ln in lines)


# ---------------------------------------------------------------- subcommands


def cmd_analyze(args) -> int:
    system = _abstract(_load(args.input))
    report: dict = {"ground": system.ground_size, "members": len(system)}
    t_max = args.t_max if args.t_max is not None else len(system)
    for param in [p.strip() for p in args.params.split(",") if p.strip()]:
        if param == "radon":
            report["radon"] = radon_number(system)
        elif param == "helly":
            report["helly"] = helly_number(system)
        elif param == "colorful-helly":
            report["colorful-helly"] = colorful_helly_number(system, guard=args.guard)
        elif param.startswith("graded:"):
            kind = param.split(":", 1)[1]
            report[f"graded.{kind}"] = list(graded(system, kind, t_max, guard=args.guard).values)
        else:
            raise InputError(f"unknown parameter {param!r}")
    emit(report, args.json)
    return EXIT_OK


def _write_system(system, args, report) -> None:
    text = io.dump(system)
    if args.out:
        Path(args.out).write_text(text)
        emit(report, args.json)
    else:
        sys.stdout.write(text)
        emit(report, args.json, sys.stderr)


def cmd_generate(args) -> int:
    if args.family == "helly-seq":
        u = _ints(args.u)
        system = gen_helly_sequence(u)
        prof = graded(system, "helly", min(len(u), len(system)))
        report = {"family": "helly-seq", "u": u, "members": len(system),
                  "graded.helly": list(prof.values), "certified": list(prof.values) == u}
    elif args.family == "binary-words":
        system, pts = gen_binary_words(args.k)
        verdict = verify_minimal_nonpartitionable(system, pts)
        L = word_length(args.k)
        report = {"family": "binary-words", "k": args.k, "word_length": L,
                  "members": len(system), "ground": system.ground_size,
                  "points": list(pts), "words": [index_word(p, L) for p in pts],
                  "minimality": verdict.kind, "certified": verdict.kind == "minimal"}
        if args.points_out:
            Path(args.points_out).write_text(io.dump_points(pts))
    elif args.family == "shatter":
        f = _ints(args.f)
        system, _ = gen_shatter_family(f, max_i=args.max_i, max_f=args.max_f)
        phi = [max(col) for col in zip(*shatter_profile(system, 0, len(f)))]
        report = {"family": "shatter", "f": f, "dims": list(system.dims),
                  "members": len(system), "phi0": phi[1:], "certified": phi[1:] == f}
    else:
        params: dict = {"m": args.n}
        if args.ground is not None:
            params["n"] = args.ground
        if args.dims:
            params["dims"] = _ints(args.dims)
        system = gen_random(args.kind, params, seed=args.seed)
        report = {"family": f"random-{args.kind}", "seed": args.seed, "members": len(system),
                  "fingerprint": hashlib.sha256(io.dump(system).encode()).hexdigest()[:16]}
    _write_system(system, args, report)
    return EXIT_OK


def cmd_homology(args) -> int:
    system = _load(args.input)
    if not isinstance(system, CubicalSetSystem):
        raise InputError("homology needs a convexlab-cubical file")
    members = _ints(args.subfamily) if args.subfamily else list(range(len(system)))
    if any(not 0 <= i < len(system) for i in members):
        raise InputError("subfamily index out of range")
    bv = betti(system, bits_to_mask(members), args.h)
    emit({"subfamily": members, "h": args.h, "empty": bv.empty,
          "reduced_betti": list(bv.values)}, args.json)
    return EXIT_OK


def cmd_shatter(args) -> int:
    system = _load(args.input)
    if not isinstance(system, CubicalSetSystem):
        raise InputError("shatter needs a convexlab-cubical file")
    prof = shatter_profile(system, args.h, args.t_max)
    report = {"h": args.h, "t_max": args.t_max,
              "phi": [max(col) for col in zip(*prof)]}
    for i, row in enumerate(prof):
        report[f"phi.degree{i}"] = row
    emit(report, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.check == "minimal-np":
        if args.input:
            if not args.points:
                raise InputError("--points is required with --input")
            system = _abstract(_load(args.input))
            pts = io.loads_points(Path(args.points).read_text())
            v = verify_minimal_nonpartitionable(system, pts)
            report = {"check": "minimal-np", "verdict": v.kind}
            if v.witness is not None:
                report["witness.block0"] = list(v.witness.block0)
                report["witness.block1"] = list(v.witness.block1)
            if v.member is not None:
                report["member"] = v.member
                report["redundant"] = list(v.redundant)
            emit(report, args.json)
            return EXIT_OK if v.kind == "minimal" else EXIT_VIOLATED
        spec = CorpusSpec.parse(args.corpus or "binary-words:3,4,5")
        if spec.kind != "binary-words":
            raise InputError("minimal-np takes --corpus binary-words:K,... or --input/--points")
        result = verify_binary_words(spec.ks)
    else:
        if not args.corpus:
            raise InputError("--corpus is required")
        spec = CorpusSpec.parse(args.corpus)
        corpus = iter_corpus(spec)
        if args.check == "radon-bound":
            result = verify_radon_bound(corpus, t_max=args.t_max, slack=args.slack)
        elif args.check == "levi":
            result = verify_levi(corpus, t_max=args.t_max)
        else:
            seqs = list(valid_helly_sequences(args.seq_length))[: args.sequences]
            result = verify_helly_growth(corpus, t_max=args.t_max, sequences=seqs)
    report = _kv(result.lines())
    for i, note in enumerate(result.notes):
        report[f"note{i}"] = note
    emit(report, args.json)
    cx = result.counterexample
    if cx is not None and args.counterexample_out:
        io.save(cx.system, args.counterexample_out)
    return EXIT_OK if result.passed else EXIT_VIOLATED


def cmd_probe(args) -> int:
    system = _abstract(_load(args.input))
    rep = probe_fractional_helly(system, args.s, args.k, budget=args.budget, seed=args.seed,
                                 exact_limit=args.exact_limit)
    report = _kv(rep.lines())
    report["fingerprint"] = rep.fingerprint()
    emit(report, args.json)
    return EXIT_OK


def cmd_psi(args) -> int:
    r_table = io.loads_table(Path(args.r_table).read_text())
    m_table = io.loads_table(Path(args.m_table).read_text())
    tables = PsiTables(args.d, r_table, m_table)
    ts = _t_values(args.t)
    values = [psi_eval(tables, args.b, t) for t in ts]
    report = {"d": args.d, "b": args.b, "t": ts, "psi": values}
    emit(report, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convexlab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON report instead of key=value lines")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="Radon/Helly/colorful-Helly numbers and graded profiles")
    a.add_argument("--input", required=True)
    a.add_argument("--params", default="radon,helly")
    a.add_argument("--t-max", type=int)
    a.add_argument("--guard", type=int, default=COLORFUL_GUARD)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", parents=[common], help="write a constructed family and its certificate report")
    g.add_argument("family", choices=["helly-seq", "binary-words", "shatter", "random"])
    g.add_argument("--u", default="1,2,2")
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--f", default="1,1,2")
    g.add_argument("--max-i", type=int, default=8)
    g.add_argument("--max-f", type=int, default=6)
    g.add_argument("--kind", default="abstract", choices=["abstract", "intervals", "boxes"])
    g.add_argument("--n", type=int, default=5, help="number of members (random)")
    g.add_argument("--ground", type=int, help="ground size (random abstract/intervals)")
    g.add_argument("--dims", help="grid extents (random boxes), e.g. 16,16")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--points-out")
    g.set_defaults(func=cmd_generate)

    h = sub.add_parser("homology", parents=[common], help="reduced Z2 Betti numbers of an intersection")
    h.add_argument("--input", required=True)
    h.add_argument("--subfamily", default="")
    h.add_argument("--h", type=int, default=1)
    h.set_defaults(func=cmd_homology)

    s = sub.add_parser("shatter", parents=[common], help="homological shatter function")
    s.add_argument("--input", required=True)
    s.add_argument("--h", type=int, default=0)
    s.add_argument("--t-max", type=int, required=True)
    s.set_defaults(func=cmd_shatter)

    v = sub.add_parser("verify", parents=[common], help="check an invariant over a corpus")
    v.add_argument("check", choices=["radon-bound", "levi", "helly-growth", "minimal-np"])
    v.add_argument("--corpus")
    v.add_argument("--t-max", type=int, default=6)
    v.add_argument("--slack", type=int, default=1, help=argparse.SUPPRESS)
    v.add_argument("--sequences", type=int, default=10)
    v.add_argument("--seq-length", type=int, default=7)
    v.add_argument("--input")
    v.add_argument("--points")
    v.add_argument("--counterexample-out")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("probe-fh", parents=[common], help="empirical fractional-Helly probe")
    f.add_argument("--input", required=True)
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--budget", type=int, default=100_000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--exact-limit", type=int, default=20)
    f.set_defaults(func=cmd_probe)

    q = sub.add_parser("psi", parents=[common], help="evaluate the gate function over plug-in tables")
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--d", type=int, default=2)
    q.add_argument("--r-table", required=True)
    q.add_argument("--m-table", required=True)
    q.add_argument("--t", required=True, help="'21', '1,5,9' or '1-64'")
    q.set_defaults(func=cmd_psi)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, TableRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
