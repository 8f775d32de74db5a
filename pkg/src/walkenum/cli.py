"""Command-line entry point: ``python3 -m walkenum.cli <command> ...``.

Exit status: 0 on success, 1 on usage errors, 2 on input or validation errors.
Nothing is written to standard out by a failing command.
"""
from __future__ import annotations

import argparse
import io
import sys
from typing import Optional, Sequence

from . import testkit
from .enumerator import DecodeError, Enumerator, decode_stream, parse_record
from .graph import Graph, GraphFormatError, parse_graph, serialize, validate
from .pca import (Pca, PcaError, decode_strings, map_patterns, parse_pca, pca_from_forbidden_set,
                  pca_from_single_factor, serialize_pca)
from .preprocess import INFINITE, NEG_INFINITE, preprocess
from .queries import PreconditionError
from .ranking import RankError, count_walks, pca_counts, rank, unrank

ORACLE_MAX_N = 12
ORACLE_MAX_M = 14


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().rstrip()}")


def fmt_len(x) -> str:
    if x == INFINITE:
        return "inf"
    if x == NEG_INFINITE:
        return "-inf"
    return str(x)


def _opt(x) -> str:
    return "-" if x is None else str(x)


# -- loading ------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str) -> Graph:
    try:
        g = parse_graph(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    diags = validate(g)
    if diags:
        raise InputError(f"{path}: {diags[0]}")
    return g


def load_pca(path: str) -> Pca:
    try:
        return parse_pca(_read(path))
    except PcaError as exc:
        raise InputError(f"{path}: {exc}") from None


def _vertex(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range [0, {g.n})")
    return v


def _nonneg(x: int, what: str) -> int:
    if x < 0:
        raise InputError(f"{what} must be >= 0")
    return x


# -- commands ---------------------------------------------------------------------------


def cmd_info(args, out) -> None:
    p = preprocess(load_graph(args.graph))
    out.write("# v pi default_edge w kind component cycle tree_root d_t d_c\n")
    for v in range(p.n):
        c, d = p.components[v], p.depths[v]
        out.write(f"{v} {fmt_len(p.pi[v])} {_opt(p.default_edge[v])} {fmt_len(p.w[v])} "
                  f"{c.kind.value} {c.component_id} {_opt(c.cycle)} {_opt(c.tree_root)} "
                  f"{_opt(d.d_t)} {_opt(d.d_c)}\n")


def _instrument(args, en: Enumerator, p) -> None:
    if args.instrument:
        en.finish()
        sys.stderr.write(f"max_delay_steps={en.max_delay} preprocess_steps={p.steps}\n")


def cmd_enum_walks(args, out) -> None:
    g = load_graph(args.graph)
    if args.range is None and args.length is None:
        raise UsageError("enum-walks: one of --length or --range is required")
    if args.range is not None and args.from_ is not None:
        raise UsageError("enum-walks: --range enumerates from every vertex; drop --from")
    p = preprocess(g)
    en = Enumerator(p, instrument=args.instrument)
    records = []
    sink = records.append if args.decode else (
        (lambda r: None) if args.count_only else (lambda r: out.write(r.line() + "\n")))
    if args.range is not None:
        lo, hi = args.range
        if not 0 <= lo <= hi:
            raise InputError("--range needs 0 <= LO <= HI")
        total = en.run_range(lo, hi, sink)
    elif args.from_ is not None:
        total = en.run(_vertex(g, args.from_), _nonneg(args.length, "--length"), sink)
    else:
        total = en.run_all(_nonneg(args.length, "--length"), sink)
    _instrument(args, en, p)
    if args.decode:
        start = None
        for rec, walk in zip(records, decode_stream(p, records)):
            if rec.edge is None:
                start = rec.tail_start
            if not args.count_only:
                out.write(" ".join(map(str, g.walk_vertices(start, walk))) + "\n")
    if args.count_only:
        out.write(f"{total}\n")


def cmd_enum_strings(args, out) -> None:
    a = load_pca(args.pca)
    m = _nonneg(args.length, "--length")
    en = Enumerator(a.pre, instrument=args.instrument)
    records = []
    total = en.run(a.initial, m, records.append)
    _instrument(args, en, a.pre)
    if args.count_only:
        out.write(f"{total}\n")
    elif args.decode:
        for word in decode_strings(a, records):
            out.write(a.format(word) + "\n")
    else:
        for rec in records:
            out.write(rec.line() + "\n")


def cmd_decode(args, out) -> None:
    if (args.graph is None) == (args.pca is None):
        raise UsageError("decode: give exactly one of --graph or --pca")
    a = load_pca(args.pca) if args.pca else None
    g = a.graph if a else load_graph(args.graph)
    p = a.pre if a else preprocess(g)
    records = []
    for lineno, line in enumerate(_read(args.input).splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            records.append(parse_record(line, g))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    try:
        start = None
        for rec, walk in zip(records, decode_stream(p, records)):
            if rec.edge is None:
                start = rec.tail_start
            if a:
                out.write(a.format(a.walk_to_word(walk)) + "\n")
            else:
                out.write(" ".join(map(str, g.walk_vertices(start, walk))) + "\n")
    except DecodeError as exc:
        raise InputError(str(exc)) from None


def cmd_gen_pca(args, out) -> None:
    pats = [s for s in args.forbid.split(",")]
    try:
        ints = map_patterns(pats, args.sigma, args.alphabet)
        if args.single:
            if len(ints) != 1:
                raise PcaError("--single takes exactly one pattern")
            a = pca_from_single_factor(ints[0], args.sigma, args.alphabet)
        else:
            a = pca_from_forbidden_set(ints, args.sigma, args.alphabet)
    except PcaError as exc:
        raise InputError(str(exc)) from None
    text = serialize_pca(a)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        out.write(text)


def cmd_count(args, out) -> None:
    if (args.graph is None) == (args.pca is None):
        raise UsageError("count: give exactly one of --graph or --pca")
    m = _nonneg(args.length, "--length")
    if args.pca:
        a = load_pca(args.pca)
        out.write(f"{pca_counts(a, m)(a.initial, m)}\n")
        return
    g = load_graph(args.graph)
    table = count_walks(g, m)
    if args.from_ is not None:
        out.write(f"{table(_vertex(g, args.from_), m)}\n")
    else:
        out.write(f"{sum(table.rows[m])}\n")


def cmd_rank(args, out) -> None:
    a = load_pca(args.pca)
    try:
        r = rank(a, args.word)
    except (PcaError, RankError) as exc:
        raise InputError(str(exc)) from None
    out.write(f"rank0={r} rank1={r + 1}\n")


def cmd_unrank(args, out) -> None:
    a = load_pca(args.pca)
    try:
        i = int(args.index)
    except ValueError:
        raise InputError(f"--index {args.index!r} is not a decimal integer") from None
    if args.one_based:
        i -= 1
    try:
        word = unrank(a, _nonneg(args.length, "--length"), i)
    except RankError as exc:
        raise InputError(str(exc)) from None
    out.write(a.format(word) + "\n")


def _guard(args, n: int, m: int) -> None:
    if not args.force and (n > ORACLE_MAX_N or m > ORACLE_MAX_M):
        raise InputError(f"oracle limited to n <= {ORACLE_MAX_N}, m <= {ORACLE_MAX_M}; "
                         "pass --force to override")


def cmd_oracle(args, out) -> None:
    kind = args.kind
    if kind == "gen-graph":
        if args.labelled:
            g = testkit.random_labelled_graph(args.seed)
        else:
            g = testkit.random_graph(args.seed)
        out.write(serialize(g))
        return
    if kind == "strings":
        if args.pca is None or args.length is None:
            raise UsageError("oracle strings: --pca and --length are required")
        a = load_pca(args.pca)
        m = _nonneg(args.length, "--length")
        _guard(args, a.n, m)
        delta = {(q, x): t for q, x, t in a.transitions()}
        for word in testkit.brute_strings(delta, a.initial, a.sigma, m):
            out.write(a.format(word) + "\n")
        return
    if args.graph is None or args.from_ is None:
        raise UsageError(f"oracle {kind}: --graph and --from are required")
    g = load_graph(args.graph)
    s = _vertex(g, args.from_)
    if kind == "walks":
        if args.length is None:
            raise UsageError("oracle walks: --length is required")
        m = _nonneg(args.length, "--length")
        _guard(args, g.n, m)
        for walk in testkit.brute_walks(g, s, m):
            out.write(" ".join(map(str, g.walk_vertices(s, walk))) + "\n")
        return
    # pmn
    if args.len is None:
        raise UsageError("oracle pmn: --len is required")
    _guard(args, g.n, args.len)
    p = preprocess(g)
    if not 1 <= args.len or args.len > p.pi[s]:
        raise InputError(f"--len must be in [1, pi({s})={fmt_len(p.pi[s])}]")
    res = testkit.brute_pmn(p, s, args.len)
    if res is None:
        out.write("none\n")
    else:
        value, attain = res
        out.write(fmt_len(value) + " " + " ".join(f"{v}:{d}" for v, d in sorted(attain)) + "\n")


def cmd_pmn(args, out) -> None:
    p = preprocess(load_graph(args.graph))
    s = _vertex(p.graph, args.s)
    try:
        r = p.queries.pmn(s, args.len)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    if r is None:
        out.write("none\n")
    else:
        out.write(f"{r.vertex} {r.dist} {fmt_len(r.dist + p.w[r.vertex])}\n")


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> Parser:
    ap = Parser(prog="walkenum", description="Constant-delay walk and string enumeration.")
    sub = ap.add_subparsers(dest="command", parser_class=Parser, required=True)

    sp = sub.add_parser("info", help="dump preprocessing results, one vertex per line")
    sp.add_argument("--graph", required=True)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("enum-walks", help="enumerate walks of a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--length", type=int)
    sp.add_argument("--from", dest="from_", type=int)
    sp.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    sp.add_argument("--decode", action="store_true")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--instrument", action="store_true")
    sp.set_defaults(func=cmd_enum_walks)

    sp = sub.add_parser("enum-strings", help="enumerate strings accepted by a PCA")
    sp.add_argument("--pca", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--decode", action="store_true")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--instrument", action="store_true")
    sp.set_defaults(func=cmd_enum_strings)

    sp = sub.add_parser("decode", help="expand a record stream into explicit walks or strings")
    sp.add_argument("--graph")
    sp.add_argument("--pca")
    sp.add_argument("--input", default="-")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("gen-pca", help="build a PCA avoiding forbidden factors")
    sp.add_argument("--forbid", required=True, help="comma-separated patterns")
    sp.add_argument("--sigma", type=int, required=True)
    sp.add_argument("--alphabet", help="the sigma characters, in letter order")
    sp.add_argument("--single", action="store_true", help="failure-function construction")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen_pca)

    sp = sub.add_parser("count", help="exact number of walks or strings of a length")
    sp.add_argument("--graph")
    sp.add_argument("--pca")
    sp.add_argument("--from", dest="from_", type=int)
    sp.add_argument("--length", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("rank", help="position of a word in the enumeration order")
    sp.add_argument("--pca", required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("unrank", help="word at a position of the enumeration order")
    sp.add_argument("--pca", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--index", required=True)
    sp.add_argument("--one-based", action="store_true")
    sp.set_defaults(func=cmd_unrank)

    sp = sub.add_parser("oracle", help="brute-force reference answers")
    sp.add_argument("kind", choices=["walks", "pmn", "strings", "gen-graph"])
    sp.add_argument("--graph")
    sp.add_argument("--pca")
    sp.add_argument("--from", dest="from_", type=int)
    sp.add_argument("--length", type=int)
    sp.add_argument("--len", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--labelled", action="store_true")
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("pmn", help="debug: PMN query on the default walk (s, len)")
    sp.add_argument("--graph", required=True)
    sp.add_argument("s", type=int)
    sp.add_argument("len", type=int)
    sp.set_defaults(func=cmd_pmn)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    buf = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        args.func(args, buf)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    sys.stdout.write(buf.getvalue())
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
