"""Command-line entry point.

Exit codes: 0 ok, 1 usage error, 2 computation or input error, 3 a
verification suite reported a failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .angles import parse_angle
from .catalog import CATALOG, catalog_spec, default_corpus
from .complexity import complexity_profile
from .decoloring import DecoloringSpec, decolor
from .errors import InvalidParameter, ResourceBound, WordlabError
from .frequency import FrequencyVector, empirical_frequencies, exact_frequencies, integer_relation_search
from .harness import SUITES, SearchConfig, SuiteBounds, run_lemma_suite, search_rho_bounded
from .induction import induce, matrix_rank_check
from .io import atomic_write, format_word, parse_morphism, parse_spec_text, read_word_file
from .rotation import TorusRotation, equidistribution_check, find_conflict
from .words import (
    Periodic,
    RotationBinary,
    RotationTernary,
    Substitution,
    WordGeneratorSpec,
    generate,
)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    precision_digits: int = 64
    prefix_length: int = 10_000
    n_max: int = 200
    output_format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if self.precision_digits < 16:
            raise InvalidParameter("precision_digits must be >= 16")
        if self.prefix_length < self.n_max:
            raise InvalidParameter("prefix_length must be >= n_max")
        if self.output_format not in ("csv", "json"):
            raise InvalidParameter("output_format must be csv or json")

    @classmethod
    def from_env(cls, **overrides) -> RunConfig:
        env = os.environ.get("WORDLAB_PRECISION")
        if env is not None and "precision_digits" not in overrides:
            overrides["precision_digits"] = int(env)
        return cls(**overrides)

    def apply(self) -> None:
        # exact-angle refinement reads its starting precision from the environment
        os.environ["WORDLAB_PRECISION"] = str(self.precision_digits)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write(out, text)


# --------------------------------------------------------------------------
# subcommands


def _spec_from_args(args) -> WordGeneratorSpec:
    if args.spec_file:
        with open(args.spec_file, encoding="utf-8") as fh:
            spec = parse_spec_text(fh.read())
        return spec.with_length(args.len) if args.len else spec
    if not args.len:
        raise InvalidParameter("--len is required")
    if args.catalog:
        return catalog_spec(args.catalog, args.len)
    if args.periodic:
        variant = Periodic(args.periodic)
    elif args.subst:
        if args.seed is None:
            raise InvalidParameter("--subst needs --seed")
        variant = Substitution(parse_morphism(args.subst), args.seed)
    elif args.rot_binary:
        variant = RotationBinary(parse_angle(args.alpha), parse_angle(args.x), args.partition, args.symbols or "01")
    else:
        variant = RotationTernary(
            parse_angle(args.alpha), parse_angle(args.x), parse_angle(args.cut1), parse_angle(args.cut2),
            args.symbols or "123",
        )
    return WordGeneratorSpec(variant, args.len)


def cmd_gen(args, cfg: RunConfig) -> int:
    w = generate(_spec_from_args(args))
    _emit(format_word(w), args.out)
    info = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"length={w.length} alphabet={w.alphabet}", file=info)
    return EXIT_OK


def cmd_profile(args, cfg: RunConfig) -> int:
    w = read_word_file(args.word)
    prof = complexity_profile(w, min(cfg.n_max, w.length), word_id=os.path.basename(args.word))
    _emit(prof.to_json() + "\n" if cfg.output_format == "json" else prof.to_csv(), args.out)
    return EXIT_OK


def cmd_relation(args, cfg: RunConfig) -> int:
    if args.freqs:
        values = tuple(parse_angle(v) for v in args.freqs.split(","))
        f = FrequencyVector(values, "exact")
        tol = args.tolerance if args.tolerance is not None else 0
    elif args.catalog:
        f = exact_frequencies(catalog_spec(args.catalog, cfg.prefix_length))
        tol = args.tolerance if args.tolerance is not None else (0 if f.is_exact else 1e-6)
    elif args.word:
        f = empirical_frequencies(read_word_file(args.word))
        tol = args.tolerance if args.tolerance is not None else 1e-6
    else:
        raise InvalidParameter("give one of --freqs, --catalog, --word")
    rel = integer_relation_search(f, bound=args.bound, tolerance=tol)
    if rel is None:
        payload = {"coefficients": None, "residual": None, "bound": args.bound, "tolerance": str(tol), "certificate": False}
    else:
        payload = rel.as_dict()
    _emit(json.dumps(payload, indent=2, default=str) + "\n", args.out)
    return EXIT_OK


def cmd_induce(args, cfg: RunConfig) -> int:
    w = read_word_file(args.word)
    ind = induce(w, args.ell)
    rank = matrix_rank_check(ind.matrix, allow_non_square=True)
    sidecar = {
        "block_length": args.ell,
        "classes": [list(c) for c in ind.alphabet.classes],
        "matrix": ind.matrix.as_lists(),
        "det_or_rank": {"det": str(rank.det)} if rank.square else {"rank": rank.rank, "square": False},
    }
    if rank.square:
        sidecar["det_or_rank"]["rank"] = rank.rank
    _emit(format_word(ind.word), args.out)
    side = args.sidecar or (f"{args.out}.json" if args.out not in (None, "-") else None)
    text = json.dumps(sidecar, indent=2) + "\n"
    if side:
        atomic_write(side, text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


def cmd_decolor(args, cfg: RunConfig) -> int:
    w = read_word_file(args.word)
    _emit(format_word(decolor(w, DecoloringSpec(args.keep, args.zero))), args.out)
    return EXIT_OK


def cmd_conflict(args, cfg: RunConfig) -> int:
    t = TorusRotation(parse_angle(args.alpha), parse_angle(args.beta), parse_angle(args.x), parse_angle(args.y))
    n = find_conflict(t, args.n_max)
    stats = equidistribution_check(t, args.iterations or max(args.n_max, 1))
    payload = {
        "n_found": n,
        "n_max": args.n_max,
        "hit_fraction": float(stats.fraction),
        "box_area": float(stats.box_area),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_search(args, cfg: RunConfig) -> int:
    sc = SearchConfig(
        max_length=args.max_length,
        rho_bound=args.rho_bound,
        report_top=args.top,
        require_all_letters=args.all_letters,
        symmetry=args.symmetry,
        node_budget=args.node_budget,
    )
    try:
        report = search_rho_bounded(sc)
    except ResourceBound as exc:
        _emit(exc.partial.to_json() + "\n", args.out)
        raise
    _emit(report.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite not in (*SUITES, "all"):
        print(f"unknown suite {args.suite!r}; choose from {', '.join((*SUITES, 'all'))}", file=sys.stderr)
        return EXIT_USAGE
    suites = SUITES if args.suite == "all" else (args.suite,)
    length = args.length or cfg.prefix_length
    corpus = [catalog_spec(args.word, length)] if args.word else default_corpus(length)
    bounds = SuiteBounds(
        n_max=min(args.n_max or 100, length), ell_max=args.ell_max, seed=cfg.seed, ell=args.ell
    )
    report = run_lemma_suite(corpus, bounds, suites)
    _emit(report.to_json() + "\n", args.out)
    for word, row in report.matrix().items():
        print(word + ": " + ", ".join(f"{k}={v}" for k, v in row.items()), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wordlab", description="Abelian complexity, induction and rotation tools for infinite words.")
    p.add_argument("--precision", type=int, help="decimal digits for exact-angle refinement (env WORDLAB_PRECISION)")
    p.add_argument("--rng-seed", dest="global_seed", type=int, default=0, help="seed for randomized check selection")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a word prefix")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--periodic", metavar="PATTERN")
    src.add_argument("--subst", metavar="RULES", help='e.g. "0:01,1:0"')
    src.add_argument("--rot-binary", action="store_true")
    src.add_argument("--rot-ternary", action="store_true")
    src.add_argument("--catalog", choices=sorted(CATALOG))
    src.add_argument("--spec-file", metavar="FILE", help="key=value generator spec")
    g.add_argument("--seed", dest="seed", default=None, help="seed letter for --subst")
    g.add_argument("--alpha", default="0")
    g.add_argument("--x", default="0")
    g.add_argument("--cut1")
    g.add_argument("--cut2")
    g.add_argument("--partition", choices=("A", "B"), default="A")
    g.add_argument("--symbols")
    g.add_argument("--len", type=int)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    pr = sub.add_parser("profile", help="complexity profile of a word file")
    pr.add_argument("word")
    pr.add_argument("--n-max", type=int)
    pr.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    pr.add_argument("-o", "--out")
    pr.set_defaults(func=cmd_profile)

    r = sub.add_parser("relation", help="bounded integer relation among frequencies")
    r.add_argument("--freqs", help="comma-separated exact values, e.g. 1/2,1/3,1/6")
    r.add_argument("--catalog", choices=sorted(CATALOG))
    r.add_argument("--word")
    r.add_argument("--bound", type=int, default=50)
    r.add_argument("--tolerance", type=float)
    r.add_argument("-o", "--out")
    r.set_defaults(func=cmd_relation)

    i = sub.add_parser("induce", help="abelian induction on aligned blocks")
    i.add_argument("word")
    i.add_argument("--ell", type=int, required=True)
    i.add_argument("-o", "--out")
    i.add_argument("--sidecar", help="JSON sidecar path (default: OUT.json)")
    i.set_defaults(func=cmd_induce)

    d = sub.add_parser("decolor", help="keep one letter, zero the rest")
    d.add_argument("word")
    d.add_argument("--keep", required=True)
    d.add_argument("--zero", default="0")
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_decolor)

    c = sub.add_parser("conflict", help="first torus-rotation visit to the kept-letter box")
    c.add_argument("--alpha", required=True)
    c.add_argument("--beta", required=True)
    c.add_argument("--x", default="0")
    c.add_argument("--y", default="0")
    c.add_argument("--n-max", type=int, default=10**6)
    c.add_argument("--iterations", type=int, help="orbit length for the hit fraction (default n-max)")
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_conflict)

    s = sub.add_parser("search", help="enumerate ternary words with bounded abelian complexity")
    s.add_argument("--max-length", type=int, required=True)
    s.add_argument("--rho-bound", type=int, default=3)
    s.add_argument("--top", type=int, default=10)
    s.add_argument("--all-letters", action="store_true")
    s.add_argument("--symmetry", action="store_true")
    s.add_argument("--node-budget", type=int)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="run lemma check suites")
    v.add_argument("suite", help=f"one of {', '.join((*SUITES, 'all'))}")
    v.add_argument("--word", choices=sorted(CATALOG))
    v.add_argument("--ell", type=int)
    v.add_argument("--length", type=int)
    v.add_argument("--n-max", type=int)
    v.add_argument("--ell-max", type=int, default=20)
    v.add_argument("-o", "--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 1
        return int(exc.code or 0)
    try:
        overrides = {"seed": args.global_seed, "output_format": args.format}
        if args.precision is not None:
            overrides["precision_digits"] = args.precision
        if getattr(args, "n_max", None) and args.command == "profile":
            overrides["n_max"] = args.n_max
        cfg = RunConfig.from_env(**overrides)
    except (InvalidParameter, ValueError) as exc:
        print(f"wordlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg.apply()
    try:
        return args.func(args, cfg)
    except (WordlabError, ValueError, ArithmeticError, OSError) as exc:
        print(f"wordlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
