"""Command-line front door.

Subcommands: transform, synth, estimate, smooth, marginal, gen, validate.
All input and output is text over files or stdin/stdout (`-`); outputs are
byte-stable for identical inputs and seeds. Exit codes: 2 parse error,
3 domain error, 4 resource cap, 5 audit failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from pathlib import Path

from .coeffio import (
    dumps_coefficients,
    loads_coefficients,
    read_coefficients,
    write_coefficients,
)
from .datasets import Dataset, parse_dataset, serialize_dataset
from .errors import AuditFailure, DomainError, ParseError, RankMRAError
from .functions import RankingFunction
from .inference import generate_dataset, wavelet_empirical_estimator
from .marginals import marginal_based_estimator, naive_empirical_marginal
from .smoothing import kernel_smooth, local_regularize
from .transform import build_alpha_table, fwt
from .words import Subset, downward_closure, enumerate_rankings

WORKERS_ENV = "RANKMRA_WORKERS"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _parse_subset(text: str) -> Subset:
    items = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ParseError(f"empty item in subset {text!r}")
        try:
            items.append(int(token))
        except ValueError:
            raise ParseError(f"non-integer item {token!r}") from None
    if len(set(items)) != len(items):
        raise ParseError(f"repeated item in subset {text!r}")
    return tuple(sorted(items))


def _parse_word_token(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    items = []
    for piece in token.split(">"):
        piece = piece.strip()
        if not piece:
            raise ParseError(f"empty item in word {token!r}")
        try:
            items.append(int(piece))
        except ValueError:
            raise ParseError(f"non-integer item {piece!r}") from None
    if len(set(items)) != len(items):
        raise ParseError(f"repeated item in word {token!r}")
    return tuple(items)


def _write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_coefficients(x, path: str, k_max: int, universe: Subset, extra_comments=()):
    if path == "-":
        body = dumps_coefficients(x, k_max=k_max, universe=universe)
        if extra_comments:
            head, _, tail = body.partition("\n")
            body = head + "\n" + "".join(c + "\n" for c in extra_comments) + tail
        sys.stdout.write(body)
    else:
        write_coefficients(x, path, k_max=k_max, universe=universe)
        if extra_comments:
            body = Path(path).read_text()
            head, _, tail = body.partition("\n")
            Path(path).write_text(
                head + "\n" + "".join(c + "\n" for c in extra_comments) + tail
            )


def _dataset_universe(dataset: Dataset) -> Subset:
    items: set[int] = set()
    for a in dataset.design():
        items.update(a)
    return tuple(sorted(items))


def _table_for(dataset: Dataset, kmax_flag: int | None):
    largest = max((len(a) for a in dataset.design()), default=2)
    k_max = kmax_flag if kmax_flag is not None else max(2, largest)
    table = build_alpha_table(k_max)
    return table


def _format_function(f: RankingFunction, a: Subset) -> str:
    lines = []
    for word in enumerate_rankings(a):
        lines.append(f"{'>'.join(str(i) for i in word)} {f[word]:.17g}")
    return "\n".join(lines) + "\n"


def cmd_transform(args) -> int:
    dataset = parse_dataset(_read_text(args.input))
    table = _table_for(dataset, args.kmax)
    f = RankingFunction()
    for _, word in dataset.observations:
        f[word] = f[word] + 1.0
    x = fwt(f, table)
    _emit_coefficients(x, args.output, table.k_max, _dataset_universe(dataset))
    return 0


def cmd_synth(args) -> int:
    if args.input == "-":
        x, meta = loads_coefficients(sys.stdin.read())
        if meta["universe"] is None:
            union: set[int] = set()
            for b, _ in x.blocks():
                union.update(b)
            meta["universe"] = tuple(sorted(union))
    else:
        x, meta = read_coefficients(args.input)
    subset = _parse_subset(args.subset) if args.subset else meta["universe"]
    if not subset or len(subset) < 2:
        raise DomainError(f"synthesis subset {subset} needs at least 2 items")
    from .transform import synthesize

    _write_output(_format_function(synthesize(x, subset), subset), args.output)
    return 0


def cmd_estimate(args) -> int:
    dataset = parse_dataset(_read_text(args.input))
    table = _table_for(dataset, args.kmax)
    x = wavelet_empirical_estimator(dataset, table)
    coverage: Counter = Counter()
    for a, count in Counter(a for a, _ in dataset.observations).items():
        for b in downward_closure([a]):
            coverage[b] += count
    comments = [
        f"# coverage {','.join(str(i) for i in b) if b else '-'}: {coverage[b]}"
        for b in sorted(coverage, key=lambda b: (len(b), b))
    ]
    _emit_coefficients(
        x, args.output, table.k_max, _dataset_universe(dataset), comments
    )
    return 0


def cmd_smooth(args) -> int:
    if args.input == "-":
        x, meta = loads_coefficients(sys.stdin.read())
    else:
        x, meta = read_coefficients(args.input)
    if args.local:
        subset = _parse_subset(args.local)
        smoothed = local_regularize(x, subset, args.bandwidth)
        universe = subset
    else:
        if args.universe:
            universe = _parse_subset(args.universe)
        elif meta["universe"]:
            universe = meta["universe"]
        else:
            union: set[int] = set()
            for b, _ in x.blocks():
                union.update(b)
            universe = tuple(sorted(union))
        smoothed = kernel_smooth(x, args.bandwidth, universe)
    k_max = meta["k_max"] if meta["k_max"] is not None else 8
    _emit_coefficients(smoothed, args.output, k_max, universe)
    return 0


def cmd_marginal(args) -> int:
    dataset = parse_dataset(_read_text(args.input))
    subset = _parse_subset(args.subset)
    naive = naive_empirical_marginal(dataset, subset)
    covering = marginal_based_estimator(dataset, subset)
    lines = [f"# marginal {','.join(str(i) for i in subset)}", "# word naive marginal-based"]
    for word in enumerate_rankings(subset):
        token = ">".join(str(i) for i in word)
        lines.append(f"{token} {naive[word]:.17g} {covering[word]:.17g}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def cmd_gen(args) -> int:
    p = _parse_model(_read_text(args.model))
    nu = _parse_design(_read_text(args.design))
    dataset = generate_dataset(p, nu, args.n_obs, args.seed)
    _write_output(serialize_dataset(dataset), args.output)
    return 0


def _parse_model(text: str) -> RankingFunction:
    entries: dict[tuple[int, ...], float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'ranking probability'", line_no)
        word = _parse_word_token(parts[0])
        if len(word) < 2:
            raise ParseError("model ranking needs at least 2 items", line_no)
        if word in entries:
            raise ParseError(f"repeated ranking {parts[0]!r}", line_no)
        try:
            entries[word] = float(parts[1])
        except ValueError:
            raise ParseError(f"bad probability {parts[1]!r}", line_no) from None
    if not entries:
        raise ParseError("empty model file")
    total = sum(entries.values())
    if abs(total - 1.0) > 1e-9:
        raise DomainError(f"model probabilities sum to {total!r}, expected 1")
    return RankingFunction({w: v / total for w, v in entries.items()})


def _parse_design(text: str) -> dict[Subset, float]:
    weights: dict[Subset, float] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (1, 2):
            raise ParseError("expected 'subset [weight]'", line_no)
        subset = _parse_subset(parts[0])
        if len(subset) < 2:
            raise ParseError("design subset needs at least 2 items", line_no)
        if subset in weights:
            raise ParseError(f"repeated subset {parts[0]!r}", line_no)
        weight = 1.0
        if len(parts) == 2:
            try:
                weight = float(parts[1])
            except ValueError:
                raise ParseError(f"bad weight {parts[1]!r}", line_no) from None
        if weight < 0:
            raise DomainError(f"negative design weight on line {line_no}")
        weights[subset] = weight
    if not weights:
        raise ParseError("empty design file")
    total = sum(weights.values())
    if total <= 0:
        raise DomainError("design weights sum to zero")
    return {b: w / total for b, w in weights.items()}


def cmd_validate(args) -> int:
    from . import validation

    workers = args.workers
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers < 1:
        raise DomainError(f"worker count {workers} must be >= 1")
    suite = args.suite
    if suite == "mra":
        report = validation.mra_audit(args.n)
    elif suite == "shuffle":
        report = validation.shuffle_audit(args.n, workers=workers)
    elif suite == "h2":
        report = validation.h2_audit(args.n)
    elif suite == "syt":
        report = validation.syt_dimension_audit(args.n)
    else:
        report = validation.embedding_audit(args.n)
    sys.stdout.write(report.to_json() + "\n")
    if not report.passed:
        raise AuditFailure(f"suite {suite} failed at n={args.n}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankmra",
        description="Multiresolution analysis of incomplete rankings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="wavelet transform of a rankings file")
    p.add_argument("input", help="rankings file, one a>b>c line per observation, or -")
    p.add_argument("-o", "--output", default="-", help="coefficient file or - (default)")
    p.add_argument("--kmax", type=int, default=None, help="alpha table size")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("synth", help="evaluate coefficients on a subset")
    p.add_argument("input", help="coefficient file or -")
    p.add_argument("--subset", default=None, help="items, e.g. 1,2,3 (default: universe)")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("estimate", help="wavelet empirical estimator of a rankings file")
    p.add_argument("input", help="rankings file or -")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--kmax", type=int, default=None, help="alpha table size")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("smooth", help="kernel-smooth a coefficient file")
    p.add_argument("input", help="coefficient file or -")
    p.add_argument("--h", dest="bandwidth", type=int, required=True, help="bandwidth")
    p.add_argument("--local", default=None, help="smooth only inside this subset")
    p.add_argument("--universe", default=None, help="item universe override")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("marginal", help="empirical marginals of a rankings file")
    p.add_argument("input", help="rankings file or -")
    p.add_argument("--subset", required=True, help="items, e.g. 1,3")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("gen", help="sample a synthetic censored dataset")
    p.add_argument("--model", required=True, help="ranking probability file")
    p.add_argument("--design", required=True, help="subset [weight] file")
    p.add_argument("--n-obs", type=int, required=True, help="number of observations")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="run a structural audit suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=["mra", "shuffle", "h2", "syt", "embedding"],
    )
    p.add_argument("--n", type=int, required=True, help="number of items")
    p.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"parallel audit jobs (default ${WORKERS_ENV} or 1)",
    )
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RankMRAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
