"""Command-line entrypoints for abstract numeration systems and van der Corput sequences."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Iterable, List, NoReturn, Optional, TextIO, Tuple

import structlog
from dotenv import load_dotenv

from app.algebra.field import FieldElement, NumberField
from app.algebra.polynomials import format_polynomial, parse_polynomial
from app.automaton.io import dump_automaton, load_automaton
from app.automaton.ordered import OrderedAutomaton, is_self_mirror, mirror
from app.automaton.words import format_word, parse_ep_word, parse_word
from app.beta.automaton import beta_automaton
from app.beta.expansion import beta_polynomial, quasi_greedy_one
from app.brs.criteria import prop5_check, thm2_decide
from app.brs.empirical import empirical_check
from app.discrepancy.counting import DiscrepancyPoint, check_brute_cap
from app.discrepancy.sweep import parallel_sweep_rows, resumable_sweep_rows, sweep_key, sweep_rows
from app.errors import AvdcError, UsageError
from app.numeration.shortlex import ShortlexSystem, lprime_rank, lprime_unrank
from app.observability.log import DEFAULT_LOGGING_PATH, configure_logging
from app.observability.metrics import MetricsRegistry, record_duration
from app.observability.tracing import bind_command, clear_context, span
from app.sequence.values import VanDerCorputSequence, valued_word
from app.settings import DEFAULT_SETTINGS_PATH, Settings, load_settings
from app.spectral.eigen import SpectralData, factorization_text, spectral_data
from app.spectral.matrices import is_pisot_automaton
from app.storage.checkpoint import load_checkpoint
from app.storage.layout import OutputLayout
from app.storage.writers import (
    SEQUENCE_HEADER,
    SWEEP_HEADER,
    CsvStream,
    truncate_sweep_csv,
    write_json_report,
)

logger = structlog.get_logger(__name__)

Handler = Callable[[argparse.Namespace, Settings, MetricsRegistry], None]


class CliParser(argparse.ArgumentParser):
    """Argument parser that reports usage problems with exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    """Create the CLI argument parser."""
    parser = CliParser(prog="avdc", description="abstract van der Corput sequences")
    parser.add_argument("--settings", type=Path, default=DEFAULT_SETTINGS_PATH, help="Settings TOML file")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Override the configured log level",
    )
    parser.add_argument("--metrics", action="store_true", help="Export counters to the metrics directory")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="Check that an automaton file is totally ordered")
    validate.add_argument("automaton", type=Path)

    mirror_cmd = sub.add_parser("mirror", help="Print the automaton of the reversed language")
    mirror_cmd.add_argument("automaton", type=Path)

    spectral = sub.add_parser("spectral", help="Characteristic polynomial, Pisot verdict and eigen-data")
    spectral.add_argument("automaton", type=Path)
    spectral.add_argument("--allow-reducible", action="store_true", help="Work in the Perron factor's field")

    rank_cmd = sub.add_parser("rank", help="Shortlex rank of a word")
    rank_cmd.add_argument("automaton", type=Path)
    rank_cmd.add_argument("word", help="Comma separated letters, or ε")
    rank_cmd.add_argument("--lprime", action="store_true", help="Rank in the pruned mirror language")

    unrank_cmd = sub.add_parser("unrank", help="Word of a given shortlex rank")
    unrank_cmd.add_argument("automaton", type=Path)
    unrank_cmd.add_argument("n", type=_non_negative)
    unrank_cmd.add_argument("--lprime", action="store_true", help="Unrank in the pruned mirror language")

    sequence = sub.add_parser("sequence", help="Emit x_0, ..., x_{N-1} as CSV")
    sequence.add_argument("automaton", type=Path)
    sequence.add_argument("--n-max", type=_non_negative, required=True)
    sequence.add_argument("--csv", type=Path, help="Write to this file instead of stdout")

    discrepancy = sub.add_parser("discrepancy", help="Sweep D(N, [0, y)) with y = ⟨u⟩")
    discrepancy.add_argument("automaton", type=Path)
    discrepancy.add_argument("--y", required=True, help="Eventually periodic word pre|per")
    discrepancy.add_argument("--n-max", type=_non_negative, required=True)
    discrepancy.add_argument("--stride", type=_positive, default=1)
    discrepancy.add_argument("--jobs", type=_positive, default=1, help="Worker processes for the sweep")
    discrepancy.add_argument("--csv", type=Path, help="Write to this file instead of stdout")
    discrepancy.add_argument("--resume", action="store_true", help="Resume from a saved checkpoint")

    brs = sub.add_parser("brs", help="Decide whether [0, ⟨u⟩) is a bounded remainder set")
    brs.add_argument("automaton", type=Path)
    brs.add_argument("--u", required=True, help="Eventually periodic word pre|per")
    brs.add_argument("--empirical", type=_positive, help="Also sweep up to this N")
    brs.add_argument("--json", type=Path, help="Write the verdict and empirical report as JSON")

    beta = sub.add_parser("beta", help="Quasi-greedy expansion of 1 and the β-automaton")
    beta.add_argument("--poly", required=True, help="Integer coefficients, constant term first")
    beta.add_argument("--out", type=Path, help="Write the automaton file here")
    beta.add_argument("--allow-non-pisot", action="store_true")

    return parser


def _load(path: Path) -> OrderedAutomaton:
    if not path.exists():
        raise UsageError(f"automaton file not found: {path}")
    return load_automaton(path)


def _open_output(path: Optional[Path]) -> TextIO:
    if path is None:
        return sys.stdout
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", encoding="utf-8", newline="")


def _sequence_for(aut: OrderedAutomaton, settings: Settings) -> VanDerCorputSequence:
    return VanDerCorputSequence(aut, spectral_data(aut, algebra=settings.algebra))


def cmd_validate(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    aut = _load(args.automaton)
    print(f"valid: d={aut.d} sigma={aut.sigma}")
    print(f"self-mirror: {str(is_self_mirror(aut)).lower()}")


def cmd_mirror(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    sys.stdout.write(dump_automaton(mirror(_load(args.automaton))))


def _render_vector(name: str, values: Iterable[Tuple[int, FieldElement]], digits: int) -> List[str]:
    return [f"{name}_{index}: {value.format()} = {value.to_decimal(digits)}" for index, value in values]


def cmd_spectral(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    aut = _load(args.automaton)
    data: SpectralData = spectral_data(aut, allow_reducible=args.allow_reducible, algebra=settings.algebra)
    digits = settings.discrepancy.decimal_digits
    lines = [
        f"charpoly: {format_polynomial(data.charpoly)}",
        f"factorization: {factorization_text(data.charpoly)}",
        f"minpoly: {format_polynomial(data.field.minpoly)}",
        f"beta: {data.beta.to_decimal(digits)}",
        f"pisot: {str(is_pisot_automaton(aut)).lower()}",
    ]
    lines += _render_vector("eta", enumerate(data.eta), digits)[1:]
    if data.theta is not None:
        lines += _render_vector("theta", enumerate(data.theta), digits)[1:]
    else:
        lines.append("theta: unavailable (reducible characteristic polynomial)")
    print("\n".join(lines))


def cmd_rank(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    aut = _load(args.automaton)
    word = parse_word(args.word)
    if args.lprime:
        print(lprime_rank(aut, mirror(aut), word))
    else:
        print(ShortlexSystem(aut).rank(word))


def cmd_unrank(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    aut = _load(args.automaton)
    if args.lprime:
        print(format_word(lprime_unrank(aut, mirror(aut), args.n)))
    else:
        print(format_word(ShortlexSystem(aut).unrank(args.n)))


def cmd_sequence(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    seq = _sequence_for(_load(args.automaton), settings)
    digits = settings.discrepancy.decimal_digits
    handle = _open_output(args.csv)
    try:
        stream = CsvStream(handle, SEQUENCE_HEADER)
        for n, word, x in seq.iterate():
            if n >= args.n_max:
                break
            stream.write((n, format_word(word), x.to_decimal(digits)))
            metrics.incr("points_generated")
        stream.flush()
    finally:
        if args.csv is not None:
            handle.close()


def cmd_discrepancy(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    if args.resume and args.jobs > 1:
        raise UsageError("--resume runs sequentially; drop --jobs")
    check_brute_cap(args.n_max, settings.discrepancy.brute_cap)
    aut = _load(args.automaton)
    seq = _sequence_for(aut, settings)
    u = valued_word(aut, seq.data, parse_ep_word(args.y))
    y = u.value
    digits = settings.discrepancy.decimal_digits
    key = sweep_key(aut, y, args.stride)
    layout = OutputLayout.from_settings(settings.output)
    resume = load_checkpoint(layout.checkpoints, key) if args.resume else None
    appending = False
    if resume is not None and args.csv is not None:
        if args.csv.exists():
            kept = truncate_sweep_csv(args.csv, resume.n_next)
            logger.info("sweep_csv_truncated", path=str(args.csv), n_next=resume.n_next, rows=kept)
            appending = True
        else:
            logger.warning("sweep_csv_missing_on_resume", path=str(args.csv), n_next=resume.n_next)
    if appending:
        handle = args.csv.open("a", encoding="utf-8", newline="")
    else:
        handle = _open_output(args.csv)
    try:
        stream = CsvStream(handle, SWEEP_HEADER, write_header=not appending)
        rows: Iterable[DiscrepancyPoint]
        if args.resume:
            rows = resumable_sweep_rows(
                seq,
                y,
                args.n_max,
                args.stride,
                checkpoint_root=layout.checkpoints,
                every=settings.discrepancy.checkpoint_every,
                before_save=stream.flush,
                metrics=metrics,
            )
        elif args.jobs > 1:
            rows = parallel_sweep_rows(seq, y, args.n_max, args.stride, jobs=args.jobs)
        else:
            rows = sweep_rows(seq, y, args.n_max, args.stride)
        with span("discrepancy_sweep", key=key[:12], n_max=args.n_max, resumed=resume is not None):
            for point in rows:
                stream.write((point.N, point.count, point.D.to_decimal(digits)))
                metrics.incr("rows_written")
        metrics.incr("comparisons", args.n_max)
        stream.flush()
    finally:
        if args.csv is not None:
            handle.close()


def cmd_brs(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    aut = _load(args.automaton)
    data = spectral_data(aut, allow_reducible=True, algebra=settings.algebra)
    u = valued_word(aut, data, parse_ep_word(args.u))
    digits = settings.discrepancy.decimal_digits
    print(f"u: {u}")
    print(f"y: {u.value.format()} = {u.value.to_decimal(digits)}")
    prop5 = prop5_check(aut, data, u)
    if not data.irreducible:
        print(f"prop5: {'none' if prop5 is None else f'm={prop5[0]} q={prop5[1]}'}")
    verdict = thm2_decide(aut, data, u)
    metrics.incr("brs_states", verdict.explored)
    lines = [
        f"verdict: {verdict.label}",
        f"pisot: {str(verdict.pisot).lower()}",
        f"minimal-letter-rule: {str(verdict.minimal_letter_rule).lower()}",
        f"prop5: {'none' if verdict.prop5 is None else f'm={verdict.prop5[0]} q={verdict.prop5[1]}'}",
    ]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness.describe()}")
    payload: Dict[str, object] = {
        "u": str(u),
        "decision": verdict.decision,
        "label": verdict.label,
        "pisot": verdict.pisot,
        "minimal_letter_rule": verdict.minimal_letter_rule,
        "prop5": list(verdict.prop5) if verdict.prop5 else None,
        "witness": None
        if verdict.witness is None
        else {
            "v": format_word(verdict.witness.v),
            "k": verdict.witness.k,
            "expected": verdict.witness.expected,
            "zeta": str(verdict.witness.zeta_value),
        },
    }
    if args.empirical:
        seq = VanDerCorputSequence(aut, data, require_pisot=False)
        report = empirical_check(
            seq, u.value, args.empirical, cap=settings.discrepancy.brute_cap, options=settings.brs
        )
        lines.append(
            f"empirical: max|D|={report.max_abs_D:.6f} at N={report.argmax_N} "
            f"slope={report.slope:.6f} {'looks bounded' if report.looks_bounded else 'grows'}"
        )
        payload["empirical"] = report.model_dump()
    print("\n".join(lines))
    if args.json is not None:
        write_json_report(args.json, payload)


def cmd_beta(args: argparse.Namespace, settings: Settings, metrics: MetricsRegistry) -> None:
    field = NumberField(
        parse_polynomial(args.poly),
        precision_bits=settings.algebra.initial_precision_bits,
        max_refinements=settings.algebra.max_refinements,
    )
    expansion = quasi_greedy_one(
        field, remainder_cap=settings.beta.remainder_cap, allow_non_pisot=args.allow_non_pisot
    )
    aut = beta_automaton(expansion)
    print(f"t: {expansion}")
    print(f"beta-polynomial: {format_polynomial(beta_polynomial(expansion))}")
    text = dump_automaton(aut)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        print(f"automaton: {args.out}")


COMMANDS: Dict[str, Handler] = {
    "validate": cmd_validate,
    "mirror": cmd_mirror,
    "spectral": cmd_spectral,
    "rank": cmd_rank,
    "unrank": cmd_unrank,
    "sequence": cmd_sequence,
    "discrepancy": cmd_discrepancy,
    "brs": cmd_brs,
    "beta": cmd_beta,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the CLI; returns the process exit code."""
    load_dotenv()
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = load_settings(args.settings)
    except AvdcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    configure_logging(DEFAULT_LOGGING_PATH, level=args.log_level or settings.app.log_level)
    automaton = getattr(args, "automaton", None)
    bind_command(command=args.command, automaton=automaton.name if automaton else None)
    metrics = MetricsRegistry()
    try:
        with record_duration(metrics):
            COMMANDS[args.command](args, settings, metrics)
    except AvdcError as exc:
        logger.warning("command_failed", command=args.command, error=str(exc), exit_code=exc.exit_code)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        clear_context()
    if args.metrics:
        layout = OutputLayout.from_settings(settings.output)
        metrics.export(path=layout.metrics / f"{args.command}.json", command=args.command)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
