"""Command-line interface for determinantal strata computations."""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any

import msgspec

from .config import SEED_ENV_VAR, RunConfig
from .determinantal import (
    DegreeMatrixSpec,
    DeterminantalAlgebra,
    buchsbaum_rim_betti,
    eagon_northcott_betti,
    load_spec,
    load_spec_file,
    sample_standard_matrix,
)
from .exceptions import DetStrataError, EmptyStratum, NotACornerOverlap
from .formulas import nonempty, stratum_invariants
from .ghost import GenerizationReport, corner_overlaps, render_betti_diff, verify_generization
from .groebner.resolution import BettiTable, minimal_free_resolution
from .registry import ReproductionResult, example_ids, reproduce
from .types import Measured
from .verdicts import THEOREMS, render_report, report_payload, sufficient_condition_scan, verify

logger = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_EMPTY = 2
EXIT_UNDECIDED = 3


def setup_logging(verbosity: int = 0) -> None:
    """Configure logging for the CLI application.

    Args:
        verbosity: Logging verbosity level (0=WARNING, 1=INFO, 2+=DEBUG)
    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(min(verbosity, 2), logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s:%(lineno)d – %(message)s",
    )


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _emit(payload: Any) -> None:
    print(msgspec.json.format(msgspec.json.encode(payload), indent=2).decode())


def load_explicit_entries(path: Path) -> tuple[tuple[str, ...], ...]:
    """Read a JSON array of rows of polynomial text (``*`` for a general form).

    Raises:
        FileNotFoundError: If the file does not exist
        DetStrataError: If the file is not a list of lists of strings
    """
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        rows = msgspec.convert(data, type=list[list[str]])
    except (json.JSONDecodeError, msgspec.ValidationError) as e:
        raise DetStrataError(f"Invalid matrix file {path}: {e}") from e
    return tuple(tuple(row) for row in rows)


def build_spec(args: argparse.Namespace, config: RunConfig) -> DegreeMatrixSpec:
    """The spec from ``--spec FILE`` or from ``--b/--a/--n``, with overrides applied.

    A seed from ``--seed`` or the environment replaces the seed of a spec file.
    """
    spec_file = getattr(args, "spec", None)
    if spec_file:
        spec = load_spec_file(Path(spec_file), config.workspace.schema_path)
    else:
        if args.b is None or args.a is None or args.n is None:
            raise DetStrataError("give either --spec FILE or all of --b, --a and --n")
        data: dict[str, Any] = {"n": args.n, "b": list(args.b), "a": list(args.a)}
        spec = load_spec(data)
    if config.prime is not None:
        spec = spec.with_prime(config.prime)
    if not spec_file or args.seed is not None or os.environ.get(SEED_ENV_VAR):
        spec = spec.with_seed(config.seed)
    explicit = getattr(args, "explicit", None)
    if explicit:
        spec = msgspec.structs.replace(spec, explicit_entries=load_explicit_entries(Path(explicit)))
    return spec


def cmd_stratum_info(args: argparse.Namespace) -> None:
    """Print the closed-form invariants of W_s(b;a)."""
    try:
        config = RunConfig.from_args(args)
        spec = build_spec(args, config)
        if not nonempty(spec):
            raise EmptyStratum(f"W_s{spec.describe()} is empty")
        invariants = stratum_invariants(spec)
        conditions = sufficient_condition_scan(spec)

        if config.output_format == "json":
            _emit(
                {
                    "spec": msgspec.to_builtins(spec),
                    "invariants": {
                        "lambda_c": Measured(invariants.lambda_c, "closed-form"),
                        "K": Measured(invariants.K, "closed-form"),
                        "ell": Measured(invariants.ell, "closed-form"),
                        "h": Measured(invariants.h, "closed-form"),
                        "lambda": Measured(invariants.total, "closed-form"),
                    },
                    "conditions": msgspec.to_builtins(conditions),
                }
            )
        else:
            K = ", ".join(f"K_{i + 3} = {k}" for i, k in enumerate(invariants.K))
            print(f"W_s{spec.describe()}  t = {spec.t}, c = {spec.c}")
            print(f"λ_{spec.c} = {invariants.lambda_c}" + (f", {K}" if K else ""))
            print(f"λ = {invariants.total}")
            if conditions.dimension_formula:
                print(f"✓ dim W_s(b;a) = {invariants.total} for general A (degree gap)")
            if conditions.linear_exception:
                print("✗ linear exception: dim W_s(b;a) < λ")
        sys.exit(0)

    except EmptyStratum as e:
        logger.error(f"✗ {e}")
        sys.exit(EXIT_EMPTY)
    except (FileNotFoundError, DetStrataError) as e:
        logger.error(f"Stratum info error: {e}")
        sys.exit(EXIT_MISMATCH)


def cmd_verify(args: argparse.Namespace) -> None:
    """Run the hypothesis battery and the verdict engine on a sample of W_s(b;a)."""
    theorems = tuple(t.strip() for t in args.theorems.split(",")) if args.theorems else THEOREMS
    unknown = [t for t in theorems if t not in THEOREMS]
    if unknown:
        logger.error(f"Unknown theorems: {', '.join(unknown)} (known: {', '.join(THEOREMS)})")
        sys.exit(EXIT_MISMATCH)

    try:
        config = RunConfig.from_args(args)
        spec = build_spec(args, config)
        logger.info(f"Verifying W_s{spec.describe()} with bounds {config.bounds.describe()}")
        report = verify(spec, config.bounds, theorems=theorems, cross_check=args.cross_check)

        if config.output_format == "json":
            _emit(report_payload(report))
        else:
            print(render_report(report))

        undecided = report.undecided(theorems)
        if undecided:
            for entry in undecided:
                logger.error(
                    f"✗ {entry.theorem}: undecided within bounds: {', '.join(entry.undecided)}"
                )
            sys.exit(EXIT_UNDECIDED)
        sys.exit(0)

    except EmptyStratum as e:
        logger.error(f"✗ {e}")
        sys.exit(EXIT_EMPTY)
    except (FileNotFoundError, DetStrataError) as e:
        logger.error(f"Verify error: {e}")
        sys.exit(EXIT_MISMATCH)


def _predicted_table(spec: DegreeMatrixSpec, of: str) -> BettiTable | None:
    if of == "A":
        return eagon_northcott_betti(spec)
    if of == "M":
        return buchsbaum_rim_betti(spec)
    return None


def cmd_betti(args: argparse.Namespace) -> None:
    """Print the minimal graded Betti table of A, M or I/I² over R or over A."""
    try:
        config = RunConfig.from_args(args)
        spec = build_spec(args, config)
        alg = DeterminantalAlgebra(sample_standard_matrix(spec).matrix)
        pres, exact_bound = alg.presentation_of(args.of, args.ring)
        length = None if args.ring == "R" else config.bounds.homological
        bound = (
            exact_bound
            if exact_bound is not None and config.bounds.degree is None
            else config.bounds.degree_for(pres.max_twist, spec.n)
        )
        table = minimal_free_resolution(
            pres, length=length, degree_bound=bound, strict=False
        ).betti
        method = "truncated" if table.truncated or exact_bound is None else "groebner"
        predicted = _predicted_table(spec, args.of) if args.ring == "R" else None

        if config.output_format == "json":
            payload: dict[str, Any] = {
                "spec": msgspec.to_builtins(spec),
                "ring": args.ring,
                "of": args.of,
                "betti": Measured(table.to_json(), method),
            }
            if predicted is not None:
                payload["predicted"] = Measured(predicted.to_json(), "closed-form")
                payload["matches_prediction"] = table == predicted
            _emit(payload)
        else:
            print(table.render())
            if predicted is not None:
                if table == predicted:
                    print("✓ matches the predicted closed-form complex")
                else:
                    print("✗ differs from the predicted closed-form complex:")
                    print(render_betti_diff(predicted, table))
        sys.exit(0)

    except (FileNotFoundError, DetStrataError) as e:
        logger.error(f"Betti error: {e}")
        sys.exit(EXIT_MISMATCH)


def _ghost_payload(report: GenerizationReport) -> dict[str, Any]:
    return {
        "spec": msgspec.to_builtins(report.spec),
        "reduced": msgspec.to_builtins(report.reduced),
        "corner": list(report.corner),
        "special": Measured(report.special.to_json(), "groebner"),
        "general": Measured(report.general.to_json(), "groebner"),
        "contribution": Measured(report.contribution.to_json(), "closed-form"),
        "special_ghosts": msgspec.to_builtins(report.special_ghosts),
        "general_ghosts": msgspec.to_builtins(report.general_ghosts),
        "hilbert_agree": report.hilbert_agree,
        "ghosts_removed_exactly": report.ghosts_removed_exactly,
        "matches_reduced_en": report.matches_reduced_en,
        "bordered_ideal_equal": report.bordered_ideal_equal,
        "seeds": report.seeds,
        "findings": report.findings,
    }


def cmd_ghost(args: argparse.Namespace) -> None:
    """Compare a sample with a zero at a corner overlap against its generization."""
    try:
        config = RunConfig.from_args(args)
        spec = build_spec(args, config)
        if args.corner is not None:
            if len(args.corner) != 2:
                raise NotACornerOverlap(f"--corner takes i,j; got {list(args.corner)}")
            i, j = args.corner
        else:
            corners = corner_overlaps(spec)
            if not corners:
                raise NotACornerOverlap(f"{spec.describe()} has no corner overlap a_j = b_i")
            i, j = corners[0]
        report = verify_generization(spec, i, j)

        if config.output_format == "json":
            _emit(_ghost_payload(report))
        else:
            print(f"W_s{report.spec.describe()} → W_s{report.reduced.describe()}")
            print(render_betti_diff(report.special, report.general))
            for label, ok in (
                ("Hilbert functions agree", report.hilbert_agree),
                ("exactly the attributable ghosts removed", report.ghosts_removed_exactly),
                ("general table is the reduced Eagon–Northcott table", report.matches_reduced_en),
                ("bordered matrix has the same ideal", report.bordered_ideal_equal),
            ):
                print(f"{'✓' if ok else '✗'} {label}")
            for overlap in report.general_ghosts.persistent():
                print(f"  persistent ghost R(-{overlap.j}) in steps {overlap.i}, {overlap.i + 1}")
            for finding in report.findings:
                print(f"  finding: {finding}")
        sys.exit(0)

    except EmptyStratum as e:
        logger.error(f"✗ {e}")
        sys.exit(EXIT_EMPTY)
    except (FileNotFoundError, DetStrataError) as e:
        logger.error(f"Ghost error: {e}")
        sys.exit(EXIT_MISMATCH)


def _print_reproduction(result: ReproductionResult) -> None:
    for instance in result.instances:
        mark = "✓" if instance.passed else "✗"
        print(
            f"{mark} {result.example} [{instance.label}] p = {instance.prime}: "
            + f"{len(instance.checked)} fields"
        )
        for diff in instance.diffs:
            print(f"    {diff.describe()}")
        for note in instance.notes:
            print(f"    note: {note}")


def cmd_reproduce(args: argparse.Namespace) -> None:
    """Recompute worked examples and diff them against their golden files."""
    config = RunConfig.from_args(args)
    try:
        ids = example_ids(config.workspace) if args.example_id == "all" else [args.example_id]
        results = [reproduce(example_id, config.workspace) for example_id in ids]
    except KeyError as e:
        logger.error(f"Reproduce error: {e.args[0]}")
        sys.exit(EXIT_MISMATCH)
    except (FileNotFoundError, DetStrataError) as e:
        logger.error(f"Reproduce error: {e}")
        sys.exit(EXIT_MISMATCH)

    if config.output_format == "json":
        _emit([msgspec.to_builtins(result) for result in results])
    else:
        for result in results:
            _print_reproduction(result)

    failed = [result.example for result in results if not result.passed]
    if failed:
        logger.error(f"✗ Mismatches in: {', '.join(failed)}")
        sys.exit(EXIT_MISMATCH)
    logger.info(f"✓ Reproduced {len(results)} examples")
    sys.exit(0)


def _add_spec_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", type=str, help="JSON spec file (instead of --b/--a/--n)")
    parser.add_argument("--b", type=_int_list, help="Row degrees b, ascending, e.g. 0,0")
    parser.add_argument("--a", type=_int_list, help="Column degrees a, ascending, e.g. 1,1,2,5")
    parser.add_argument("--n", type=int, help="The ring is k[x0..xn]")
    parser.add_argument("--p", type=int, help="Prime characteristic (default: 10007)")
    parser.add_argument(
        "--seed",
        type=int,
        help=f"Sampling seed (default: ${SEED_ENV_VAR}, then 0)",
    )
    parser.add_argument(
        "--bounds",
        type=str,
        help="Truncation bounds as hom=N,deg=N (default: hom=3, degree bound derived)",
    )
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: text)",
    )


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI."""
    parser = argparse.ArgumentParser(
        prog="detstrata",
        description="Exact computations on determinantal strata W_s(b;a): invariants, "
        + "Hom/Ext hypotheses, theorem verdicts and ghost terms.",
    )

    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (use -v for INFO, -vv for DEBUG)",
    )

    parser.add_argument(
        "--workspace",
        type=str,
        default=".",
        help="Path to the workspace directory holding data/ (default: current directory)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # stratum-info subcommand
    info_parser = subparsers.add_parser(
        "stratum-info", help="Closed-form invariants λ_c, K_i and λ of W_s(b;a)"
    )
    _add_spec_arguments(info_parser)
    info_parser.set_defaults(func=cmd_stratum_info)

    # verify subcommand
    verify_parser = subparsers.add_parser(
        "verify", help="Check theorem hypotheses on a sample and report verdicts"
    )
    _add_spec_arguments(verify_parser)
    verify_parser.add_argument(
        "--theorems",
        type=str,
        help="Comma-separated theorems to evaluate (default: all of "
        + ", ".join(THEOREMS)
        + ")",
    )
    verify_parser.add_argument(
        "--cross-check",
        action="store_true",
        help="Also compute ext¹_A(M, M) from a truncated A-resolution",
    )
    verify_parser.set_defaults(func=cmd_verify)

    # betti subcommand
    betti_parser = subparsers.add_parser("betti", help="Minimal graded Betti table")
    _add_spec_arguments(betti_parser)
    betti_parser.add_argument(
        "--ring", choices=["R", "A"], default="R", help="Resolve over R or over A (default: R)"
    )
    betti_parser.add_argument(
        "--of",
        choices=["A", "M", "I_conormal"],
        default="A",
        help="Module to resolve: A = R/I, M = coker of the matrix, or I/I² (default: A)",
    )
    betti_parser.add_argument(
        "--explicit",
        type=str,
        help="JSON file with the matrix rows as polynomial text ('*' for a general form)",
    )
    betti_parser.set_defaults(func=cmd_betti)

    # ghost subcommand
    ghost_parser = subparsers.add_parser(
        "ghost", help="Remove a corner overlap a_j = b_i and compare Betti tables"
    )
    _add_spec_arguments(ghost_parser)
    ghost_parser.add_argument(
        "--corner",
        type=_int_list,
        help="Corner position i,j, 0-based with rows in ascending b (default: first corner)",
    )
    ghost_parser.add_argument(
        "--explicit",
        type=str,
        help="JSON file with the matrix rows as polynomial text ('*' for a general form)",
    )
    ghost_parser.set_defaults(func=cmd_ghost)

    # reproduce subcommand
    reproduce_parser = subparsers.add_parser(
        "reproduce", help="Recompute a registry example and diff it against its golden file"
    )
    reproduce_parser.add_argument(
        "example_id", help="Registry id (e.g. boij-i), or 'all' for every example"
    )
    reproduce_parser.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: text)",
    )
    reproduce_parser.set_defaults(func=cmd_reproduce)

    return parser


def main() -> None:
    """Main entry point for the detstrata CLI."""
    parser = create_parser()
    args = parser.parse_args()

    # Setup logging based on verbosity
    setup_logging(args.verbose)

    # Handle case where no subcommand is provided
    if not hasattr(args, "func"):
        parser.print_help()
        sys.exit(1)

    # Execute the subcommand
    args.func(args)


if __name__ == "__main__":
    main()
