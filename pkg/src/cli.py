"""
Command-line interface for the Grüss toolkit.
Provides commands for bound checking, bracket estimation, fuzzing and sharpness runs.

Complex cells and bracket endpoints use the a+bi syntax ("1+2i", "0.5 - i", "3i").
Exit codes: 0 certified, 1 certification failure, 2 input error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError
from rich.panel import Panel
from rich.table import Table

from .console import console
from .core.errors import GrussError
from .lab.fuzzing import DEFAULT_WORKERS
from .report import EXIT_INPUT_ERROR, RUNNERS, ReportDocument, RunConfig


def _dims(text: str):
    try:
        return tuple(int(d) for d in text.split(",") if d.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be comma-separated integers: {text!r}")


def show_check(document: ReportDocument):
    """Print pair results."""
    table = Table(title="Grüss Bounds")
    table.add_column("Pair", style="cyan")
    table.add_column("|T|", style="yellow")
    table.add_column("Refined", style="green")
    table.add_column("Classic", style="green")
    table.add_column("Re T (companion)", style="magenta")
    table.add_column("Certified")

    for pair in document.pairs:
        table.add_row(
            f"{pair.columns[0]},{pair.columns[1]}",
            f"{pair.gruss.abs_functional:.6g}",
            f"{pair.gruss.refined_bound:.6g}",
            f"{pair.gruss.classic_bound:.6g}",
            f"{pair.companion.value:.6g} <= {pair.companion.bound:.6g}",
            "[green]yes[/green]" if pair.certified else "[red]no[/red]",
        )
    console.print(table)
    for pair in document.pairs:
        if pair.error:
            console.print(f"[red]{pair.error}[/red]")


def show_estimate(document: ReportDocument):
    """Print estimated brackets."""
    stats = document.dataset or {}
    names = stats.get("header") or [str(j) for j in range(stats.get("functions", 0))]
    title = f"Estimated Brackets ({stats['points']} points)" if stats else "Estimated Brackets"
    table = Table(title=title)
    table.add_column("Column", style="cyan")
    table.add_column("max |v|", justify="right")
    table.add_column("lo", style="yellow")
    table.add_column("hi", style="yellow")
    table.add_column("Cover slack", style="magenta")

    for est in document.estimates:
        table.add_row(
            names[est.column] if est.column < len(names) else str(est.column),
            f"{stats['max_abs'][est.column]:.6g}" if stats else "",
            f"{est.bracket.lo.value:.6g}",
            f"{est.bracket.hi.value:.6g}",
            f"{est.bracket.cover_slack:.3g}",
        )
    console.print(table)


def show_fuzz(document: ReportDocument):
    """Print per-check counts."""
    report = document.fuzz
    table = Table(title=f"Fuzz Results (seed {report.seed}, {report.field.value})")
    table.add_column("Check", style="cyan")
    table.add_column("Evaluated", style="yellow")
    table.add_column("Violations", style="green")

    for name, count in report.checked.items():
        violations = report.violations[name]
        table.add_row(name, str(count),
                      f"[red]{violations}[/red]" if violations else str(violations))
    console.print(table)


def show_sharpness(document: ReportDocument):
    """Print the best ratio found."""
    result = document.sharpness
    console.print(Panel(
        f"[yellow]Kind:[/yellow] {result['kind']}\n"
        f"[yellow]Best ratio:[/yellow] {result['best_ratio']:.12f}\n"
        f"[yellow]Dimension:[/yellow] {result['dim']}\n"
        f"[yellow]Candidates:[/yellow] {result['iterations']} "
        f"([red]{result['rejected']}[/red] above 1 + tolerance)",
        title="Sharpness",
        border_style="green" if document.certified else "red",
    ))


DISPLAY = {
    "check": show_check,
    "estimate": show_estimate,
    "fuzz": show_fuzz,
    "sharpness": show_sharpness,
}


def _add_input_args(parser: argparse.ArgumentParser):
    parser.add_argument("--input", required=True,
                        help="Comma- or whitespace-separated file, one column per function")
    parser.add_argument("--field", default="real", choices=["real", "complex"],
                        help="Ground field of the data")
    parser.add_argument("--paired-columns", action="store_true",
                        help="Read complex values from (re, im) column pairs")


def _add_search_args(parser: argparse.ArgumentParser, samples: int):
    parser.add_argument("--field", default="real", choices=["real", "complex"],
                        help="Ground field of the generated vectors")
    parser.add_argument("--seed", type=int, default=0,
                        help="Random seed for reproducibility")
    parser.add_argument("--samples", type=int, default=samples,
                        help="Number of generated samples")
    parser.add_argument("--dims", type=_dims, default=(1, 2, 4, 8, 16),
                        help="Comma-separated dimensions, e.g. 1,2,4")
    parser.add_argument("--tolerance", type=float, default=None,
                        help="Relative inequality tolerance (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gruss",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--out", default=None,
                        help="Write the JSON report here instead of stdout")
    parser.add_argument("--verbose", action="store_true",
                        help="Log progress to stderr")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Check command
    check_parser = subparsers.add_parser("check", help="Evaluate Grüss bounds on a dataset")
    _add_input_args(check_parser)
    check_parser.add_argument("--metric", default="mean",
                              help="mean, weights:<path> or grid:a,b,n[,rule]")
    check_parser.add_argument("--bracket-x", default=None,
                              help="Bracket for the first function of each pair, lo,hi")
    check_parser.add_argument("--bracket-y", default=None,
                              help="Bracket for the second function of each pair, lo,hi")
    check_parser.add_argument("--estimate-brackets", action="store_true",
                              help="Estimate brackets not given explicitly")
    check_parser.add_argument("--mode", default="strict", choices=["strict", "diagnostic"],
                              help="strict fails on a violated condition, diagnostic annotates it")
    check_parser.add_argument("--tolerance", type=float, default=None,
                              help="Absolute condition tolerance (default scales with the bracket)")

    # Estimate command
    est_parser = subparsers.add_parser("estimate", help="Estimate covering brackets")
    _add_input_args(est_parser)

    # Fuzz command
    fuzz_parser = subparsers.add_parser("fuzz", help="Run the seeded oracle suite")
    _add_search_args(fuzz_parser, samples=10_000)
    fuzz_parser.add_argument("--shards", type=int, default=8,
                             help="Number of sub-seeded shards")
    fuzz_parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS,
                             help="Worker processes (default: CPU count)")

    # Sharpness command
    sharp_parser = subparsers.add_parser("sharpness", help="Search for the best constant ratio")
    _add_search_args(sharp_parser, samples=10_000)
    sharp_parser.add_argument("--kind", default="classic",
                              choices=["classic", "refined", "companion"],
                              help="Inequality whose ratio is maximized")

    for sub in (check_parser, est_parser, fuzz_parser, sharp_parser):
        sub.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        sub.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS,
                         help=argparse.SUPPRESS)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    options = {k: v for k, v in vars(args).items() if v is not None}
    return RunConfig(**options)


def _write(document: ReportDocument, out: Optional[str]):
    text = document.to_json()
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        console.print(f"[green]Report written to {path}[/green]")


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_INPUT_ERROR

    try:
        cfg = _config(args)
        document = RUNNERS[cfg.command](cfg)
    except ValidationError as err:
        console.print(f"[red]Invalid configuration:[/red] {err}")
        return EXIT_INPUT_ERROR
    except (GrussError, FileNotFoundError) as err:
        console.print(f"[red]Error:[/red] {err}")
        return EXIT_INPUT_ERROR

    DISPLAY[cfg.command](document)
    _write(document, cfg.out)
    return document.exit_code


if __name__ == "__main__":
    sys.exit(main())
