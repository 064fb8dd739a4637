#!/usr/bin/env python
"""
Main entry point for the Grüss toolkit demo.
Runs the complete workflow: sharp witness, refined bound, seeded fuzzing and sharpness search.
"""

import sys

from rich.panel import Panel
from rich.table import Table

from src.console import console
from src.core.bounds import dual_chain, evaluate_companion, evaluate_gruss
from src.core.spaces import Bracket
from src.core.tolerance import Field
from src.lab.fuzzing import fuzz_all
from src.lab.generators import FuzzConfig
from src.lab.sharpness import sharpness_search
from src.measures.integrals import SampledFunction, integral_gruss
from src.measures.quadrature import GridSpec, mean_metric, quadrature_metric


def print_header():
    """Print welcome header."""
    console.print()
    console.print(Panel.fit(
        "[bold blue]Grüss-Type Inequalities[/bold blue]\n"
        "[dim]Certified bounds for the Chebyshev functional in inner product spaces[/dim]",
        border_style="blue"
    ))
    console.print()


def show_two_point_space():
    """Evaluate the sharp pair and an interior pair on the two-point mean space."""
    console.print("[bold cyan]Step 1: Two-Point Mean Space[/bold cyan]")

    metric = mean_metric(2)
    e = metric.constant(1.0)
    unit = Bracket(0, 1)
    cases = [
        ("x = y = (0, 1)", metric.vector([0, 1]), metric.vector([0, 1])),
        ("x = (0.2, 0.8), y = (0.1, 0.9)", metric.vector([0.2, 0.8]), metric.vector([0.1, 0.9])),
    ]

    table = Table(title="Chebyshev Functional vs Bounds", show_header=True)
    table.add_column("Case", style="cyan")
    table.add_column("|T|", justify="right", style="yellow")
    table.add_column("Schwarz", justify="right")
    table.add_column("Refined", justify="right", style="green")
    table.add_column("Classic", justify="right", style="green")
    table.add_column("Companion Re T", justify="right", style="magenta")

    for name, x, y in cases:
        report = evaluate_gruss(x, y, e, unit, unit)
        companion = evaluate_companion(x, y, e, unit, strict=False)
        table.add_row(
            name,
            f"{report.abs_functional:.4f}",
            f"{report.schwarz_bound:.4f}",
            f"{report.refined_bound:.4f}",
            f"{report.classic_bound:.4f}",
            f"{companion.companion_value:.4f}",
        )
    console.print(table)

    chain = dual_chain(metric.vector([0.2, 0.8]), e, Bracket(0.6, 0.9))
    console.print(f"Dual chain for <x, e> outside (0.6, 0.9): "
                  f"{chain.projection_distance:.6f} <= {chain.middle:.6f} <= {chain.upper:.6f}")


def show_step_functions():
    """Indicator of [1/2, 1] under refining midpoint grids."""
    console.print("\n[bold cyan]Step 2: Step Functions on [0, 1][/bold cyan]")

    for n in (2, 4, 100):
        metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=n))
        f = SampledFunction((nodes >= 0.5).astype(float))
        report = integral_gruss(f, f, SampledFunction.constant(n), Bracket(0, 1), Bracket(0, 1), metric)
        console.print(f"  n={n:>3}: |T| = {report.abs_functional:.12f}, "
                      f"classic = {report.classic_bound:.12f}")


def run_fuzzing(samples: int = 2000):
    """Seeded oracle suite in both fields."""
    console.print("\n[bold cyan]Step 3: Seeded Fuzzing[/bold cyan]")

    for field in Field:
        cfg = FuzzConfig(seed=42, samples=samples, field=field)
        with console.status(f"[bold green]Checking {samples} {field.value} samples..."):
            report = fuzz_all(cfg)
        style = "green" if report.clean else "red"
        console.print(f"  {field.value}: [{style}]{report.total_violations} violations[/{style}] "
                      f"over {sum(report.checked.values())} checks")


def run_sharpness():
    """Search for the best ratio of each inequality."""
    console.print("\n[bold cyan]Step 4: Sharpness of the Constant 1/4[/bold cyan]")

    cfg = FuzzConfig(seed=42, samples=2000, dims=(2, 4, 8))
    for kind in ("classic", "refined", "companion"):
        result = sharpness_search(cfg, kind)
        console.print(f"  {kind:<9} best ratio {result.best_ratio:.12f} (dim {result.dim})")


def main():
    """Main demo workflow."""
    try:
        print_header()
        show_two_point_space()
        show_step_functions()
        run_fuzzing()
        run_sharpness()

        console.print()
        console.print(Panel(
            "[bold green]Demo complete![/bold green]\n"
            "Try: ./gruss check --input data.csv --estimate-brackets",
            border_style="green"
        ))
    except KeyboardInterrupt:
        console.print("\n[yellow]Demo interrupted by user[/yellow]")
        sys.exit(1)


if __name__ == "__main__":
    main()
