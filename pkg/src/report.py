"""
Run configuration, report document and the orchestration behind each command.

Every run produces one ReportDocument; numbers are stored exactly as the
library returned them and serialized with round-trip precision.
"""

from itertools import combinations
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as PydanticField, field_validator

from . import __version__
from .console import console
from .core.errors import ConditionViolated, InputError, MetricMismatch
from .core.reports import BoundReport, ScalarValue
from .core.spaces import Bracket, SpaceMetric
from .core.tolerance import Field, INEQUALITY_RTOL, inequality_tolerance
from .data.loader import DatasetLoader, ingest, parse_scalar
from .lab.fuzzing import DEFAULT_SHARDS, DEFAULT_WORKERS, FuzzReport, fuzz_all
from .lab.generators import FuzzConfig, WitnessKind
from .lab.sharpness import sharpness_search
from .measures.enclosing import estimate_bracket
from .measures.integrals import IntegralCompanionReport, SampledFunction, integral_companion, mean_gruss
from .measures.quadrature import GridSpec, mean_metric, quadrature_metric, weights_metric

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_INPUT_ERROR = 2


def parse_bracket(text: str, field: Field = Field.COMPLEX) -> Bracket:
    """Parse 'lo,hi'; complex endpoints use the a+bi syntax."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"Bracket must be 'lo,hi': {text!r}")
    return Bracket(parse_scalar(parts[0], field), parse_scalar(parts[1], field))


class RunConfig(BaseModel):
    """Validated command-line configuration, echoed into every report."""

    model_config = ConfigDict(frozen=True)

    command: Literal["check", "estimate", "fuzz", "sharpness"]
    input: Optional[str] = None
    field: Field = Field.REAL
    metric: str = "mean"
    bracket_x: Optional[str] = None
    bracket_y: Optional[str] = None
    estimate_brackets: bool = False
    paired_columns: bool = False
    mode: Literal["strict", "diagnostic"] = "strict"
    seed: int = 0
    samples: int = PydanticField(default=10_000, ge=0)
    dims: Tuple[int, ...] = (1, 2, 4, 8, 16)
    kind: WitnessKind = "classic"
    tolerance: Optional[float] = PydanticField(default=None, ge=0.0)
    shards: int = PydanticField(default=DEFAULT_SHARDS, gt=0)
    workers: int = PydanticField(default=DEFAULT_WORKERS, gt=0)
    out: Optional[str] = None
    verbose: bool = False

    @field_validator("metric")
    @classmethod
    def _metric_spec(cls, spec: str) -> str:
        if spec == "mean" or (spec.startswith("weights:") and len(spec) > len("weights:")):
            return spec
        if spec.startswith("grid:"):
            GridSpec.parse(spec[len("grid:"):])
            return spec
        raise ValueError(f"Metric must be mean, weights:<path> or grid:a,b,n[,rule]: {spec!r}")

    @field_validator("bracket_x", "bracket_y")
    @classmethod
    def _bracket_spec(cls, text: Optional[str]) -> Optional[str]:
        if text is not None:
            try:
                parse_bracket(text)
            except InputError as err:
                raise ValueError(str(err)) from None
        return text

    def fuzz_config(self) -> FuzzConfig:
        return FuzzConfig(
            seed=self.seed,
            dims=self.dims,
            field=self.field,
            samples=self.samples,
            tolerance=INEQUALITY_RTOL if self.tolerance is None else self.tolerance,
        )


class BracketValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    lo: ScalarValue
    hi: ScalarValue
    estimated: bool = False
    cover_slack: Optional[float] = None

    @classmethod
    def of(cls, br: Bracket, cover_slack: Optional[float] = None) -> "BracketValue":
        return cls(lo=ScalarValue.of(br.lo), hi=ScalarValue.of(br.hi),
                   estimated=cover_slack is not None, cover_slack=cover_slack)


class ColumnEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    column: int
    bracket: BracketValue


class PairReport(BaseModel):
    """Grüss and companion evaluation of one column pair; only the Grüss bound decides certified."""

    model_config = ConfigDict(frozen=True)

    columns: Tuple[int, int]
    bracket_x: BracketValue
    bracket_y: BracketValue
    gruss: BoundReport
    companion_bracket: BracketValue
    companion: IntegralCompanionReport
    certified: bool
    error: Optional[str] = None


class ReportDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__
    config: RunConfig
    dataset: Optional[Dict[str, Any]] = None
    estimates: List[ColumnEstimate] = []
    pairs: List[PairReport] = []
    fuzz: Optional[FuzzReport] = None
    sharpness: Optional[Dict[str, Any]] = None
    certified: bool
    exit_code: int

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def build_metric(spec: str, n: int) -> SpaceMetric:
    """
    Metric for n sample points from a --metric spec.

    Args:
        spec: mean, weights:<path> or grid:a,b,n[,rule]
        n: Number of rows in the dataset

    Returns:
        SpaceMetric of total mass 1
    """
    if spec == "mean":
        return mean_metric(n)
    if spec.startswith("weights:"):
        columns = ingest(spec[len("weights:"):], Field.REAL)
        if len(columns) != 1:
            raise InputError(f"Weights file must have one column, got {len(columns)}")
        weights = columns[0].values
        if np.any(weights <= 0):
            raise InputError("Weights must be strictly positive")
        metric = weights_metric(weights, normalize=True)
    else:
        metric, _ = quadrature_metric(GridSpec.parse(spec[len("grid:"):]))
    if metric.dimension != n:
        raise MetricMismatch(n, metric.dimension)
    return metric


def _load(cfg: RunConfig) -> Tuple[List[SampledFunction], Dict[str, Any]]:
    if cfg.input is None:
        raise InputError(f"{cfg.command} needs --input")
    loader = DatasetLoader(cfg.input, cfg.field, cfg.paired_columns)
    return loader.load(), loader.get_stats()


def _pairs(count: int) -> List[Tuple[int, int]]:
    if count == 1:
        return [(0, 0)]
    return list(combinations(range(count), 2))


def _column_brackets(cfg: RunConfig, columns: List[SampledFunction]) -> Dict[int, BracketValue]:
    estimates = {}
    if cfg.estimate_brackets:
        for j, column in enumerate(columns):
            est = estimate_bracket(column.values, cfg.field)
            estimates[j] = BracketValue.of(est.bracket, est.cover_slack)
    return estimates


def _resolve(explicit: Optional[str], estimated: Optional[BracketValue],
             field: Field, name: str) -> Tuple[Bracket, BracketValue]:
    if explicit is not None:
        br = parse_bracket(explicit, field)
        return br, BracketValue.of(br)
    if estimated is None:
        raise InputError(f"No {name} given; pass --{name.replace('_', '-')} or --estimate-brackets")
    return Bracket(estimated.lo.value, estimated.hi.value), estimated


def _evaluate_pair(cfg: RunConfig, i: int, j: int, f: SampledFunction, g: SampledFunction,
                   metric: SpaceMetric, estimates: Dict[int, BracketValue]) -> PairReport:
    brf, brf_value = _resolve(cfg.bracket_x, estimates.get(i), cfg.field, "bracket_x")
    brg, brg_value = _resolve(cfg.bracket_y, estimates.get(j), cfg.field, "bracket_y")

    error = None
    try:
        gruss = mean_gruss(f, g, brf, brg, metric, strict=cfg.mode == "strict",
                           tol=cfg.tolerance, field=cfg.field)
    except ConditionViolated as err:
        error = str(err)
        gruss = mean_gruss(f, g, brf, brg, metric, strict=False, tol=cfg.tolerance,
                           field=cfg.field)

    halves = np.concatenate([f.half_sum(g).values, f.half_difference(g).values])
    companion_est = estimate_bracket(halves, cfg.field)
    companion = integral_companion(f, g, None, companion_est.bracket, "both", metric,
                                   strict=False, tol=cfg.tolerance, field=cfg.field)

    return PairReport(
        columns=(i, j),
        bracket_x=brf_value,
        bracket_y=brg_value,
        gruss=gruss,
        companion_bracket=BracketValue.of(companion_est.bracket, companion_est.cover_slack),
        companion=companion,
        certified=gruss.certified,
        error=error,
    )


def _slack_holds(pair: PairReport) -> bool:
    g = pair.gruss
    tol = inequality_tolerance(g.classic_bound, g.abs_functional)
    return g.slack_classic >= -tol and g.slack_refined >= -tol


def run_check(cfg: RunConfig) -> ReportDocument:
    """
    Evaluate the mean-form Grüss and companion bounds on every column pair.

    Args:
        cfg: Run configuration with an input file

    Returns:
        ReportDocument; exit_code 1 when a strict-mode certification fails
    """
    columns, stats = _load(cfg)
    metric = build_metric(cfg.metric, len(columns[0]))
    estimates = _column_brackets(cfg, columns)

    pairs = []
    for i, j in _pairs(len(columns)):
        pair = _evaluate_pair(cfg, i, j, columns[i], columns[j], metric, estimates)
        if cfg.verbose:
            console.log(f"pair ({i}, {j}): |T|={pair.gruss.abs_functional:.6g} "
                        f"refined={pair.gruss.refined_bound:.6g} certified={pair.certified}")
        pairs.append(pair)

    certified = all(p.certified and _slack_holds(p) for p in pairs)
    exit_code = EXIT_OK if certified or cfg.mode == "diagnostic" else EXIT_UNCERTIFIED
    return ReportDocument(
        config=cfg,
        dataset=stats,
        estimates=[ColumnEstimate(column=j, bracket=b) for j, b in sorted(estimates.items())],
        pairs=pairs,
        certified=certified,
        exit_code=exit_code,
    )


def run_estimate(cfg: RunConfig) -> ReportDocument:
    """Estimate a covering bracket for every column."""
    columns, stats = _load(cfg)
    estimates = []
    for j, column in enumerate(columns):
        est = estimate_bracket(column.values, cfg.field)
        estimates.append(ColumnEstimate(column=j, bracket=BracketValue.of(est.bracket, est.cover_slack)))
    return ReportDocument(config=cfg, dataset=stats, estimates=estimates,
                          certified=True, exit_code=EXIT_OK)


def run_fuzz(cfg: RunConfig) -> ReportDocument:
    """Run the oracle suite; any violation makes the run uncertified."""
    with console.status(f"[bold green]Fuzzing {cfg.samples} samples (seed {cfg.seed})..."):
        report = fuzz_all(cfg.fuzz_config(), shards=cfg.shards, workers=cfg.workers,
                          verbose=cfg.verbose)
    return ReportDocument(
        config=cfg,
        fuzz=report,
        certified=report.clean,
        exit_code=EXIT_OK if report.clean else EXIT_UNCERTIFIED,
    )


def run_sharpness(cfg: RunConfig) -> ReportDocument:
    """Search for the best ratio; a rejected candidate above 1 + tolerance is a counterexample."""
    with console.status(f"[bold green]Searching {cfg.kind} sharpness..."):
        result = sharpness_search(cfg.fuzz_config(), cfg.kind, verbose=cfg.verbose)
    clean = result.rejected == 0
    return ReportDocument(
        config=cfg,
        sharpness=result.to_dict(),
        certified=clean,
        exit_code=EXIT_OK if clean else EXIT_UNCERTIFIED,
    )


RUNNERS = {
    "check": run_check,
    "estimate": run_estimate,
    "fuzz": run_fuzz,
    "sharpness": run_sharpness,
}
