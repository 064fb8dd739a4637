"""
Integral forms of the Grüss inequalities over weighted point-mass measures.

Functions are sampled at the points of a measure; the L^2 inner product
<f, g> = integral f conj(g) dmu becomes the weighted sum of the metric, so
each integral form is a thin adapter over the core evaluators.
"""

from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.bounds import evaluate_companion, evaluate_gruss
from ..core.errors import InternalIdentityViolated, MetricMismatch, NonFiniteValue, ZeroVector
from ..core.functional import quadratic_form
from ..core.reports import BoundReport, CompanionReport
from ..core.spaces import Bracket, Number, SpaceMetric, Vector
from ..core.tolerance import Field, INEQUALITY_RTOL

Sign = Literal["plus", "minus", "both"]


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Values of a function at the points of a measure."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        values = values.astype(complex if np.iscomplexobj(values) else float).ravel()
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("sampled function")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, n: int, value: Number = 1.0) -> "SampledFunction":
        return cls(np.full(n, value))

    def __len__(self):
        return int(self.values.size)

    def as_vector(self, metric: SpaceMetric, field: Optional[Field] = None) -> Vector:
        if len(self) != metric.dimension:
            raise MetricMismatch(len(self), metric.dimension)
        return Vector.of(self.values, metric, field)

    def half_sum(self, other: "SampledFunction") -> "SampledFunction":
        return SampledFunction((self.values + other.values) / 2)

    def half_difference(self, other: "SampledFunction") -> "SampledFunction":
        return SampledFunction((self.values - other.values) / 2)


class PointwiseResult(NamedTuple):
    holds: bool
    worst_index: Optional[int]
    worst_excess: float


class IntegralCompanionReport(BaseModel):
    """Companion integral I (or J for constant h) with its certification."""

    model_config = ConfigDict(frozen=True)

    sign: str
    value: float
    bound: float
    certified: bool
    pointwise_plus: bool
    pointwise_minus: bool
    companion: CompanionReport


def normalize_unit(h: SampledFunction, metric: SpaceMetric) -> SampledFunction:
    """Rescale h so that integral |h|^2 dmu = 1."""
    norm = h.as_vector(metric).norm()
    if norm == 0.0:
        raise ZeroVector()
    return SampledFunction(h.values / norm)


def pointwise_condition(f: SampledFunction, h: SampledFunction, br: Bracket,
                        tol: Optional[float] = None,
                        metric: Optional[SpaceMetric] = None) -> PointwiseResult:
    """
    Check |f(s) - mid h(s)| <= radius |h(s)| at every point.

    Args:
        f: Sampled function
        h: Reference function
        br: Bracket
        tol: Pointwise tolerance (default 1e-9 * max(1, radius))
        metric: When given and the check passes, the integrated condition is
            cross-validated against it

    Returns:
        PointwiseResult; worst_index is None when the condition holds
    """
    if len(f) != len(h):
        raise MetricMismatch(len(f), len(h))
    if tol is None:
        tol = INEQUALITY_RTOL * max(1.0, br.radius)
    excess = np.abs(f.values - br.mid * h.values) - br.radius * np.abs(h.values)
    worst = int(np.argmax(excess))
    holds = bool(excess[worst] <= tol)

    if holds and metric is not None:
        # integrating the pointwise inequality bounds the quadratic form from below
        integrated = quadratic_form(f.as_vector(metric), h.as_vector(metric), br)
        floor = -float(np.sum(metric.weights * (2 * br.radius * np.abs(h.values) * tol + tol * tol)))
        if integrated < floor - INEQUALITY_RTOL:
            raise InternalIdentityViolated("pointwise implies integral", integrated)

    return PointwiseResult(holds, None if holds else worst, float(excess[worst]))


def integral_gruss(f: SampledFunction, g: SampledFunction, h: SampledFunction,
                   brf: Bracket, brg: Bracket, metric: SpaceMetric,
                   strict: bool = True, tol: Optional[float] = None,
                   field: Optional[Field] = None) -> BoundReport:
    """
    Refined Grüss bound for integral f conj(g) - integral f conj(h) * integral h conj(g).

    h must satisfy integral |h|^2 dmu = 1. field is the ground field of the
    function space; real-valued samples are admitted in a complex context.
    """
    return evaluate_gruss(
        f.as_vector(metric, field), g.as_vector(metric, field), h.as_vector(metric, field),
        brf, brg, strict=strict, tol=tol, field=field,
    )


def mean_gruss(f: SampledFunction, g: SampledFunction, brf: Bracket, brg: Bracket,
               metric: SpaceMetric, strict: bool = True,
               tol: Optional[float] = None, field: Optional[Field] = None) -> BoundReport:
    """
    Mean-value form: the measure is rescaled to mass 1 and h is the constant 1.

    Brackets are then pointwise value brackets for f and g.
    """
    unit_metric = metric.normalized()
    h = normalize_unit(SampledFunction.constant(unit_metric.dimension), unit_metric)
    return integral_gruss(f, g, h, brf, brg, unit_metric, strict=strict, tol=tol, field=field)


def integral_companion(f: SampledFunction, g: SampledFunction, h: Optional[SampledFunction],
                       br: Bracket, sign: Sign, metric: SpaceMetric,
                       strict: bool = True,
                       tol: Optional[float] = None,
                       field: Optional[Field] = None) -> IntegralCompanionReport:
    """
    Companion integral I = Re[integral f conj(g) - integral f conj(h) * integral h conj(g)].

    With h=None the measure is normalized and h is the constant 1 (the mean
    form J). sign selects which conditions on (f +- g)/2 are required:
    plus certifies I <= bound, minus certifies I >= -bound, both |I| <= bound.
    """
    if h is None:
        metric = metric.normalized()
        h = SampledFunction.constant(metric.dimension)

    companion = evaluate_companion(
        f.as_vector(metric, field), g.as_vector(metric, field), h.as_vector(metric, field), br,
        tol=tol, strict=strict, require=sign, field=field,
    )
    certified = {
        "plus": companion.upper_certified,
        "minus": companion.lower_certified,
        "both": companion.two_sided_certified,
    }[sign]

    return IntegralCompanionReport(
        sign=sign,
        value=companion.companion_value,
        bound=companion.bound,
        certified=certified,
        pointwise_plus=pointwise_condition(f.half_sum(g), h, br).holds,
        pointwise_minus=pointwise_condition(f.half_difference(g), h, br).holds,
        companion=companion,
    )

