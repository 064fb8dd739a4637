"""
Point-mass metrics: the 1/n mean, user weights and composite quadrature on [a, b].
"""

from typing import Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as PydanticField, model_validator

from ..core.errors import BadRule, EmptySpace
from ..core.spaces import SpaceMetric


class GridSpec(BaseModel):
    """Composite rule on [a, b] with n subintervals."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    n: int = PydanticField(gt=0)
    rule: Literal["midpoint", "trapezoid", "simpson"] = "midpoint"

    @model_validator(mode="after")
    def _ordered(self):
        if not self.a < self.b:
            raise ValueError(f"Grid requires a < b, got a={self.a}, b={self.b}")
        return self

    @property
    def node_count(self) -> int:
        return self.n if self.rule == "midpoint" else self.n + 1

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse 'a,b,n,rule' as used on the command line."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (3, 4):
            raise ValueError(f"Grid spec must be a,b,n[,rule]: {text!r}")
        fields = dict(a=float(parts[0]), b=float(parts[1]), n=int(parts[2]))
        if len(parts) == 4:
            fields["rule"] = parts[3]
        return cls(**fields)


def mean_metric(n: int) -> SpaceMetric:
    """Weights 1/n, making the all-ones vector a unit vector."""
    if n < 1:
        raise EmptySpace()
    return SpaceMetric(np.full(n, 1.0 / n))


def weights_metric(weights: Sequence[float], normalize: bool = False) -> SpaceMetric:
    """Metric from user weights, optionally rescaled to total mass 1."""
    metric = SpaceMetric(np.asarray(weights, dtype=float))
    return metric.normalized() if normalize else metric


def quadrature_metric(spec: GridSpec, normalize: bool = True) -> Tuple[SpaceMetric, np.ndarray]:
    """
    Composite quadrature weights and nodes.

    Args:
        spec: Grid on [a, b]
        normalize: Divide weights by (b - a) so the constant 1 is a unit vector

    Returns:
        (metric, nodes)
    """
    h = (spec.b - spec.a) / spec.n
    if spec.rule == "midpoint":
        nodes = spec.a + h * (np.arange(spec.n) + 0.5)
        weights = np.full(spec.n, h)
    elif spec.rule == "trapezoid":
        nodes = np.linspace(spec.a, spec.b, spec.n + 1)
        weights = np.full(spec.n + 1, h)
        weights[[0, -1]] = h / 2
    else:
        if spec.n % 2:
            raise BadRule(spec.rule, spec.n + 1)
        nodes = np.linspace(spec.a, spec.b, spec.n + 1)
        weights = np.full(spec.n + 1, 2.0)
        weights[1::2] = 4.0
        weights[[0, -1]] = 1.0
        weights *= h / 3

    if normalize:
        weights = weights / (spec.b - spec.a)
    return SpaceMetric(weights), nodes
