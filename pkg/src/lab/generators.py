"""
Seeded generators for admissible inputs and exact equality witnesses.
"""

from dataclasses import dataclass
from typing import Any, Dict, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as PydanticField, field_validator

from ..core.spaces import Bracket, SpaceMetric, Vector
from ..core.tolerance import Field, INEQUALITY_RTOL, INTERIOR_SHRINK

WitnessKind = Literal["classic", "refined", "companion"]


class FuzzConfig(BaseModel):
    """Configuration shared by fuzz_all and sharpness_search."""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    dims: Tuple[int, ...] = (1, 2, 4, 8, 16)
    field: Field = Field.REAL
    samples: int = PydanticField(default=10_000, ge=0)
    tolerance: float = PydanticField(default=INEQUALITY_RTOL, ge=0.0)

    @field_validator("dims")
    @classmethod
    def _positive_dims(cls, dims):
        if not dims or any(d < 1 for d in dims):
            raise ValueError("dims must be a non-empty set of positive integers")
        return tuple(sorted(set(dims)))


@dataclass(frozen=True)
class Witness:
    """Full input tuple of an evaluation: vectors, unit vector and brackets."""

    kind: str
    x: Vector
    y: Vector
    e: Vector
    brx: Bracket
    bry: Bracket

    def to_dict(self) -> Dict[str, Any]:
        def coords(v: Vector):
            return {"re": np.real(v.coords).tolist(), "im": np.imag(v.coords).tolist()}

        def bracket(b: Bracket):
            return {"lo": [b.lo.real, b.lo.imag], "hi": [b.hi.real, b.hi.imag]}

        return {
            "kind": self.kind,
            "weights": self.e.metric.weights.tolist(),
            "x": coords(self.x),
            "y": coords(self.y),
            "e": coords(self.e),
            "bracket_x": bracket(self.brx),
            "bracket_y": bracket(self.bry),
        }


def _gaussian(n: int, field: Field, rng: np.random.Generator) -> np.ndarray:
    if field == Field.REAL:
        return rng.standard_normal(n)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_metric(n: int, rng: np.random.Generator) -> SpaceMetric:
    """Random positive weights of total mass 1."""
    return SpaceMetric(rng.uniform(0.5, 1.5, n)).normalized()


def random_vector(metric: SpaceMetric, field: Field, rng: np.random.Generator,
                  scale: float = 1.0) -> Vector:
    return Vector.of(scale * _gaussian(metric.dimension, field, rng), metric, field)


def random_direction(metric: SpaceMetric, field: Field, rng: np.random.Generator) -> Vector:
    """Uniform direction on the unit sphere of the metric (normalized Gaussians)."""
    v = random_vector(metric, field, rng)
    while v.norm() == 0.0:
        v = random_vector(metric, field, rng)
    return v / v.norm()


def random_scalar(field: Field, rng: np.random.Generator, scale: float = 1.0) -> complex:
    return complex(scale * _gaussian(1, field, rng)[0])


def random_bracket(field: Field, rng: np.random.Generator,
                   degenerate_rate: float = 0.05) -> Bracket:
    lo = random_scalar(field, rng)
    if rng.random() < degenerate_rate:
        return Bracket(lo, lo)
    return Bracket(lo, lo + random_scalar(field, rng, scale=2.0))


def sample_admissible(e: Vector, br: Bracket, rng: np.random.Generator,
                      boundary: bool = False) -> Vector:
    """
    x = mid*e + w with ||w|| <= radius, admissible by construction.

    Args:
        e: Unit vector
        br: Bracket
        rng: Generator
        boundary: Put w exactly on the sphere of radius br.radius

    Returns:
        Vector in the closed bracket disk around mid*e
    """
    field = Field.REAL if (e.field == Field.REAL and br.is_real) else Field.COMPLEX
    center = br.mid * e
    if br.radius == 0.0:
        return center
    direction = random_direction(e.metric, field, rng)
    if boundary:
        length = br.radius
    else:
        real_dim = e.dimension if field == Field.REAL else 2 * e.dimension
        length = br.radius * (1 - INTERIOR_SHRINK) * rng.random() ** (1.0 / real_dim)
    return center + length * direction


def project_into_disk(x: Vector, e: Vector, br: Bracket) -> Vector:
    """Pull x radially back into the bracket disk if it left it."""
    center = br.mid * e
    offset = x - center
    limit = br.radius * (1 - INTERIOR_SHRINK)
    norm = offset.norm()
    if norm <= limit:
        return x
    if norm == 0.0 or limit == 0.0:
        return center
    return center + (limit / norm) * offset


def equality_witness(kind: WitnessKind = "classic", dim: int = 2) -> Witness:
    """
    Configuration attaining the constant 1/4.

    The first point carries mass 1/2, the remaining mass 1/2 is spread over
    the other points, e is the all-ones vector and x = y is the indicator of
    the other points. Then ||x||^2 = <x, e> = 1/2 and T = 1/4, while the
    brackets (0, 1) give classic bound 1/4. In dimension 2 this is the mean
    metric with x = y = (0, 1). In dimension 1, e spans the space and T = 0.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    if dim == 1:
        metric = SpaceMetric(np.ones(1))
        coords = np.ones(1)
    else:
        weights = np.full(dim, 0.5 / (dim - 1))
        weights[0] = 0.5
        metric = SpaceMetric(weights)
        coords = np.ones(dim)
        coords[0] = 0.0
    e = metric.constant(1.0)
    x = Vector.of(coords, metric, Field.REAL)
    br = Bracket(0.0, 1.0)
    return Witness(kind=kind, x=x, y=x, e=e, brx=br, bry=br)


def sub_generator(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for a (seed, stream...) key."""
    return np.random.default_rng([seed, *stream])


def coin(rng: np.random.Generator, probability: float) -> bool:
    return bool(rng.random() < probability)


def choose_dim(cfg: FuzzConfig, index: int) -> int:
    return cfg.dims[index % len(cfg.dims)]

