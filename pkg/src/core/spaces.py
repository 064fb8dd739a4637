"""
Finite-dimensional inner product spaces.

A SpaceMetric is a vector of positive point masses; together with a
coordinate array it realizes <x, y> = sum_i w_i x_i conj(y_i), which covers
K^n, the 1/n mean and quadrature-discretized L^2 at once.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import FieldViolation, MetricMismatch, NonFiniteValue, EmptySpace
from .tolerance import Field, REAL_IMAG_TOL

Scalar = complex
Number = Union[int, float, complex]


def to_scalar(value: Number, field: Field = Field.COMPLEX) -> Scalar:
    """
    Validate a ground-field element.

    Args:
        value: Real or complex number
        field: Field the value must belong to

    Returns:
        The value as a Python complex
    """
    z = complex(value)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise NonFiniteValue("scalar")
    if field == Field.REAL:
        if abs(z.imag) > REAL_IMAG_TOL:
            raise FieldViolation(z)
        z = complex(z.real, 0.0)
    return z


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class SpaceMetric:
    """Positive weights defining the inner product."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).ravel()
        if w.size == 0:
            raise EmptySpace()
        if not np.all(np.isfinite(w)):
            raise NonFiniteValue("metric weights")
        if np.any(w <= 0):
            raise ValueError("Metric weights must be strictly positive")
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def dimension(self) -> int:
        return int(self.weights.size)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def normalized(self) -> "SpaceMetric":
        """Same metric rescaled to total mass 1."""
        return SpaceMetric(self.weights / self.total_mass)

    def same_as(self, other: "SpaceMetric") -> bool:
        return self is other or np.array_equal(self.weights, other.weights)

    def vector(self, values: Sequence[Number], field: Optional[Field] = None) -> "Vector":
        """Build a vector in this space."""
        return Vector.of(values, self, field)

    def constant(self, value: Number = 1.0, field: Field = Field.REAL) -> "Vector":
        return Vector.of(np.full(self.dimension, value), self, field)

    def __repr__(self):
        return f"SpaceMetric(weights={self.weights.tolist()!r})"


@dataclass(frozen=True, eq=False)
class Vector:
    """Coordinate array interpreted in a SpaceMetric."""

    coords: np.ndarray
    metric: SpaceMetric
    field: Field = Field.REAL

    @classmethod
    def of(cls, values: Sequence[Number], metric: SpaceMetric,
           field: Optional[Field] = None) -> "Vector":
        """
        Validate and build a vector.

        Args:
            values: Coordinates
            metric: Space the vector lives in
            field: Ground field; inferred from the values when omitted

        Returns:
            Immutable Vector
        """
        raw = np.asarray(values)
        if raw.ndim != 1:
            raw = raw.ravel()
        if raw.size != metric.dimension:
            raise MetricMismatch(raw.size, metric.dimension)
        coords = raw.astype(complex)
        if not np.all(np.isfinite(coords)):
            raise NonFiniteValue("vector coordinates")
        if field is None:
            field = Field.REAL if np.all(coords.imag == 0) else Field.COMPLEX
        if field == Field.REAL:
            worst = np.max(np.abs(coords.imag))
            if worst > REAL_IMAG_TOL:
                raise FieldViolation(complex(coords[np.argmax(np.abs(coords.imag))]))
            coords = coords.real.copy()
        return cls(_frozen(coords), metric, field)

    @property
    def dimension(self) -> int:
        return int(self.coords.size)

    def _combine(self, coords: np.ndarray, field: Field) -> "Vector":
        if field == Field.REAL:
            coords = np.real(coords).astype(float)
        else:
            coords = coords.astype(complex)
        return Vector(_frozen(coords), self.metric, field)

    def _check_partner(self, other: "Vector"):
        if not self.metric.same_as(other.metric):
            raise MetricMismatch(self.dimension, other.dimension)

    @staticmethod
    def _join(a: Field, b: Field) -> Field:
        return Field.REAL if a == b == Field.REAL else Field.COMPLEX

    def __add__(self, other: "Vector") -> "Vector":
        self._check_partner(other)
        return self._combine(self.coords + other.coords, self._join(self.field, other.field))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check_partner(other)
        return self._combine(self.coords - other.coords, self._join(self.field, other.field))

    def __neg__(self) -> "Vector":
        return self._combine(-self.coords, self.field)

    def __mul__(self, scalar: Number) -> "Vector":
        z = to_scalar(scalar)
        field = self.field if z.imag == 0 else Field.COMPLEX
        factor = z.real if field == Field.REAL else z
        return self._combine(self.coords * factor, field)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "Vector":
        return self * (1.0 / complex(scalar))

    def norm_sq(self) -> float:
        return float(np.sum(self.metric.weights * np.abs(self.coords) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def __repr__(self):
        return f"Vector({self.coords.tolist()!r}, field={self.field.value})"


@dataclass(frozen=True)
class Bracket:
    """Endpoint pair (lo, hi) describing the closed disk |z - mid| <= radius."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        object.__setattr__(self, "lo", to_scalar(self.lo))
        object.__setattr__(self, "hi", to_scalar(self.hi))

    @property
    def mid(self) -> Scalar:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return abs(self.hi - self.lo)

    @property
    def radius(self) -> float:
        return self.width / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def is_real(self) -> bool:
        return self.lo.imag == 0 and self.hi.imag == 0

    def swapped(self) -> "Bracket":
        return Bracket(self.hi, self.lo)

    def scaled(self, factor: Number) -> "Bracket":
        z = complex(factor)
        return Bracket(self.lo * z, self.hi * z)

    def check_field(self, field: Field) -> "Bracket":
        """Reject complex endpoints in a real-field evaluation."""
        to_scalar(self.lo, field)
        to_scalar(self.hi, field)
        return self
