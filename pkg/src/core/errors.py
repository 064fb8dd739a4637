"""
Exception hierarchy for the Grüss toolkit.
Every error carries the offending data so callers can report it.
"""

from typing import Any, Optional


class GrussError(Exception):
    """Base class for all errors raised by this package."""


class MetricMismatch(GrussError):
    """Vectors or sampled functions do not live in the same space."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right

    def __str__(self):
        return f"Dimension mismatch: {self.left} != {self.right}"


class NotUnitVector(GrussError):
    """The reference vector e does not have norm 1."""

    def __init__(self, norm: float):
        self.norm = norm

    def __str__(self):
        return f"Expected a unit vector, got norm {self.norm!r}"


class ConditionViolated(GrussError):
    """A bracket condition required for certification does not hold."""

    def __init__(self, report: Any, label: str = "x"):
        self.report = report
        self.label = label

    def __str__(self):
        return (f"Bracket condition on {self.label} violated: "
                f"quad_value={self.report.quad_value!r}, "
                f"tolerance={self.report.tolerance!r}")


class DualPreconditionViolated(GrussError):
    """<x,e> lies strictly inside the bracket disk, so the dual chain does not apply."""

    def __init__(self, value: float, tolerance: float):
        self.value = value
        self.tolerance = tolerance

    def __str__(self):
        return (f"Dual precondition violated: Re[(hi-<x,e>)(conj<x,e>-conj lo)] = "
                f"{self.value!r} > {self.tolerance!r}")


class InternalIdentityViolated(GrussError):
    """An algebraic identity failed beyond rounding; signals a bug, not bad input."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value

    def __str__(self):
        return f"Identity '{self.name}' violated: residual {self.value!r}"


class FieldViolation(GrussError):
    """A complex value was supplied to a real-field evaluation."""

    def __init__(self, value: complex):
        self.value = value

    def __str__(self):
        return f"Value {self.value!r} has a non-zero imaginary part in the real field"


class NonFiniteValue(GrussError):
    """NaN or infinity reached an operation."""

    def __init__(self, where: str):
        self.where = where

    def __str__(self):
        return f"Non-finite value in {self.where}"


class EmptySpace(GrussError):
    """A space, dataset or point set with no elements."""

    def __str__(self):
        return "Empty input: at least one point is required"


class ZeroVector(GrussError):
    """A zero vector cannot be normalized."""

    def __str__(self):
        return "Cannot normalize the zero vector"


class BadRule(GrussError):
    """Quadrature rule incompatible with the requested grid."""

    def __init__(self, rule: str, nodes: int):
        self.rule = rule
        self.nodes = nodes

    def __str__(self):
        return f"Rule '{self.rule}' cannot be used with {self.nodes} nodes"


class InputError(GrussError):
    """Malformed dataset or command-line input."""

    def __init__(self, message: str, row: Optional[int] = None,
                 column: Optional[int] = None):
        self.message = message
        self.row = row
        self.column = column

    def __str__(self):
        if self.row is None:
            return self.message
        return f"{self.message} (row {self.row}, column {self.column})"
