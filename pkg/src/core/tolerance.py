"""
Numeric policy: the tolerance ladder and the ground field.
"""

from enum import Enum

UNIT_NORM_TOL = 1e-9
IDENTITY_RTOL = 1e-12
INEQUALITY_RTOL = 1e-9
REAL_IMAG_TOL = 1e-12
# generated admissible points stay this fraction inside the disk
INTERIOR_SHRINK = 1e-12


class Field(str, Enum):
    """Ground field of the inner product space."""

    REAL = "real"
    COMPLEX = "complex"


def scale_of(*magnitudes: float) -> float:
    """Largest of 1 and the given squared magnitudes."""
    return max([1.0, *magnitudes])


def condition_tolerance(radius: float) -> float:
    """Default tolerance for a bracket condition: 1e-9 * max(1, radius^2)."""
    return INEQUALITY_RTOL * max(1.0, radius * radius)


def identity_tolerance(*magnitudes: float) -> float:
    return IDENTITY_RTOL * scale_of(*magnitudes)


def inequality_tolerance(*magnitudes: float, rtol: float = INEQUALITY_RTOL) -> float:
    return rtol * scale_of(*magnitudes)
