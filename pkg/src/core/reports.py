"""
Report models returned by the bound evaluators.
Pydantic models so the CLI can serialize them verbatim.
"""

from typing import NamedTuple

from pydantic import BaseModel, ConfigDict

from .tolerance import Field


class ScalarValue(BaseModel):
    """A ground-field element split into real and imaginary parts."""

    model_config = ConfigDict(frozen=True)

    re: float
    im: float = 0.0

    @classmethod
    def of(cls, z: complex) -> "ScalarValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class ConditionReport(BaseModel):
    """Both forms of a bracket condition and the identity linking them."""

    model_config = ConfigDict(frozen=True)

    quad_value: float
    norm_slack: float
    equiv_residual: float
    distance: float
    radius: float
    satisfied: bool
    tolerance: float


class BoundReport(BaseModel):
    """One Grüss evaluation: the functional, its bounds and the diagnostics."""

    model_config = ConfigDict(frozen=True)

    functional: ScalarValue
    abs_functional: float
    schwarz_bound: float
    classic_bound: float
    refined_bound: float
    slack_classic: float
    slack_refined: float
    radicand_x: float
    radicand_y: float
    cond_x: ConditionReport
    cond_y: ConditionReport
    certified: bool
    field: Field


class CompanionReport(BaseModel):
    """Companion evaluation on Re T with conditions on (x + y)/2 and (x - y)/2."""

    model_config = ConfigDict(frozen=True)

    functional: ScalarValue
    companion_value: float
    bound: float
    chain_value: float
    cond_plus: ConditionReport
    cond_minus: ConditionReport
    upper_certified: bool
    lower_certified: bool
    two_sided_certified: bool
    real_abs_certified: bool
    slack_upper: float
    slack_lower: float
    field: Field

    @property
    def certified(self) -> bool:
        return self.upper_certified or self.lower_certified


class DualChain(NamedTuple):
    """Three monotone terms of the dual chain."""

    projection_distance: float
    middle: float
    upper: float
