"""
Grüss-type bounds: classic, refined, companion and dual.

Evaluators never certify an inequality whose hypotheses were not verified.
In strict mode a failed hypothesis raises ConditionViolated; in diagnostic
mode the report is returned with certified=False.
"""

import math
from typing import Optional

from .errors import ConditionViolated, DualPreconditionViolated, InternalIdentityViolated
from .functional import (
    chebyshev_functional,
    condition_check,
    context_field,
    dual_precondition_value,
    ensure_unit,
    inner,
    schwarz_bound,
    schwarz_gap,
)
from .reports import BoundReport, CompanionReport, ConditionReport, DualChain, ScalarValue
from .spaces import Bracket, Vector
from .tolerance import Field, inequality_tolerance

COMPANION_REQUIREMENTS = ("any", "plus", "minus", "both")


def classic_bound(brx: Bracket, bry: Bracket) -> float:
    """1/4 |hi_x - lo_x| |hi_y - lo_y|."""
    return 0.25 * brx.width * bry.width


def _radicand(report: ConditionReport) -> float:
    # rounding below zero is clamped; callers only pass satisfied reports
    return max(report.quad_value, 0.0)


def _refined(classic: float, radicand_x: float, radicand_y: float) -> float:
    return max(classic - math.sqrt(radicand_x) * math.sqrt(radicand_y), 0.0)


def refined_bound(x: Vector, y: Vector, e: Vector, brx: Bracket, bry: Bracket,
                  tol: Optional[float] = None, field: Optional[Field] = None) -> float:
    """
    Classic bound minus sqrt(Re<hi_x e - x, x - lo_x e>) * sqrt(Re<hi_y e - y, y - lo_y e>).

    Args:
        x, y: Vectors satisfying their bracket conditions
        e: Unit vector
        brx, bry: Brackets for x and y
        tol: Condition tolerance (default scales with each radius)
        field: Ground field of the evaluation; inferred when omitted

    Returns:
        Refined bound in [0, classic_bound]

    Raises:
        ConditionViolated: if either bracket condition fails
        FieldViolation: complex data or endpoints in a real context
    """
    context_field(x, y, e, brackets=(brx, bry), field=field)
    cond_x = condition_check(x, e, brx, tol)
    if not cond_x.satisfied:
        raise ConditionViolated(cond_x, "x")
    cond_y = condition_check(y, e, bry, tol)
    if not cond_y.satisfied:
        raise ConditionViolated(cond_y, "y")
    return _refined(classic_bound(brx, bry), _radicand(cond_x), _radicand(cond_y))


def evaluate_gruss(x: Vector, y: Vector, e: Vector, brx: Bracket, bry: Bracket,
                   strict: bool = True, tol: Optional[float] = None,
                   auto_normalize: bool = False, field: Optional[Field] = None) -> BoundReport:
    """
    Evaluate the Chebyshev functional against the Schwarz, refined and classic bounds.

    Args:
        x, y: Vectors
        e: Unit vector (or any non-zero vector with auto_normalize)
        brx, bry: Brackets for x and y
        strict: Raise on a violated condition instead of reporting it
        tol: Condition tolerance override
        auto_normalize: Divide e by its norm first
        field: Ground field of the evaluation; inferred when omitted

    Returns:
        BoundReport
    """
    e = ensure_unit(e, auto_normalize)
    field = context_field(x, y, e, brackets=(brx, bry), field=field)

    cond_x = condition_check(x, e, brx, tol)
    cond_y = condition_check(y, e, bry, tol)
    if strict:
        if not cond_x.satisfied:
            raise ConditionViolated(cond_x, "x")
        if not cond_y.satisfied:
            raise ConditionViolated(cond_y, "y")

    functional = chebyshev_functional(x, y, e)
    magnitude = abs(functional)
    classic = classic_bound(brx, bry)
    radicand_x = _radicand(cond_x)
    radicand_y = _radicand(cond_y)
    refined = _refined(classic, radicand_x, radicand_y)

    return BoundReport(
        functional=ScalarValue.of(functional),
        abs_functional=magnitude,
        schwarz_bound=schwarz_bound(x, y, e),
        classic_bound=classic,
        refined_bound=refined,
        slack_classic=classic - magnitude,
        slack_refined=refined - magnitude,
        radicand_x=radicand_x,
        radicand_y=radicand_y,
        cond_x=cond_x,
        cond_y=cond_y,
        certified=cond_x.satisfied and cond_y.satisfied,
        field=field,
    )


def companion_value(x: Vector, y: Vector, e: Vector) -> float:
    """Re[<x, y> - <x, e><e, y>]."""
    return chebyshev_functional(x, y, e).real


def evaluate_companion(x: Vector, y: Vector, e: Vector, br: Bracket,
                       tol: Optional[float] = None, strict: bool = True,
                       require: str = "any", field: Optional[Field] = None) -> CompanionReport:
    """
    Bound Re T by 1/4 |hi - lo|^2 using conditions on (x + y)/2 and (x - y)/2.

    The plus condition certifies Re T <= bound, the minus condition certifies
    Re T >= -bound, both together certify |Re T| <= bound and, in a real
    space, |T| <= bound.

    Args:
        x, y: Vectors
        e: Unit vector
        br: Bracket applied to both half-sum and half-difference
        tol: Condition tolerance override
        strict: Raise when the required conditions fail
        require: Which conditions strict mode demands: any, plus, minus or both
        field: Ground field of the evaluation; inferred when omitted

    Returns:
        CompanionReport
    """
    if require not in COMPANION_REQUIREMENTS:
        raise ValueError(f"Unknown companion requirement: {require}")
    ensure_unit(e)
    field = context_field(x, y, e, brackets=(br,), field=field)

    half_sum = (x + y) / 2
    half_diff = (x - y) / 2
    cond_plus = condition_check(half_sum, e, br, tol)
    cond_minus = condition_check(half_diff, e, br, tol)

    if strict:
        plus_ok, minus_ok = cond_plus.satisfied, cond_minus.satisfied
        failed = {
            "any": not (plus_ok or minus_ok),
            "plus": not plus_ok,
            "minus": not minus_ok,
            "both": not (plus_ok and minus_ok),
        }[require]
        if failed:
            if not plus_ok:
                raise ConditionViolated(cond_plus, "(x+y)/2")
            raise ConditionViolated(cond_minus, "(x-y)/2")

    functional = chebyshev_functional(x, y, e)
    value = functional.real
    bound = 0.25 * br.width ** 2
    both = cond_plus.satisfied and cond_minus.satisfied

    return CompanionReport(
        functional=ScalarValue.of(functional),
        companion_value=value,
        bound=bound,
        chain_value=schwarz_gap(half_sum, e),
        cond_plus=cond_plus,
        cond_minus=cond_minus,
        upper_certified=cond_plus.satisfied,
        lower_certified=cond_minus.satisfied,
        two_sided_certified=both,
        real_abs_certified=both and field == Field.REAL,
        slack_upper=bound - value,
        slack_lower=value + bound,
        field=field,
    )


def dual_chain(x: Vector, e: Vector, br: Bracket,
               tol: Optional[float] = None) -> DualChain:
    """
    ||x - <x,e>e|| <= sqrt(Re<x - hi e, x - lo e>) <= (sqrt(2)/2) sqrt(||x - hi e||^2 + ||x - lo e||^2).

    Valid when <x, e> lies outside the open bracket disk.

    Raises:
        DualPreconditionViolated: <x, e> strictly inside the disk
        InternalIdentityViolated: middle radicand negative beyond tolerance
    """
    ensure_unit(e)
    if tol is None:
        tol = inequality_tolerance(x.norm_sq(), abs(br.lo) ** 2, abs(br.hi) ** 2)
    reversed_part = dual_precondition_value(x, e, br)
    if reversed_part > tol:
        raise DualPreconditionViolated(reversed_part, tol)

    upper_diff = x - br.hi * e
    lower_diff = x - br.lo * e
    middle_sq = inner(upper_diff, lower_diff).real
    if middle_sq < -tol:
        raise InternalIdentityViolated("dual middle radicand", middle_sq)

    projection = (x - inner(x, e) * e).norm()
    middle = math.sqrt(max(middle_sq, 0.0))
    upper = math.sqrt(2) / 2 * math.sqrt(upper_diff.norm_sq() + lower_diff.norm_sq())
    return DualChain(projection, middle, upper)
