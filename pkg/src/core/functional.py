"""
Exact formula layer: inner products, the Chebyshev functional, the Schwarz
gap and both forms of the bracket condition.
"""

import math
from typing import Optional, Sequence

import numpy as np

from .errors import FieldViolation, MetricMismatch, NotUnitVector
from .reports import ConditionReport
from .spaces import Bracket, Scalar, Vector
from .tolerance import Field, REAL_IMAG_TOL, UNIT_NORM_TOL, condition_tolerance


def inner(x: Vector, y: Vector) -> Scalar:
    """
    Weighted inner product sum_i w_i x_i conj(y_i).

    Args:
        x: First vector
        y: Second vector, same metric as x

    Returns:
        <x, y> as a complex number
    """
    if x.dimension != y.dimension or not x.metric.same_as(y.metric):
        raise MetricMismatch(x.dimension, y.dimension)
    return complex(np.sum(x.metric.weights * x.coords * np.conj(y.coords)))


def context_field(*vectors: Vector, brackets: Sequence[Bracket] = (),
                  field: Optional[Field] = None) -> Field:
    """
    Ground field of one evaluation.

    An explicit field is validated against the data: a real context admits
    neither complex coordinates nor complex bracket endpoints. Without one,
    the context is real only when every vector and every bracket is real.

    Args:
        vectors: Participating vectors
        brackets: Participating brackets
        field: Field chosen by the caller, or None to infer it

    Returns:
        The evaluation field
    """
    if field is None:
        real = all(v.field == Field.REAL for v in vectors) and all(br.is_real for br in brackets)
        return Field.REAL if real else Field.COMPLEX
    if field == Field.REAL:
        for v in vectors:
            imag = np.abs(np.imag(v.coords))
            if imag.size and imag.max() > REAL_IMAG_TOL:
                raise FieldViolation(complex(v.coords[np.argmax(imag)]))
        for br in brackets:
            br.check_field(field)
    return field


def ensure_unit(e: Vector, auto_normalize: bool = False) -> Vector:
    """Return e if ||e|| = 1 within tolerance, or e/||e|| when auto-normalizing."""
    norm = e.norm()
    if auto_normalize:
        if norm == 0.0:
            raise NotUnitVector(norm)
        return e / norm
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise NotUnitVector(norm)
    return e


def chebyshev_functional(x: Vector, y: Vector, e: Vector) -> Scalar:
    """T(x, y) = <x, y> - <x, e><e, y>."""
    ensure_unit(e)
    return inner(x, y) - inner(x, e) * inner(e, y)


def schwarz_gap(x: Vector, e: Vector) -> float:
    """||x||^2 - |<x, e>|^2, the squared distance from x to span{e}."""
    ensure_unit(e)
    return x.norm_sq() - abs(inner(x, e)) ** 2


def projection_residual(x: Vector, e: Vector) -> Vector:
    """x - <x, e> e."""
    ensure_unit(e)
    return x - inner(x, e) * e


def schwarz_bound(x: Vector, y: Vector, e: Vector) -> float:
    """sqrt(gap(x)) * sqrt(gap(y)); bounds |T(x, y)| for any x, y."""
    gx = max(schwarz_gap(x, e), 0.0)
    gy = max(schwarz_gap(y, e), 0.0)
    return math.sqrt(gx) * math.sqrt(gy)


def quadratic_form(x: Vector, h: Vector, br: Bracket) -> float:
    """Re<hi*h - x, x - lo*h>; h need not be a unit vector."""
    return inner(br.hi * h - x, x - br.lo * h).real


def vector_condition_check(x: Vector, a: Vector, A: Vector,
                           tol: Optional[float] = None) -> ConditionReport:
    """
    Equivalence of Re<A - x, x - a> >= 0 and ||x - (a + A)/2|| <= ||A - a||/2.

    Args:
        x: Vector under test
        a: Lower endpoint vector
        A: Upper endpoint vector
        tol: Acceptance tolerance on the quadratic form

    Returns:
        ConditionReport with both forms and the residual of their identity
    """
    radius = (A - a).norm() / 2
    if tol is None:
        tol = condition_tolerance(radius)
    quad = inner(A - x, x - a).real
    distance = (x - (a + A) / 2).norm()
    residual = quad - (radius * radius - distance * distance)
    if radius == 0.0:
        satisfied = distance <= tol
    else:
        satisfied = quad >= -tol
    return ConditionReport(
        quad_value=quad,
        norm_slack=radius - distance,
        equiv_residual=residual,
        distance=distance,
        radius=radius,
        satisfied=bool(satisfied),
        tolerance=tol,
    )


def condition_check(x: Vector, e: Vector, br: Bracket,
                    tol: Optional[float] = None) -> ConditionReport:
    """
    Bracket condition Re<hi*e - x, x - lo*e> >= 0 in quadratic and disk form.

    A degenerate bracket (lo == hi) is satisfied iff ||x - lo*e|| <= tol.
    """
    ensure_unit(e)
    if tol is None:
        tol = condition_tolerance(br.radius)
    if tol < 0:
        raise ValueError("Tolerance must be non-negative")
    quad = quadratic_form(x, e, br)
    distance = (x - br.mid * e).norm()
    residual = quad - (br.radius ** 2 - distance ** 2)
    if br.is_degenerate:
        satisfied = distance <= tol
    else:
        satisfied = quad >= -tol
    return ConditionReport(
        quad_value=quad,
        norm_slack=br.radius - distance,
        equiv_residual=residual,
        distance=distance,
        radius=br.radius,
        satisfied=bool(satisfied),
        tolerance=tol,
    )


def dual_precondition_value(x: Vector, e: Vector, br: Bracket) -> float:
    """Re[(hi - <x,e>)(conj<x,e> - conj lo)]; <= 0 iff <x,e> is outside the open disk."""
    ensure_unit(e)
    c = inner(x, e)
    return ((br.hi - c) * (c.conjugate() - br.lo.conjugate())).real


def identity_residual(x: Vector, e: Vector, br: Bracket) -> float:
    """
    gap(x) - Re[(hi - <x,e>)(conj<x,e> - conj lo)] - Re<x - hi*e, x - lo*e>.

    Zero up to rounding for every input.
    """
    gap = schwarz_gap(x, e)
    reversed_part = dual_precondition_value(x, e, br)
    middle = inner(x - br.hi * e, x - br.lo * e).real
    return gap - reversed_part - middle
