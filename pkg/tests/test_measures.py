"""Tests for quadrature metrics, integral forms and bracket estimation."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.bounds import evaluate_companion, evaluate_gruss
from src.core.errors import BadRule, EmptySpace, FieldViolation, MetricMismatch, ZeroVector
from src.core.functional import condition_check
from src.core.spaces import Bracket
from src.core.tolerance import Field
from src.measures.enclosing import enclosing_disk_bruteforce, estimate_bracket, minimal_enclosing_disk
from src.measures.integrals import (
    SampledFunction,
    integral_companion,
    integral_gruss,
    mean_gruss,
    normalize_unit,
    pointwise_condition,
)
from src.measures.quadrature import GridSpec, mean_metric, quadrature_metric, weights_metric

UNIT = Bracket(0, 1)


def sampled(*values):
    return SampledFunction(np.array(values))


def test_mean_metric():
    """Weights 1/n make the all-ones vector a unit vector."""
    assert mean_metric(2).weights.tolist() == [0.5, 0.5]
    assert mean_metric(4).weights.tolist() == [0.25] * 4
    assert mean_metric(1).constant(1.0).norm() == 1.0
    with pytest.raises(EmptySpace):
        mean_metric(0)


def test_quadrature_weights():
    """Composite rules on [0, 1] after normalization."""
    metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=4))
    assert nodes.tolist() == pytest.approx([0.125, 0.375, 0.625, 0.875])
    assert metric.weights.tolist() == pytest.approx([0.25] * 4)

    metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=2, rule="trapezoid"))
    assert nodes.tolist() == pytest.approx([0.0, 0.5, 1.0])
    assert metric.weights.tolist() == pytest.approx([0.25, 0.5, 0.25])

    for rule in ("midpoint", "trapezoid", "simpson"):
        metric, nodes = quadrature_metric(GridSpec(a=-2, b=3, n=6, rule=rule))
        assert metric.total_mass == pytest.approx(1.0)
        assert np.all(metric.weights > 0)
        assert nodes.min() >= -2 and nodes.max() <= 3


def test_quadrature_raw_mass():
    """Without normalization the weights integrate over [a, b]."""
    metric, _ = quadrature_metric(GridSpec(a=1, b=4, n=3), normalize=False)
    assert metric.weights.tolist() == pytest.approx([1.0, 1.0, 1.0])
    assert metric.normalized().total_mass == pytest.approx(1.0)
    assert weights_metric([1, 3], normalize=True).weights.tolist() == [0.25, 0.75]


def test_grid_spec_validation():
    """a < b, n > 0, Simpson needs an odd node count."""
    with pytest.raises(ValidationError):
        GridSpec(a=1, b=1, n=4)
    with pytest.raises(ValidationError):
        GridSpec(a=0, b=1, n=0)
    with pytest.raises(ValidationError):
        GridSpec(a=0, b=1, n=2, rule="gauss")
    with pytest.raises(BadRule) as err:
        quadrature_metric(GridSpec(a=0, b=1, n=3, rule="simpson"))
    assert err.value.nodes == 4

    spec = GridSpec.parse("0, 2, 8, simpson")
    assert (spec.a, spec.b, spec.n, spec.rule) == (0.0, 2.0, 8, "simpson")
    assert spec.node_count == 9
    assert GridSpec.parse("0,1,5").rule == "midpoint"


def test_normalize_unit():
    """Rescale h to unit norm."""
    metric = mean_metric(3)
    ones = SampledFunction.constant(3)
    assert normalize_unit(ones, metric).values.tolist() == pytest.approx([1.0, 1.0, 1.0])

    h = normalize_unit(sampled(3.0, 4.0), mean_metric(2))
    assert h.values.tolist() == pytest.approx([3 / math.sqrt(12.5), 4 / math.sqrt(12.5)])
    assert h.as_vector(mean_metric(2)).norm() == pytest.approx(1.0, abs=1e-12)

    with pytest.raises(ZeroVector):
        normalize_unit(sampled(0.0, 0.0), mean_metric(2))


def test_pointwise_condition():
    """Pointwise disk membership and the worst offending point."""
    h = sampled(1.0, 1.0)
    assert pointwise_condition(sampled(0.5, 0.5), h, UNIT).holds

    result = pointwise_condition(sampled(0.0, 1.0), h, UNIT, metric=mean_metric(2))
    assert result.holds
    assert result.worst_index is None
    assert result.worst_excess == pytest.approx(0.0)

    result = pointwise_condition(sampled(0.0, 1.2), h, UNIT)
    assert not result.holds
    assert result.worst_index == 1
    assert result.worst_excess == pytest.approx(0.2)

    with pytest.raises(MetricMismatch):
        pointwise_condition(sampled(0.0, 1.0, 2.0), h, UNIT)


def test_pointwise_implies_integral():
    """Whenever the pointwise form holds the integrated condition does too."""
    rng = np.random.default_rng(50)
    for _ in range(200):
        n = int(rng.integers(1, 20))
        metric = mean_metric(n)
        lo = rng.standard_normal() + 1j * rng.standard_normal()
        br = Bracket(lo, lo + rng.standard_normal() + 1j * rng.standard_normal())
        offsets = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        offsets *= br.radius * rng.random(n) / np.abs(offsets)
        f = SampledFunction(br.mid + offsets)
        h = SampledFunction.constant(n)
        assert pointwise_condition(f, h, br, metric=metric).holds
        assert condition_check(f.as_vector(metric), h.as_vector(metric), br).satisfied


@pytest.mark.parametrize("n", [2, 4, 100])
def test_step_functions_are_sharp(n):
    """Indicator of [1/2, 1] under the midpoint rule attains the constant."""
    metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=n))
    f = SampledFunction((nodes >= 0.5).astype(float))
    h = SampledFunction.constant(n)
    report = integral_gruss(f, f, h, UNIT, UNIT, metric)
    assert report.abs_functional == pytest.approx(0.25, abs=1e-12)
    assert report.classic_bound == 0.25
    assert report.refined_bound == pytest.approx(0.25, abs=1e-12)
    assert report.certified


def test_adapter_transparency():
    """Integral forms reproduce the direct core evaluation."""
    metric = mean_metric(2)
    f, g, h = sampled(0.2, 0.8), sampled(0.1, 0.9), sampled(1.0, 1.0)
    via_adapter = integral_gruss(f, g, h, UNIT, UNIT, metric)
    direct = evaluate_gruss(metric.vector([0.2, 0.8]), metric.vector([0.1, 0.9]),
                            metric.constant(1.0), UNIT, UNIT)
    assert via_adapter == direct
    assert via_adapter.abs_functional == pytest.approx(0.12)
    assert via_adapter.refined_bound == pytest.approx(0.13)
    assert mean_gruss(f, g, UNIT, UNIT, metric) == direct

    companion = integral_companion(f, g, h, UNIT, "plus", metric)
    assert companion.companion == evaluate_companion(
        metric.vector([0.2, 0.8]), metric.vector([0.1, 0.9]), metric.constant(1.0), UNIT,
        require="plus")


def test_mean_gruss_on_raw_mass():
    """The mean form rescales the measure to mass 1 first."""
    metric, _ = quadrature_metric(GridSpec(a=0, b=2, n=2), normalize=False)
    f = sampled(0.0, 1.0)
    report = mean_gruss(f, f, UNIT, UNIT, metric)
    assert report.abs_functional == pytest.approx(0.25)

    constant = sampled(3.0, 3.0)
    assert mean_gruss(constant, f, Bracket(3, 3), UNIT, metric).abs_functional == pytest.approx(0.0, abs=1e-15)


def test_adapters_take_the_field_from_the_caller():
    """Real samples in a complex context accept a disk bracket; a real context rejects complex samples."""
    metric = mean_metric(2)
    f = sampled(0.0, 1.0)
    disk = Bracket(0.5 - 0.5j, 0.5 + 0.5j)
    report = mean_gruss(f, f, disk, disk, metric, field=Field.COMPLEX)
    assert report.field == Field.COMPLEX
    assert report.certified
    assert report.abs_functional == pytest.approx(0.25)

    companion = integral_companion(f, f, None, disk, "plus", metric, field=Field.COMPLEX)
    assert companion.certified
    assert companion.companion.field == Field.COMPLEX

    with pytest.raises(FieldViolation):
        mean_gruss(f, f, disk, disk, metric, field=Field.REAL)
    with pytest.raises(FieldViolation):
        integral_gruss(sampled(1j, 0), f, sampled(1.0, 1.0), UNIT, UNIT, metric, field=Field.REAL)


def test_integral_gruss_with_f_equal_h():
    """f = h gives a zero functional."""
    metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=8, rule="trapezoid"))
    h = normalize_unit(SampledFunction(1.0 + nodes), metric)
    g = SampledFunction(np.sin(nodes))
    report = integral_gruss(h, g, h, Bracket(0, 2), Bracket(0, 1), metric, strict=False)
    assert report.abs_functional == pytest.approx(0.0, abs=1e-14)


def test_integral_companion_examples():
    """Sharp upper case, two-sided lower case and the center."""
    metric = mean_metric(2)
    h = sampled(1.0, 1.0)

    upper = integral_companion(sampled(0, 1), sampled(0, 1), h, UNIT, "plus", metric)
    assert upper.value == pytest.approx(0.25)
    assert upper.bound == pytest.approx(0.25)
    assert upper.certified
    assert upper.pointwise_plus

    both = integral_companion(sampled(0, 1), sampled(1, 0), h, Bracket(-0.5, 0.5), "both", metric)
    assert both.value == pytest.approx(-0.25)
    assert both.certified
    assert both.pointwise_plus and both.pointwise_minus

    center = integral_companion(sampled(0.5, 0.5), sampled(0.5, 0.5), h, UNIT, "plus", metric)
    assert center.value == pytest.approx(0.0, abs=1e-15)


def test_integral_companion_mean_form():
    """h=None normalizes the measure and uses the constant 1."""
    raw, _ = quadrature_metric(GridSpec(a=0, b=4, n=2), normalize=False)
    mean_form = integral_companion(sampled(0, 1), sampled(0, 1), None, UNIT, "plus", raw)
    explicit = integral_companion(sampled(0, 1), sampled(0, 1), sampled(1.0, 1.0), UNIT, "plus",
                                  mean_metric(2))
    assert mean_form.value == pytest.approx(explicit.value)
    assert mean_form.bound == explicit.bound


def test_simpson_polynomial_exactness():
    """Simpson integrates cubics exactly: T(s, s^2) = 1/4 - 1/6 on [0, 1]."""
    metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=4, rule="simpson"))
    report = mean_gruss(SampledFunction(nodes), SampledFunction(nodes ** 2),
                        UNIT, UNIT, metric)
    assert report.functional.re == pytest.approx(1 / 12, abs=1e-10)


def test_trapezoid_convergence():
    """Successive refinements of a smooth pair get closer together."""
    values = []
    for n in (8, 16, 32, 64):
        metric, nodes = quadrature_metric(GridSpec(a=0, b=1, n=n, rule="trapezoid"))
        report = mean_gruss(SampledFunction(np.sin(nodes)), SampledFunction(np.cos(nodes)),
                            Bracket(0, 1), Bracket(0, 1), metric)
        values.append(report.functional.re)
    steps = np.abs(np.diff(values))
    assert np.all(steps[1:] < steps[:-1])


def test_estimate_bracket_real():
    """min and max for real data."""
    est = estimate_bracket([0.2, 0.8, 0.5])
    assert est.bracket.lo == pytest.approx(0.2)
    assert est.bracket.hi == pytest.approx(0.8)
    assert est.cover_slack == pytest.approx(0.0, abs=1e-15)

    single = estimate_bracket([1.5 - 2j], Field.COMPLEX)
    assert single.bracket.radius == 0.0
    assert single.bracket.lo == 1.5 - 2j

    with pytest.raises(EmptySpace):
        estimate_bracket([])
    with pytest.raises(FieldViolation):
        estimate_bracket([1j, 2])


def test_estimate_bracket_complex():
    """Minimal enclosing disk reported along the real axis."""
    est = estimate_bracket([1, 1j, -1, -1j], Field.COMPLEX)
    assert est.bracket.mid == pytest.approx(0, abs=1e-12)
    assert est.bracket.radius == pytest.approx(1.0)
    assert est.bracket.lo == pytest.approx(-1.0)
    assert est.bracket.hi == pytest.approx(1.0)
    assert est.cover_slack <= 1e-12


def test_estimated_brackets_are_admissible():
    """Estimated brackets satisfy the condition under the mean metric."""
    rng = np.random.default_rng(60)
    for field in Field:
        for _ in range(100):
            n = int(rng.integers(1, 30))
            values = 5 * rng.standard_normal(n)
            if field == Field.COMPLEX:
                values = values + 5j * rng.standard_normal(n)
            est = estimate_bracket(values, field)
            metric = mean_metric(n)
            assert est.cover_slack <= 1e-12 * max(1.0, float(np.max(np.abs(values))))
            assert condition_check(metric.vector(values), metric.constant(1.0), est.bracket).satisfied


def test_minimal_disk_matches_bruteforce():
    """Randomized incremental disk equals the exhaustive oracle."""
    rng = np.random.default_rng(70)
    for _ in range(50):
        n = int(rng.integers(1, 12))
        points = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        fast = minimal_enclosing_disk(points, seed=int(rng.integers(1000)))
        slow = enclosing_disk_bruteforce(points)
        assert fast.radius == pytest.approx(slow.radius, rel=1e-9, abs=1e-12)
        assert all(fast.contains(p) for p in points)


def test_complex_orientation_is_irrelevant():
    """Rotating the diameter of an estimated disk leaves every bound unchanged."""
    rng = np.random.default_rng(80)
    n = 6
    metric = mean_metric(n)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    brf = estimate_bracket(f, Field.COMPLEX).bracket
    brg = estimate_bracket(g, Field.COMPLEX).bracket
    turned = Bracket(brf.mid - 1j * brf.radius, brf.mid + 1j * brf.radius)

    base = mean_gruss(SampledFunction(f), SampledFunction(g), brf, brg, metric)
    other = mean_gruss(SampledFunction(f), SampledFunction(g), turned, brg, metric)
    assert other.refined_bound == pytest.approx(base.refined_bound, rel=1e-12)
    assert other.classic_bound == pytest.approx(base.classic_bound, rel=1e-12)
    assert other.certified and base.certified


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
