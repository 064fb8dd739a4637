"""Full-scale runs of the fuzzing and sharpness suites; enable with --run-acceptance."""

import os
import time

import pytest

from src.core.tolerance import Field
from src.lab.fuzzing import fuzz_all
from src.lab.generators import FuzzConfig
from src.lab.sharpness import sharpness_search

pytestmark = pytest.mark.acceptance

WORKERS = os.cpu_count() or 1


@pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
def test_hundred_thousand_samples_are_clean(field):
    """10^5 admissible tuples per field, no violations, within a minute."""
    cfg = FuzzConfig(seed=42, samples=100_000, field=field)
    start = time.perf_counter()
    report = fuzz_all(cfg, workers=WORKERS)
    elapsed = time.perf_counter() - start
    assert report.clean, report.violations
    assert report.checked["classic"] == 100_000
    assert elapsed < 60.0


def test_ten_thousand_samples_replay_identically():
    """Seed 42 reproduces the same report regardless of worker count."""
    cfg = FuzzConfig(seed=42, samples=10_000)
    serial = fuzz_all(cfg)
    parallel = fuzz_all(cfg, workers=WORKERS)
    assert serial.clean
    assert serial.model_dump_json() == parallel.model_dump_json()


def test_classic_sharpness_at_full_budget():
    """Ten thousand perturbations in dimension 2 reach ratio 0.999 and never exceed 1."""
    result = sharpness_search(FuzzConfig(dims=(2,), samples=10_000, seed=42), "classic")
    assert result.rejected == 0
    assert 0.999 <= result.best_ratio <= 1 + 1e-9


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--run-acceptance"])
