"""
Seeded oracle suite over every certified inequality and identity.

Samples are split into shards, each driven by its own (seed, shard) generator,
so shards can run in any order or in parallel and their counters merge by
addition.
"""

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..console import console
from ..core.bounds import dual_chain, evaluate_companion, evaluate_gruss
from ..core.functional import (
    chebyshev_functional,
    condition_check,
    identity_residual,
    inner,
    schwarz_gap,
    vector_condition_check,
)
from ..core.spaces import Bracket
from ..core.tolerance import Field, identity_tolerance
from .generators import (
    FuzzConfig,
    choose_dim,
    coin,
    random_bracket,
    random_direction,
    random_metric,
    random_scalar,
    random_vector,
    sample_admissible,
    sub_generator,
)

DEFAULT_SHARDS = 8
DEFAULT_WORKERS = os.cpu_count() or 1
LAMBDA_PROBES = 8

CHECKS = (
    "generator_soundness",
    "equivalence",
    "vector_equivalence",
    "schwarz_infimum",
    "schwarz_premise",
    "classic",
    "refined",
    "strict_refinement",
    "radicand",
    "companion_upper",
    "companion_two_sided",
    "companion_real_abs",
    "companion_chain",
    "dual_chain",
    "identity",
    "elementary",
)


class FuzzReport(BaseModel):
    """Per-check evaluation and violation counts."""

    model_config = ConfigDict(frozen=True)

    seed: int
    field: Field
    dims: Tuple[int, ...]
    samples: int
    tolerance: float
    shards: int
    checked: Dict[str, int]
    violations: Dict[str, int]

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    @property
    def clean(self) -> bool:
        return self.total_violations == 0


class _Tally:
    def __init__(self):
        self.checked = Counter()
        self.violations = Counter()

    def record(self, name: str, ok: bool):
        self.checked[name] += 1
        if not ok:
            self.violations[name] += 1


def _scale(*values: float) -> float:
    # squared size of the largest participating magnitude
    return (1.0 + sum(abs(v) for v in values)) ** 2


def _check_sample(cfg: FuzzConfig, dim: int, rng: np.random.Generator, tally: _Tally):
    field = cfg.field
    metric = random_metric(dim, rng)
    e = random_direction(metric, field, rng)
    brx = random_bracket(field, rng)
    bry = random_bracket(field, rng)
    x = sample_admissible(e, brx, rng, boundary=coin(rng, 0.2))
    y = sample_admissible(e, bry, rng, boundary=coin(rng, 0.2))
    u = random_vector(metric, field, rng, scale=2.0)
    v = random_vector(metric, field, rng, scale=2.0)

    size = _scale(x.norm(), y.norm(), abs(brx.lo), abs(brx.hi), abs(bry.lo), abs(bry.hi))
    ineq_tol = cfg.tolerance * size

    # admissible generation and the equivalence of both condition forms
    cond_x = condition_check(x, e, brx)
    cond_y = condition_check(y, e, bry)
    tally.record("generator_soundness", cond_x.satisfied and cond_y.satisfied)
    free = condition_check(u, e, brx)
    tally.record("equivalence", max(abs(cond_x.equiv_residual), abs(free.equiv_residual))
                 <= identity_tolerance(x.norm_sq(), u.norm_sq(), abs(brx.lo) ** 2, abs(brx.hi) ** 2))
    a, big_a = random_vector(metric, field, rng), random_vector(metric, field, rng)
    general = vector_condition_check(u, a, big_a)
    tally.record("vector_equivalence", abs(general.equiv_residual)
                 <= identity_tolerance(u.norm_sq(), a.norm_sq(), big_a.norm_sq()))

    # gap as an infimum over multiples of e
    gap_u = schwarz_gap(u, e)
    u_tol = identity_tolerance(u.norm_sq())
    ok = abs((u - inner(u, e) * e).norm_sq() - gap_u) <= u_tol and gap_u >= -u_tol
    for _ in range(LAMBDA_PROBES):
        lam = random_scalar(field, rng, scale=3.0)
        ok = ok and (u - lam * e).norm_sq() >= gap_u - identity_tolerance(u.norm_sq(), abs(lam) ** 2)
    tally.record("schwarz_infimum", ok)

    t_uv = chebyshev_functional(u, v, e)
    tally.record("schwarz_premise", abs(t_uv) ** 2 <= max(gap_u, 0.0) * max(schwarz_gap(v, e), 0.0)
                 + cfg.tolerance * _scale(u.norm(), v.norm()) ** 2)

    report = evaluate_gruss(x, y, e, brx, bry, strict=False, field=field)
    tally.record("classic", report.abs_functional <= report.classic_bound + ineq_tol)
    tally.record("refined",
                 report.abs_functional <= report.schwarz_bound + ineq_tol
                 and report.schwarz_bound <= report.refined_bound + ineq_tol
                 and 0.0 <= report.refined_bound <= report.classic_bound + ineq_tol)
    if report.radicand_x > 1e-6 and report.radicand_y > 1e-6:
        tally.record("strict_refinement", report.refined_bound < report.classic_bound)
    tally.record("radicand", report.radicand_x <= brx.radius ** 2 + ineq_tol
                 and report.radicand_y <= bry.radius ** 2 + ineq_tol)

    # companion: (x' + y')/2 = z and (x' - y')/2 = d
    br = random_bracket(field, rng)
    z = sample_admissible(e, br, rng, boundary=coin(rng, 0.2))
    bound_tol = cfg.tolerance * _scale(z.norm(), abs(br.lo), abs(br.hi), u.norm())
    plus_only = evaluate_companion(z + u, z - u, e, br, strict=False, field=field)
    tally.record("companion_upper", plus_only.upper_certified
                 and plus_only.companion_value <= plus_only.bound + bound_tol)
    d = sample_admissible(e, br, rng, boundary=coin(rng, 0.2))
    both = evaluate_companion(z + d, z - d, e, br, strict=False, field=field)
    tally.record("companion_two_sided", both.two_sided_certified
                 and abs(both.companion_value) <= both.bound + bound_tol)
    if field == Field.REAL:
        tally.record("companion_real_abs", both.real_abs_certified
                     and abs(both.functional.value) <= both.bound + bound_tol)
    tally.record("companion_chain", t_uv.real
                 <= schwarz_gap((u + v) / 2, e) + cfg.tolerance * _scale(u.norm(), v.norm()))

    # dual chain: push the bracket disk away from <u, e>
    center = inner(u, e)
    radius = abs(random_scalar(Field.REAL, rng))
    phase = _unit_scalar(field, rng)
    gap_from_center = radius * (1.0 if coin(rng, 0.1) else 1.0 + rng.random())
    mid = center + gap_from_center * phase
    tilt = _unit_scalar(field, rng)
    far = Bracket(mid - radius * tilt, mid + radius * tilt)
    dual_tol = cfg.tolerance * _scale(u.norm(), abs(far.lo), abs(far.hi))
    first, middle, upper = dual_chain(u, e, far, tol=dual_tol)
    tally.record("dual_chain", first <= middle + dual_tol and middle <= upper + dual_tol)

    # identity, including the degenerate case x = lambda e
    point = random_scalar(field, rng) * e if coin(rng, 0.1) else u
    residual = identity_residual(point, e, brx)
    tally.record("identity", abs(residual)
                 <= identity_tolerance(point.norm_sq(), abs(brx.lo) ** 2, abs(brx.hi) ** 2))

    pair_tol = cfg.tolerance * _scale(u.norm(), v.norm())
    tally.record("elementary",
                 inner(u, v).real <= 0.25 * (u + v).norm_sq() + pair_tol
                 and inner(u, v).real <= 0.5 * (u.norm_sq() + v.norm_sq()) + pair_tol)


def _unit_scalar(field: Field, rng: np.random.Generator) -> complex:
    """Unit scalar: +-1 in the real field, a point on the unit circle in the complex one."""
    if field == Field.REAL:
        return 1.0 if coin(rng, 0.5) else -1.0
    return complex(np.exp(2j * np.pi * rng.random()))


def fuzz_shard(cfg: FuzzConfig, shard: int, shards: int = DEFAULT_SHARDS) -> Tuple[Counter, Counter]:
    """Run the sample indices shard, shard + shards, ... of the configuration."""
    rng = sub_generator(cfg.seed, shard)
    tally = _Tally()
    for index in range(shard, cfg.samples, shards):
        _check_sample(cfg, choose_dim(cfg, index), rng, tally)
    return tally.checked, tally.violations


def fuzz_all(cfg: FuzzConfig, shards: int = DEFAULT_SHARDS, workers: int = 1,
             verbose: bool = False) -> FuzzReport:
    """
    Run every oracle on cfg.samples generated tuples.

    Args:
        cfg: Seed, dimensions, field, sample count and inequality tolerance
        shards: Number of independent sub-seeded streams
        workers: Processes used to run shards (capped at shards); results do not depend on it
        verbose: Log per-shard progress

    Returns:
        FuzzReport; every violation count is expected to be zero
    """
    checked, violations = Counter(), Counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, shards)) as pool:
            parts = list(pool.map(fuzz_shard, [cfg] * shards, range(shards), [shards] * shards))
    else:
        parts = (fuzz_shard(cfg, k, shards) for k in range(shards))

    for k, (part_checked, part_violations) in enumerate(parts):
        checked.update(part_checked)
        violations.update(part_violations)
        if verbose:
            console.log(f"fuzz shard {k + 1}/{shards}: "
                        f"{sum(part_violations.values())} violations")

    return FuzzReport(
        seed=cfg.seed,
        field=cfg.field,
        dims=cfg.dims,
        samples=cfg.samples,
        tolerance=cfg.tolerance,
        shards=shards,
        checked={name: checked[name] for name in CHECKS},
        violations={name: violations[name] for name in CHECKS},
    )
