"""
Numerical sharpness search for the constant 1/4.

Maximizes |T| / bound (or Re T / bound for the companion) over admissible
inputs: random restarts followed by coordinate-wise perturbation with a
shrinking step, seeded from the exact equality witness.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..console import console
from ..core.bounds import classic_bound, refined_bound
from ..core.functional import chebyshev_functional
from ..core.spaces import Vector
from ..core.tolerance import Field
from .generators import (
    FuzzConfig,
    Witness,
    WitnessKind,
    coin,
    equality_witness,
    project_into_disk,
    random_vector,
    sample_admissible,
    sub_generator,
)

# refined bounds this small relative to the classic one make the ratio pure rounding
_REFINED_FLOOR = 1e-6


@dataclass(frozen=True)
class SharpnessResult:
    kind: str
    best_ratio: float
    witness: Witness
    iterations: int
    rejected: int
    dim: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "best_ratio": self.best_ratio,
            "dim": self.dim,
            "iterations": self.iterations,
            "rejected": self.rejected,
            "witness": self.witness.to_dict(),
        }


def witness_ratio(w: Witness) -> float:
    """|T| / bound for classic and refined, Re T / bound for the companion."""
    functional = chebyshev_functional(w.x, w.y, w.e)
    if w.kind == "companion":
        bound = 0.25 * w.brx.width ** 2
        return functional.real / bound if bound > 0 else 0.0
    classic = classic_bound(w.brx, w.bry)
    if classic == 0.0:
        return 0.0
    if w.kind == "classic":
        return abs(functional) / classic
    refined = refined_bound(w.x, w.y, w.e, w.brx, w.bry)
    if refined <= _REFINED_FLOOR * classic:
        return 0.0
    return abs(functional) / refined


def _assemble(kind: str, first: Vector, second: Vector, base: Witness) -> Witness:
    # companion tuples are stored as (z, d) with x = z + d, y = z - d
    if kind == "companion":
        return Witness(kind, first + second, first - second, base.e, base.brx, base.bry)
    return Witness(kind, first, second, base.e, base.brx, base.bry)


def _restart(kind: str, base: Witness, field: Field, rng: np.random.Generator) -> Tuple[Vector, Vector]:
    e = base.e
    if field == Field.COMPLEX:
        e = Vector.of(e.coords, e.metric, Field.COMPLEX)
    first = sample_admissible(e, base.brx, rng, boundary=coin(rng, 0.5))
    if kind == "companion":
        second = random_vector(e.metric, field, rng, scale=0.1 * base.brx.radius * rng.random())
    else:
        second = sample_admissible(e, base.bry, rng, boundary=coin(rng, 0.5))
    return first, second


def _perturb(kind: str, state: Tuple[Vector, Vector], base: Witness, field: Field,
             step: float, rng: np.random.Generator) -> Tuple[Vector, Vector]:
    which = int(rng.integers(2))
    target = state[which]
    coords = np.array(target.coords, dtype=complex)
    index = int(rng.integers(coords.size))
    delta = rng.standard_normal()
    if field == Field.COMPLEX:
        delta = delta + 1j * rng.standard_normal()
    coords[index] += step * base.brx.radius * delta
    moved = Vector.of(coords, target.metric, field if field == Field.COMPLEX else None)
    if which == 0:
        moved = project_into_disk(moved, base.e, base.brx)
    elif kind != "companion":
        moved = project_into_disk(moved, base.e, base.bry)
    return (moved, state[1]) if which == 0 else (state[0], moved)


def _search_dim(cfg: FuzzConfig, kind: str, dim: int, budget: int,
                verbose: bool) -> SharpnessResult:
    rng = sub_generator(cfg.seed, dim)
    base = equality_witness(kind, dim)
    best = base
    best_ratio = witness_ratio(base)
    if kind == "companion":
        zero = Vector.of(np.zeros(dim), base.e.metric, Field.REAL)
        best_state = (base.x, zero)
    else:
        best_state = (base.x, base.y)

    limit = 1.0 + cfg.tolerance
    iterations = rejected = 0

    def consider(state) -> bool:
        nonlocal best, best_ratio, best_state, iterations, rejected
        candidate = _assemble(kind, state[0], state[1], base)
        ratio = witness_ratio(candidate)
        iterations += 1
        if ratio > limit:
            rejected += 1
            return False
        if ratio > best_ratio:
            best, best_ratio, best_state = candidate, ratio, state
            return True
        return False

    restarts = budget // 2
    for _ in range(restarts):
        consider(_restart(kind, base, cfg.field, rng))

    step = 0.1
    for _ in range(budget - restarts):
        if not consider(_perturb(kind, best_state, base, cfg.field, step, rng)):
            step = max(step * 0.995, 1e-6)

    if verbose:
        console.log(f"sharpness[{kind}] dim={dim}: best ratio {best_ratio:.12f} "
                    f"after {iterations} candidates")
    return SharpnessResult(kind, best_ratio, best, iterations, rejected, dim)


def sharpness_search(cfg: FuzzConfig, kind: WitnessKind = "classic",
                     verbose: bool = False) -> SharpnessResult:
    """
    Search for the largest ratio of the functional to its bound.

    Args:
        cfg: Seed, dimensions, field, sample budget and tolerance
        kind: classic, refined or companion
        verbose: Log one line per dimension

    Returns:
        SharpnessResult for the best dimension; ratios above 1 + tolerance
        would be counterexamples and are counted in `rejected`, never reported
    """
    share, extra = divmod(cfg.samples, len(cfg.dims))
    results = [
        _search_dim(cfg, kind, dim, share + (1 if i < extra else 0), verbose)
        for i, dim in enumerate(cfg.dims)
    ]
    best = max(results, key=lambda r: r.best_ratio)
    return SharpnessResult(
        kind=kind,
        best_ratio=best.best_ratio,
        witness=best.witness,
        iterations=sum(r.iterations for r in results),
        rejected=sum(r.rejected for r in results),
        dim=best.dim,
    )
