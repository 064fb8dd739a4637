"""
Bracket estimation from data.

Real data gets the interval (min, max). Complex data gets the minimal
enclosing disk, reported as the bracket (c - r, c + r) whose diameter lies
along the real axis; every bound depends only on mid and radius.
"""

from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ..core.errors import EmptySpace, FieldViolation
from ..core.spaces import Bracket, Number, to_scalar
from ..core.tolerance import Field, IDENTITY_RTOL, REAL_IMAG_TOL

_MULTIPLICATIVE_EPSILON = 1 + 1e-14


class Disk(NamedTuple):
    center: complex
    radius: float

    def contains(self, point: complex) -> bool:
        return abs(point - self.center) <= self.radius * _MULTIPLICATIVE_EPSILON


class EstimatedBracket(NamedTuple):
    bracket: Bracket
    cover_slack: float


def _diameter_disk(p: complex, q: complex) -> Disk:
    center = (p + q) / 2
    return Disk(center, max(abs(center - p), abs(center - q)))


def _circumdisk(p0: complex, p1: complex, p2: complex) -> Optional[Disk]:
    # shift to the bounding-box center for accuracy
    xs = (p0.real, p1.real, p2.real)
    ys = (p0.imag, p1.imag, p2.imag)
    origin = complex((min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2)
    a, b, c = p0 - origin, p1 - origin, p2 - origin
    d = 2 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    if d == 0.0:
        return None
    aa, bb, cc = abs(a) ** 2, abs(b) ** 2, abs(c) ** 2
    x = (aa * (b.imag - c.imag) + bb * (c.imag - a.imag) + cc * (a.imag - b.imag)) / d
    y = (aa * (c.real - b.real) + bb * (a.real - c.real) + cc * (b.real - a.real)) / d
    center = origin + complex(x, y)
    return Disk(center, max(abs(center - p0), abs(center - p1), abs(center - p2)))


def _cross(p: complex, q: complex, r: complex) -> float:
    return (q.real - p.real) * (r.imag - p.imag) - (q.imag - p.imag) * (r.real - p.real)


def _disk_two_points(points: Sequence[complex], p: complex, q: complex) -> Disk:
    circ = _diameter_disk(p, q)
    left: Optional[Disk] = None
    right: Optional[Disk] = None
    for r in points:
        if circ.contains(r):
            continue
        cross = _cross(p, q, r)
        candidate = _circumdisk(p, q, r)
        if candidate is None:
            continue
        side = _cross(p, q, candidate.center)
        if cross > 0.0 and (left is None or side > _cross(p, q, left.center)):
            left = candidate
        elif cross < 0.0 and (right is None or side < _cross(p, q, right.center)):
            right = candidate
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _disk_one_point(points: Sequence[complex], p: complex) -> Disk:
    disk = Disk(p, 0.0)
    for i, q in enumerate(points):
        if not disk.contains(q):
            if disk.radius == 0.0:
                disk = _diameter_disk(p, q)
            else:
                disk = _disk_two_points(points[: i + 1], p, q)
    return disk


def minimal_enclosing_disk(points: Sequence[Number], seed: int = 0) -> Disk:
    """
    Smallest disk containing every point, expected linear time.

    Args:
        points: Complex (or real) numbers
        seed: Shuffle seed; the result does not depend on it beyond rounding

    Returns:
        Disk(center, radius)
    """
    shuffled = [complex(p) for p in points]
    if not shuffled:
        raise EmptySpace()
    order = np.random.default_rng(seed).permutation(len(shuffled))
    shuffled = [shuffled[i] for i in order]

    disk: Optional[Disk] = None
    for i, p in enumerate(shuffled):
        if disk is None or not disk.contains(p):
            disk = _disk_one_point(shuffled[: i + 1], p)
    return disk


def enclosing_disk_bruteforce(points: Sequence[Number]) -> Disk:
    """Reference disk: the smallest covering disk among all 2- and 3-point circles."""
    pts = [complex(p) for p in points]
    if not pts:
        raise EmptySpace()
    if len(pts) == 1:
        return Disk(pts[0], 0.0)
    candidates = [_diameter_disk(p, q) for p, q in combinations(pts, 2)]
    candidates += [d for d in (_circumdisk(*t) for t in combinations(pts, 3)) if d is not None]
    covering = [d for d in candidates if all(d.contains(p) for p in pts)]
    return min(covering, key=lambda d: d.radius)


def estimate_bracket(values: Sequence[Number], field: Field = Field.REAL) -> EstimatedBracket:
    """
    Bracket whose closed disk contains every value.

    Args:
        values: Data points
        field: real gives (min, max); complex gives the minimal enclosing disk

    Returns:
        EstimatedBracket with cover_slack = max |v - mid| - radius
    """
    data = np.asarray(values, dtype=complex).ravel()
    if data.size == 0:
        raise EmptySpace()
    for v in data:
        to_scalar(v)

    if field == Field.REAL:
        imag = np.abs(data.imag)
        if np.max(imag) > REAL_IMAG_TOL:
            raise FieldViolation(complex(data[np.argmax(imag)]))
        bracket = Bracket(float(np.min(data.real)), float(np.max(data.real)))
    else:
        disk = minimal_enclosing_disk(data)
        radius = float(np.max(np.abs(data - disk.center)))
        bracket = Bracket(disk.center - radius, disk.center + radius)

    slack = float(np.max(np.abs(data - bracket.mid)) - bracket.radius)
    scale = max(1.0, float(np.max(np.abs(data))))
    if slack > IDENTITY_RTOL * scale:
        # rounding in c +- r moved the midpoint; widen by the excess
        bracket = Bracket(bracket.mid - (bracket.radius + slack), bracket.mid + (bracket.radius + slack))
        slack = float(np.max(np.abs(data - bracket.mid)) - bracket.radius)
    return EstimatedBracket(bracket, slack)
