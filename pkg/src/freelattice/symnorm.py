"""Rotation-averaged norms of atomic measures on the circle.

The two-generator model: a finite positive atomic measure on the unit
circle has dual free norm max of its |sin| and |cos| moments, and its
symmetric norm is the average of that quantity over all rotations.  The
average is computed in closed form: between consecutive breakpoints (the
rotations carrying some atom onto a quadrant boundary) both moments are
single sinusoids a sin t + b cos t, their crossing inside a piece is solved
with atan2, and each sub-piece integrates by antiderivative.  Everything
here is floating point; closed-form trig values are irrational, so
tolerances are explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FreeLatticeError

_TWO_PI = 2 * math.pi
_MERGE = 1e-12  # breakpoints closer than this collapse to one


@dataclass(frozen=True)
class CircleMeasure:
    """A finite positive atomic measure: (angle, weight) pairs with angles
    reduced modulo 2*pi and pairwise distinct."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        reduced = []
        for angle, weight in self.atoms:
            angle = float(angle) % _TWO_PI
            weight = float(weight)
            if weight < 0:
                raise FreeLatticeError("atom weights must be nonnegative")
            reduced.append((angle, weight))
        angles = sorted(a for a, _ in reduced)
        for prev, cur in zip(angles, angles[1:]):
            if cur - prev < _MERGE:
                raise FreeLatticeError("atom angles must be distinct modulo 2*pi")
        if len(angles) >= 2 and (angles[0] + _TWO_PI) - angles[-1] < _MERGE:
            raise FreeLatticeError("atom angles must be distinct modulo 2*pi")
        object.__setattr__(self, "atoms", tuple(reduced))

    @property
    def total_weight(self) -> float:
        return sum(w for _, w in self.atoms)


def circle_measure(atoms) -> CircleMeasure:
    return CircleMeasure(tuple((float(a), float(w)) for a, w in atoms))


def rotate(mu: CircleMeasure, t: float) -> CircleMeasure:
    """The measure shifted by angle t."""
    return CircleMeasure(tuple((a + t, w) for a, w in mu.atoms))


def scale_measure(mu: CircleMeasure, c: float) -> CircleMeasure:
    if c < 0:
        raise FreeLatticeError("measure scaling must be nonnegative")
    return CircleMeasure(tuple((a, c * w) for a, w in mu.atoms))


def circle_dual_norm(mu: CircleMeasure) -> float:
    """max of the |sin| moment and the |cos| moment."""
    sin_m = sum(w * abs(math.sin(a)) for a, w in mu.atoms)
    cos_m = sum(w * abs(math.cos(a)) for a, w in mu.atoms)
    return max(sin_m, cos_m)


def _breakpoints(mu: CircleMeasure) -> list[float]:
    """Rotations t where some atom angle plus t hits a multiple of pi/2:
    between them both moments are single sinusoids in t."""
    raw = sorted(
        (k * math.pi / 2 - a) % _TWO_PI for a, _ in mu.atoms for k in range(4)
    )
    pts: list[float] = []
    for t in raw:
        if not pts or t - pts[-1] > _MERGE:
            pts.append(t)
    if pts and pts[0] + _TWO_PI - pts[-1] <= _MERGE:
        pts.pop()
    return pts


def _moment_coeffs(mu: CircleMeasure, tm: float) -> tuple[float, float, float, float]:
    """Coefficients (as, ac, bs, bc) so that near tm the |sin| moment is
    as*sin t + ac*cos t and the |cos| moment is bs*sin t + bc*cos t."""
    a_s = a_c = b_s = b_c = 0.0
    for x, w in mu.atoms:
        s_sign = 1.0 if math.sin(x + tm) >= 0 else -1.0
        c_sign = 1.0 if math.cos(x + tm) >= 0 else -1.0
        a_s += w * s_sign * math.cos(x)
        a_c += w * s_sign * math.sin(x)
        b_s += -w * c_sign * math.sin(x)
        b_c += w * c_sign * math.cos(x)
    return a_s, a_c, b_s, b_c


def _antiderivative(cs: float, cc: float, t: float) -> float:
    # d/dt (-cs cos t + cc sin t) = cs sin t + cc cos t
    return -cs * math.cos(t) + cc * math.sin(t)


def _integrate_max(
    a_s: float, a_c: float, b_s: float, b_c: float, lo: float, hi: float
) -> float:
    """Integral of max(a_s sin + a_c cos, b_s sin + b_c cos) over [lo, hi],
    assuming the interval is shorter than pi so the difference sinusoid has
    at most one interior root."""
    d_s, d_c = a_s - b_s, a_c - b_c
    amp = math.hypot(d_s, d_c)
    cuts = [lo, hi]
    if amp > _MERGE:
        # d_s sin t + d_c cos t = amp * sin(t + phase)
        phase = math.atan2(d_c, d_s)
        base = -phase
        k = math.ceil((lo - base) / math.pi)
        root = base + k * math.pi
        if lo + _MERGE < root < hi - _MERGE:
            cuts = [lo, root, hi]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        tm = (a + b) / 2
        va = a_s * math.sin(tm) + a_c * math.cos(tm)
        vb = b_s * math.sin(tm) + b_c * math.cos(tm)
        cs, cc = (a_s, a_c) if va >= vb else (b_s, b_c)
        total += _antiderivative(cs, cc, b) - _antiderivative(cs, cc, a)
    return total


def symmetric_norm(mu: CircleMeasure, tol: float = 1e-9) -> float:
    """The average of circle_dual_norm over all rotations of mu.

    Closed-form piecewise integration; the result is exact up to floating
    point roundoff, far inside the advertised tol.
    """
    if tol <= 0:
        raise FreeLatticeError("tol must be positive")
    if not mu.atoms or mu.total_weight == 0:
        return 0.0
    pts = _breakpoints(mu)
    intervals = list(zip(pts, pts[1:])) + [(pts[-1], pts[0] + _TWO_PI)]
    total = 0.0
    for lo, hi in intervals:
        if hi - lo <= _MERGE:
            continue
        tm = (lo + hi) / 2
        a_s, a_c, b_s, b_c = _moment_coeffs(mu, tm)
        total += _integrate_max(a_s, a_c, b_s, b_c, lo, hi)
    return total / _TWO_PI
