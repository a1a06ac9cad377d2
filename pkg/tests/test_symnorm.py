"""Circle-model symmetric norm: rotation-averaged max of the |sin| and
|cos| moments of a finite positive atomic measure.

Closed-form piecewise integration is checked against a plain midpoint-rule
quadrature that knows nothing about breakpoints, plus the hand-derivable
constants for one and two atoms.
"""

import math
import random

import pytest

from freelattice.errors import FreeLatticeError
from freelattice.symnorm import (
    CircleMeasure,
    circle_dual_norm,
    circle_measure,
    rotate,
    scale_measure,
    symmetric_norm,
)
from helpers import midpoint_symnorm

SINGLE_ATOM = 2 * math.sqrt(2) / math.pi
QUARTER_PAIR = 4 / math.pi


def test_dual_norm_examples():
    assert circle_dual_norm(circle_measure([(0.0, 1.0)])) == pytest.approx(1.0)
    assert circle_dual_norm(circle_measure([(math.pi / 4, 1.0)])) == pytest.approx(
        math.sqrt(2) / 2
    )
    assert circle_dual_norm(circle_measure([(0.0, 3.0), (math.pi / 2, 1.0)])) == (
        pytest.approx(3.0)
    )


def test_single_atom_constant_everywhere():
    rng = random.Random(97)
    for _ in range(10):
        x = rng.uniform(0, 2 * math.pi)
        assert abs(symmetric_norm(circle_measure([(x, 1.0)])) - SINGLE_ATOM) <= 1e-9


def test_quarter_turn_pair_constant_everywhere():
    rng = random.Random(101)
    for _ in range(10):
        x = rng.uniform(0, 2 * math.pi)
        mu = circle_measure([(x, 1.0), (x + math.pi / 2, 1.0)])
        assert abs(symmetric_norm(mu) - QUARTER_PAIR) <= 1e-9


def test_opposite_pair_doubles_the_single_atom():
    mu = circle_measure([(0.3, 1.0), (0.3 + math.pi, 1.0)])
    assert abs(symmetric_norm(mu) - 2 * SINGLE_ATOM) <= 1e-9


def test_agrees_with_midpoint_quadrature():
    rng = random.Random(103)
    for _ in range(12):
        count = rng.randint(1, 4)
        atoms = []
        used = []
        while len(atoms) < count:
            a = rng.uniform(0, 2 * math.pi)
            if all(abs(a - b) > 1e-3 for b in used):
                used.append(a)
                atoms.append((a, rng.uniform(0.1, 4.0)))
        mu = circle_measure(atoms)
        assert abs(symmetric_norm(mu) - midpoint_symnorm(mu)) <= 1e-7


def test_rotation_invariance():
    rng = random.Random(107)
    mu = circle_measure([(0.2, 1.5), (1.1, 0.7), (4.0, 2.2)])
    base = symmetric_norm(mu)
    for _ in range(10):
        t = rng.uniform(0, 2 * math.pi)
        assert abs(symmetric_norm(rotate(mu, t)) - base) <= 1e-9


def test_homogeneity_in_the_weights():
    mu = circle_measure([(0.4, 0.9), (2.5, 1.8)])
    base = symmetric_norm(mu)
    for c in (0.0, 0.5, 2.0, 7.25):
        assert abs(symmetric_norm(scale_measure(mu, c)) - c * base) <= 1e-9
    with pytest.raises(FreeLatticeError):
        scale_measure(mu, -1.0)


def test_total_weight_sandwich():
    rng = random.Random(109)
    for _ in range(15):
        count = rng.randint(1, 5)
        atoms = [
            (rng.uniform(0, 2 * math.pi) + 7.0 * i, rng.uniform(0.0, 3.0))
            for i in range(count)
        ]
        mu = circle_measure(atoms)
        val = symmetric_norm(mu)
        total = mu.total_weight
        assert (2 / math.pi) * total - 1e-9 <= val <= SINGLE_ATOM * total + 1e-9


def test_two_atom_range_over_separations():
    lo, hi = QUARTER_PAIR, 2 * SINGLE_ATOM
    for j in range(1, 26):
        theta = j * math.pi / 26
        mu = circle_measure([(0.0, 1.0), (theta, 1.0)])
        val = symmetric_norm(mu)
        assert lo - 1e-9 <= val <= hi + 1e-9
    assert abs(
        symmetric_norm(circle_measure([(0.0, 1.0), (math.pi, 1.0)])) - hi
    ) <= 1e-9
    assert abs(
        symmetric_norm(circle_measure([(0.0, 1.0), (math.pi / 2, 1.0)])) - lo
    ) <= 1e-9


def test_triangle_inequality_for_measures():
    rng = random.Random(113)
    for _ in range(10):
        a1 = rng.uniform(0, 2)
        a2 = a1 + rng.uniform(0.5, 2)
        a3 = a2 + rng.uniform(0.5, 2)
        w = [rng.uniform(0.1, 2) for _ in range(3)]
        merged = circle_measure([(a1, w[0]), (a2, w[1]), (a3, w[2])])
        part1 = circle_measure([(a1, w[0]), (a3, w[2])])
        part2 = circle_measure([(a2, w[1])])
        assert symmetric_norm(merged) <= (
            symmetric_norm(part1) + symmetric_norm(part2) + 1e-9
        )


def test_measure_validation():
    with pytest.raises(FreeLatticeError):
        circle_measure([(0.0, -1.0)])
    with pytest.raises(FreeLatticeError):
        circle_measure([(1.0, 1.0), (1.0, 2.0)])
    with pytest.raises(FreeLatticeError):
        # Distinctness is modulo 2*pi, so near-wraparound pairs collide.
        circle_measure([(0.0, 1.0), (2 * math.pi - 1e-15, 1.0)])
    with pytest.raises(FreeLatticeError):
        symmetric_norm(circle_measure([(0.0, 1.0)]), tol=0)
    assert symmetric_norm(CircleMeasure(())) == 0.0
    assert symmetric_norm(circle_measure([(0.5, 0.0)])) == 0.0
    assert circle_measure([(7.0, 1.0)]).atoms[0][0] == pytest.approx(7.0 - 2 * math.pi)
