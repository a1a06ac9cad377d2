"""Exact rational simplex for LPs in the standard inequality form

    maximize c.x  subject to  A x <= b,  x >= 0,  b >= 0.

All arithmetic is over ``fractions.Fraction``, pivoting follows Bland's rule,
so the method terminates without cycling and the returned primal and dual
solutions satisfy strong duality as an exact identity.  Nonnegative right
hand sides make the slack basis feasible, which is all the callers in this
package need; there is deliberately no phase-one machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AlgorithmDefect, FreeLatticeError

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LpSolution:
    """Optimal primal x, dual prices y (one per row), and the shared value."""

    value: Fraction
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]


def solve_lp_max(
    c: Sequence[Fraction],
    rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
) -> LpSolution:
    """Solve max c.x with A x <= b, x >= 0 exactly.

    Returns matching primal and dual optima; raises if the LP is unbounded or
    some b_i is negative.
    """
    m = len(rows)
    n = len(c)
    if len(b) != m:
        raise FreeLatticeError("right hand side length does not match row count")
    for row in rows:
        if len(row) != n:
            raise FreeLatticeError("constraint row length does not match objective")
    if any(bi < 0 for bi in b):
        raise FreeLatticeError("negative right hand side; slack basis infeasible")

    if n == 0:
        return LpSolution(_ZERO, (), tuple(_ZERO for _ in range(m)))
    if m == 0:
        if any(cj > 0 for cj in c):
            raise FreeLatticeError("unbounded LP: positive objective, no constraints")
        return LpSolution(_ZERO, tuple(_ZERO for _ in range(n)), ())

    # Tableau columns: n structural variables, m slacks, then the rhs.
    width = n + m
    tab = [
        [Fraction(rows[i][j]) for j in range(n)]
        + [Fraction(1) if k == i else _ZERO for k in range(m)]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    cost = [-Fraction(cj) for cj in c] + [_ZERO] * m + [_ZERO]
    basis = list(range(n, n + m))

    guard = 0
    limit = 50000  # Bland's rule terminates; this is a defect trip wire only
    while True:
        guard += 1
        if guard > limit:
            raise AlgorithmDefect("simplex iteration guard exceeded")
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        # Ratio test; Bland tie-break on the smallest basic variable index.
        leave = None
        best = None
        for i in range(m):
            coeff = tab[i][enter]
            if coeff > 0:
                ratio = tab[i][width] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise FreeLatticeError("unbounded LP")
        _pivot(tab, cost, leave, enter, width)
        basis[leave] = enter

    x = [_ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][width]
    y = tuple(cost[n + i] for i in range(m))
    value = sum((Fraction(c[j]) * x[j] for j in range(n)), _ZERO)
    dual_value = sum((y[i] * Fraction(b[i]) for i in range(m)), _ZERO)
    if value != dual_value or any(yi < 0 for yi in y):
        raise AlgorithmDefect("simplex finished without exact strong duality")
    return LpSolution(value, tuple(x), y)


def _pivot(tab, cost, leave: int, enter: int, width: int) -> None:
    pivot = tab[leave][enter]
    prow = tab[leave]
    inv = 1 / pivot
    for j in range(width + 1):
        prow[j] *= inv
    for i, row in enumerate(tab):
        if i != leave and row[enter] != 0:
            factor = row[enter]
            for j in range(width + 1):
                row[j] -= factor * prow[j]
    if cost[enter] != 0:
        factor = cost[enter]
        for j in range(width + 1):
            cost[j] -= factor * prow[j]
