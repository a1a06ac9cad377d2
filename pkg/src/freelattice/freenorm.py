"""The free norm, its dual, and exact optimality certificates.

For an expression f over n generators, the free norm is

    ||f||_F = sup { sum_i w_i |f(xi_i)| : w >= 0, sum_i w_i |xi_i(k)| <= 1 for every k },

the supremum running over finitely supported measures on the cube whose dual
norm (the max over coordinates of the |coordinate|-weighted mass) is at most
one.  The module solves this semi-infinite LP by column generation: a master
LP over a growing finite atom set alternates with an exact pricing step that
maximizes |f(xi)| - sum_k y_k |xi_k| over the sup-norm unit sphere using the
cell decomposition, where the objective is linear on each cell-facet
polytope.  The dual prices certify optimality against every admissible
measure, not only atomic ones: whenever |f| <= sum_k y_k |xi_k| pointwise,
every feasible measure yields at most sum_k y_k.

Everything here is exact rational arithmetic; certificates re-verify from
scratch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .canonical import (
    DEFAULT_FORM_CAP,
    DEFAULT_HYPERPLANE_CAP,
    _active_form,
    _cell_polys,
    _centroid,
    _slice_plane,
    arrangement_hyperplanes,
    to_maxmin,
)
from .errors import AlgorithmDefect, DimensionMismatch, FreeLatticeError
from .expressions import LatticeExpr, Point, eval_expr
from .simplex import solve_lp_max

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AtomicMeasure:
    """A finitely supported measure on the cube [-1, 1]^n.

    Atoms are (point, weight) pairs with pairwise distinct points; weights
    may be signed in general, though norm certificates carry nonnegative
    ones.
    """

    n: int
    atoms: tuple[tuple[Point, Fraction], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise FreeLatticeError("ambient generator count must be at least 1")
        coerced = []
        seen: set[tuple[Fraction, ...]] = set()
        for pt, w in self.atoms:
            if pt.dim != self.n:
                raise DimensionMismatch(
                    f"atom at {pt} has {pt.dim} coordinates, measure is over {self.n}"
                )
            if not pt.in_cube():
                raise FreeLatticeError(f"atom {pt} lies outside the unit cube")
            if pt.coords in seen:
                raise FreeLatticeError(f"duplicate atom at {pt}")
            seen.add(pt.coords)
            coerced.append((pt, Fraction(w)))
        object.__setattr__(self, "atoms", tuple(coerced))


def dual_norm(mu: AtomicMeasure) -> Fraction:
    """max over coordinates k of sum_i |w_i| * |xi_i(k)|, exactly."""
    totals = [_ZERO] * mu.n
    for pt, w in mu.atoms:
        for k in range(mu.n):
            totals[k] += abs(w) * abs(pt[k])
    return max(totals) if totals else _ZERO


@dataclass(frozen=True)
class NormCertificate:
    """A free-norm value with matching primal and dual optimality witnesses.

    The primal measure is feasible for the defining LP and attains ``value``;
    the prices are nonnegative, sum to ``value``, and dominate |f| pointwise,
    which upper-bounds every admissible measure.  Equality of the two sides
    is strong LP duality, realized exactly.
    """

    value: Fraction
    primal: AtomicMeasure
    prices: tuple[Fraction, ...]


class _PricingData:
    """Per-expression data reused across pricing solves: the distinct
    candidate vertices on the sup-norm sphere with their |f| values."""

    def __init__(self, f: LatticeExpr, form_cap: int, hyperplane_cap: int):
        self.n = f.n
        G = to_maxmin(abs(f), form_cap)
        _, polys = _cell_polys(G, hyperplane_cap)
        self.is_zero = True
        pool: dict[tuple[Fraction, ...], Fraction] = {}
        for signs, poly in polys:
            witness = _centroid(poly.verts)
            active = _active_form(G, witness)
            if not active.is_zero():
                self.is_zero = False
            for k in range(1, G.n + 1):
                for s in (1, -1):
                    for v in _slice_plane(poly, k, s):
                        val = active(v)
                        if val < 0:
                            raise AlgorithmDefect("negative value for |f| at a vertex")
                        prev = pool.setdefault(v, val)
                        if prev != val:
                            raise AlgorithmDefect(
                                "inconsistent |f| values for one vertex across cells"
                            )
        # Lexicographic order makes the pricing tie-break deterministic.
        self.points = sorted(pool)
        self.values = [pool[p] for p in self.points]
        self.abs_coords = [tuple(abs(c) for c in p) for p in self.points]

    def price(self, y: Sequence[Fraction]) -> tuple[Fraction, Optional[int]]:
        """Maximize |f(xi)| - sum_k y_k |xi_k| over the sphere; returns the
        optimum and the index of the lexicographically smallest maximizer."""
        best_val: Optional[Fraction] = None
        best_idx: Optional[int] = None
        for idx, (val, aco) in enumerate(zip(self.values, self.abs_coords)):
            score = val - sum((yk * a for yk, a in zip(y, aco)), _ZERO)
            if best_val is None or score > best_val:
                best_val, best_idx = score, idx
        if best_val is None:
            raise AlgorithmDefect("empty pricing pool")
        return best_val, best_idx


def free_norm(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> NormCertificate:
    """Compute ||f||_F exactly, with a self-contained optimality certificate.

    Column generation: starting from an empty atom set, repeatedly solve the
    master LP over the current atoms, then price the current dual y over the
    sphere; a positive pricing optimum admits a new atom, a nonpositive one
    proves y dominates |f| everywhere and the loop stops.  The atom pool is
    finite (cell-facet vertices), so termination is guaranteed.
    """
    data = _PricingData(f, form_cap, hyperplane_cap)
    n = data.n
    if data.is_zero:
        return NormCertificate(
            value=_ZERO,
            primal=AtomicMeasure(n, ()),
            prices=(_ZERO,) * n,
        )

    chosen: list[int] = []
    y: Sequence[Fraction] = (_ZERO,) * n
    value = _ZERO
    weights: list[Fraction] = []
    for _ in range(len(data.points) + 2):
        violation, idx = data.price(y)
        if violation <= 0:
            break
        if idx in chosen:
            raise AlgorithmDefect("pricing returned an atom already in the master")
        chosen.append(idx)
        c = [data.values[i] for i in chosen]
        rows = [[data.abs_coords[i][k] for i in chosen] for k in range(n)]
        sol = solve_lp_max(c, rows, [_ONE] * n)
        value, weights, y = sol.value, list(sol.x), sol.y
    else:
        raise AlgorithmDefect("column generation failed to terminate")

    atoms = tuple(
        (Point(data.points[i]), w) for i, w in zip(chosen, weights) if w != 0
    )
    cert = NormCertificate(
        value=value,
        primal=AtomicMeasure(n, atoms),
        prices=tuple(y),
    )
    if sum(cert.prices, _ZERO) != value:
        raise AlgorithmDefect("dual prices do not sum to the optimal value")
    return cert


def verify_certificate(
    f: LatticeExpr,
    cert: NormCertificate,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> bool:
    """Re-check every certificate invariant from scratch, exactly.

    Primal feasibility and objective, price nonnegativity and total, and
    global dual domination via a fresh pricing solve.  Returns False rather
    than raising when any of them fails.
    """
    try:
        n = f.n
        if cert.primal.n != n or len(cert.prices) != n:
            return False
        for k in range(n):
            load = sum((abs(w) * abs(pt[k]) for pt, w in cert.primal.atoms), _ZERO)
            if load > 1:
                return False
        if any(w < 0 for _, w in cert.primal.atoms):
            return False
        objective = sum(
            (w * abs(eval_expr(f, pt)) for pt, w in cert.primal.atoms), _ZERO
        )
        if objective != cert.value:
            return False
        if any(p < 0 for p in cert.prices):
            return False
        if sum(cert.prices, _ZERO) != cert.value:
            return False
        data = _PricingData(f, form_cap, hyperplane_cap)
        violation, _ = data.price(cert.prices)
        return violation <= 0
    except FreeLatticeError:
        return False


def quotient_norm(f: LatticeExpr, points: Sequence[Point]) -> Fraction:
    """The norm of f's restriction to a finite subset A of the sup-norm
    sphere: the same LP as the free norm, with atoms confined to A."""
    if not points:
        raise FreeLatticeError("the point set must be nonempty")
    for pt in points:
        if pt.dim != f.n:
            raise DimensionMismatch(
                f"point {pt} has {pt.dim} coordinates, expression has {f.n}"
            )
        if pt.sup_abs() != 1:
            raise FreeLatticeError(f"point {pt} is not on the sup-norm unit sphere")
    distinct = list(dict.fromkeys(p.coords for p in points))
    c = [abs(eval_expr(f, Point(p))) for p in distinct]
    rows = [[abs(p[k]) for p in distinct] for k in range(f.n)]
    return solve_lp_max(c, rows, [_ONE] * f.n).value


# --------------------------------------------------------------------------
# Independent brute-force oracle


def free_norm_bruteforce(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> Fraction:
    """The free norm by a one-shot LP over every candidate sphere vertex.

    Candidates are the exact solutions of all n-subsets drawn from the
    arrangement hyperplanes and the 2n cube facet equations that land on the
    sup-norm unit sphere.  Deliberately a different code path from
    :func:`free_norm` so the two can check each other.
    """
    n = f.n
    G = to_maxmin(abs(f), form_cap)
    equations: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for normal in arrangement_hyperplanes(G):
        equations.append((tuple(Fraction(c) for c in normal), _ZERO))
    for k in range(n):
        unit = tuple(_ONE if i == k else _ZERO for i in range(n))
        equations.append((unit, _ONE))
        equations.append((unit, -_ONE))

    candidates: dict[tuple[Fraction, ...], Fraction] = {}
    for combo in itertools.combinations(equations, n):
        solution = _solve_square([list(eq[0]) for eq in combo], [eq[1] for eq in combo])
        if solution is None:
            continue
        if max(abs(c) for c in solution) != 1:
            continue
        key = tuple(solution)
        if key not in candidates:
            candidates[key] = G(solution)
    if not candidates:
        raise AlgorithmDefect("no sphere candidates found")
    pts = sorted(candidates)
    c = [candidates[p] for p in pts]
    rows = [[abs(p[k]) for p in pts] for k in range(n)]
    return solve_lp_max(c, rows, [_ONE] * n).value


def _solve_square(
    mat: list[list[Fraction]], rhs: list[Fraction]
) -> Optional[list[Fraction]]:
    """Unique solution of an n x n rational system, or None if singular."""
    n = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [inv * v for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]
