"""Shared test machinery: random instance generators, independent oracles,
and a synchronous ASGI transport for driving the service in-process.

Nothing here reuses the algorithm under test for its own answer: the free
norm oracle is exhaustive subset enumeration, the symmetric norm oracle is
plain midpoint quadrature, and expression values are checked by direct
evaluation.
"""

from __future__ import annotations

import asyncio
import itertools
import random
from fractions import Fraction

import httpx
import numpy as np

from freelattice.canonical import arrangement_hyperplanes, enumerate_cells, to_maxmin
from freelattice.errors import CapExceeded
from freelattice.expressions import LatticeExpr, Point, delta, eval_expr
from freelattice.fdlattice import (
    L1,
    LINF,
    FdBanachLattice,
    NormSpec,
    QuotientContext,
    Vector,
    lp_spec,
    quotient,
    weighted_l1,
    weighted_linf,
)
from freelattice.simplex import solve_lp_max
from freelattice.symnorm import CircleMeasure

_ONE = Fraction(1)


# --------------------------------------------------------------------------
# Random expressions


def rand_coeff(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-6, 6)
    return Fraction(num, rng.randint(1, 4))


def random_expr(rng: random.Random, n: int, depth: int) -> LatticeExpr:
    """A random lattice-linear expression of the given depth bound."""
    if depth == 0 or rng.random() < 0.25:
        g = delta(rng.randint(1, n), n)
        return g if rng.random() < 0.7 else rand_coeff(rng) * g
    r = rng.random()
    if r < 0.22:
        return random_expr(rng, n, depth - 1) + random_expr(rng, n, depth - 1)
    if r < 0.44:
        return random_expr(rng, n, depth - 1).join(random_expr(rng, n, depth - 1))
    if r < 0.66:
        return random_expr(rng, n, depth - 1).meet(random_expr(rng, n, depth - 1))
    if r < 0.78:
        return rand_coeff(rng) * random_expr(rng, n, depth - 1)
    if r < 0.89:
        return -random_expr(rng, n, depth - 1)
    return abs(random_expr(rng, n, depth - 1))


def expr_fits(f: LatticeExpr, max_forms: int, max_planes: int) -> bool:
    # The norm machinery rewrites the modulus, so |f| must stay in budget too.
    try:
        F = to_maxmin(f, form_cap=max_forms)
        G = to_maxmin(abs(f))
    except CapExceeded:
        return False
    if F.form_count > max_forms or len(arrangement_hyperplanes(F)) > max_planes:
        return False
    return len(arrangement_hyperplanes(G)) <= max_planes


def random_expr_checked(
    rng: random.Random,
    n: int,
    depth: int,
    max_forms: int = 96,
    max_planes: int = 20,
) -> LatticeExpr:
    """Resamples until the max-min rewrite and its arrangement stay small
    enough for the exact geometry to be quick; the draw stays random within
    that budget."""
    while True:
        f = random_expr(rng, n, depth)
        if expr_fits(f, max_forms, max_planes):
            return f


def semantic_zero_expr(rng: random.Random, n: int, depth: int = 2) -> LatticeExpr:
    """A structurally scrambled expression that denotes the zero function.

    Built from vector lattice identities, so the zero-ness is nontrivial to
    see syntactically but certain semantically.
    """
    while True:
        h = random_expr_checked(rng, n, depth, max_forms=16, max_planes=10)
        g = random_expr_checked(rng, n, depth, max_forms=16, max_planes=10)
        pattern = rng.randrange(5)
        if pattern == 0:
            f = (h + g) - (g + h)
        elif pattern == 1:
            # x + y = x v y + x /\ y
            f = (h.meet(g) + h.join(g)) - (h + g)
        elif pattern == 2:
            f = abs(h) - h.join(-h)
        elif pattern == 3:
            c = rand_coeff(rng)
            f = c * (h + g) - (c * h + c * g)
        else:
            k = random_expr_checked(rng, n, 1, max_forms=8, max_planes=6)
            f = ((h + g) + k) - (h + (g + k))
        if expr_fits(f, 96, 20):
            return f


def random_cube_point(rng: random.Random, n: int, den: int = 8) -> Point:
    return Point(tuple(Fraction(rng.randint(-den, den), den) for _ in range(n)))


def random_face_point(
    rng: random.Random, n: int, k: int, s: int, den: int = 8
) -> Point:
    coords = [Fraction(rng.randint(-den, den), den) for _ in range(n)]
    coords[k - 1] = Fraction(s)
    return Point(tuple(coords))


# --------------------------------------------------------------------------
# Exhaustive free-norm oracle

# An optimal admissible measure needs at most n atoms (the LP has n rows),
# and optimal atoms can be taken among the vertices of the cell-facet
# decomposition.  Enumerating all small subsets is slow but independent of
# the column-generation path.


def candidate_points(f: LatticeExpr) -> list[Point]:
    F = to_maxmin(f)
    seen: set[tuple[Fraction, ...]] = set()
    for k in range(1, F.n + 1):
        for s in (1, -1):
            for cell in enumerate_cells(F, restrict=(k, s)):
                for v in cell.vertices:
                    seen.add(tuple(v))
    return [Point(t) for t in sorted(seen)]


def brute_force_free_norm(f: LatticeExpr) -> Fraction:
    pts = candidate_points(f)
    n = f.n
    vals = [abs(eval_expr(f, p)) for p in pts]
    best = Fraction(0)
    for size in range(1, min(n, len(pts)) + 1):
        for subset in itertools.combinations(range(len(pts)), size):
            c = [vals[i] for i in subset]
            rows = [[abs(pts[i][k]) for i in subset] for k in range(n)]
            sol = solve_lp_max(c, rows, [_ONE] * n)
            if sol.value > best:
                best = sol.value
    return best


# --------------------------------------------------------------------------
# Random finite-dimensional lattices and quotients


_LP_CHOICES = (Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3))


def random_spec(rng: random.Random, m: int, kinds=("l1", "linf", "lp", "wl1", "wlinf")) -> NormSpec:
    kind = rng.choice(kinds)
    if kind == "l1":
        return L1
    if kind == "linf":
        return LINF
    if kind == "lp":
        return lp_spec(rng.choice(_LP_CHOICES))
    weights = tuple(Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(m))
    return weighted_l1(weights) if kind == "wl1" else weighted_linf(weights)


def random_quotient(
    rng: random.Random, m: int, kinds=("l1", "linf", "lp", "wl1", "wlinf")
) -> QuotientContext:
    space = FdBanachLattice(m, random_spec(rng, m, kinds))
    size = rng.randint(0, m - 1)
    coords = rng.sample(range(1, m + 1), size)
    return quotient(space, coords)


def random_disjoint_targets(
    rng: random.Random, ctx: QuotientContext, count: int
) -> list[Vector]:
    """Pairwise disjoint nonnegative quotient vectors, by giving each target
    its own coordinate group; some targets may come out zero."""
    d = ctx.space.dim
    owner = {i: rng.randrange(count + 1) for i in range(d)}  # count = unused
    targets = []
    for t in range(count):
        entries = [
            Fraction(rng.randint(1, 9), rng.randint(1, 3)) if owner[i] == t else Fraction(0)
            for i in range(d)
        ]
        targets.append(Vector(tuple(entries)))
    return targets


def random_disjoint_families(
    rng: random.Random, ctx: QuotientContext, count: int, max_members: int = 3
) -> list[list[Vector]]:
    """Families supported on per-family coordinate groups, so distinct
    families are elementwise disjoint; members within a family overlap."""
    d = ctx.space.dim
    owner = {i: rng.randrange(count + 1) for i in range(d)}
    families = []
    for t in range(count):
        mine = [i for i in range(d) if owner[i] == t]
        members = []
        for _ in range(rng.randint(1, max_members)):
            entries = [Fraction(0)] * d
            for i in mine:
                if rng.random() < 0.8:
                    entries[i] = Fraction(rng.randint(0, 9), rng.randint(1, 3))
            members.append(Vector(tuple(entries)))
        families.append(members)
    return families


# --------------------------------------------------------------------------
# Quadrature oracle for the circle-model symmetric norm


def midpoint_symnorm(mu: CircleMeasure, samples: int = 400_000) -> float:
    """Plain midpoint-rule average of max(|sin| moment, |cos| moment); no
    knowledge of breakpoints or closed forms."""
    t = (np.arange(samples) + 0.5) * (2.0 * np.pi / samples)
    sin_m = np.zeros_like(t)
    cos_m = np.zeros_like(t)
    for angle, weight in mu.atoms:
        sin_m += weight * np.abs(np.sin(t - angle))
        cos_m += weight * np.abs(np.cos(t - angle))
    return float(np.maximum(sin_m, cos_m).mean())


# --------------------------------------------------------------------------
# In-process transport for the HTTP service


class SyncASGI(httpx.BaseTransport):
    """Bridges httpx's synchronous client onto the ASGI app, so CLI remote
    mode is testable without sockets."""

    def __init__(self, app) -> None:
        self._inner = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def call() -> httpx.Response:
            response = await self._inner.handle_async_request(request)
            body = b"".join([part async for part in response.stream])
            await response.aclose()
            return httpx.Response(
                status_code=response.status_code,
                headers=response.headers,
                content=body,
                request=request,
            )

        return asyncio.run(call())
