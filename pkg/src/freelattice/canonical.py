"""Max-min canonical forms and exact polyhedral cell decompositions.

Every expression denotes a piecewise-linear positively homogeneous function,
and every such lattice-linear term can be written as a finite max of finite
mins of rational linear forms.  This module performs that rewrite, then
studies the function through the central hyperplane arrangement spanned by
the pairwise differences of the linear forms in scope together with the n
coordinate hyperplanes.  On each full-dimensional cell of that arrangement
the function agrees with a single "active" linear form, which makes semantic
equality, the exact sup norm over the cube [-1, 1]^n, and the pricing step of
the free-norm solver finite computations over cell vertices.

All geometry is exact: cells are explored by incremental sign-vector search
with polytope clipping over ``Fraction`` coordinates, never by brute force
over all 2^H sign patterns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import AlgorithmDefect, CapExceeded, FreeLatticeError
from .expressions import (
    Abs,
    Generator,
    Join,
    LatticeExpr,
    Meet,
    Neg,
    Point,
    Scale,
    Sum,
    Zero,
)

DEFAULT_FORM_CAP = 4096
DEFAULT_HYPERPLANE_CAP = 24

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearForm:
    """A rational linear functional xi -> sum_k coeffs[k] * xi_k."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise FreeLatticeError("a linear form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __call__(self, xi: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, xi)), _ZERO)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs))

    def scaled(self, t: Fraction) -> "LinearForm":
        return LinearForm(tuple(t * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


def zero_form(n: int) -> LinearForm:
    return LinearForm((_ZERO,) * n)


def unit_form(k: int, n: int) -> LinearForm:
    """The form picking out the k-th coordinate, 1-based."""
    return LinearForm(tuple(_ONE if i == k - 1 else _ZERO for i in range(n)))


@dataclass(frozen=True)
class MaxMinForm:
    """A function written as max over groups of the min over each group.

    Groups and forms are kept sorted, so two structurally equal values denote
    the same function and were produced by the same rewrite.
    """

    n: int
    groups: tuple[tuple[LinearForm, ...], ...]

    def __post_init__(self) -> None:
        if not self.groups or any(not g for g in self.groups):
            raise FreeLatticeError("max-min form needs nonempty groups of forms")

    def __call__(self, xi: Sequence[Fraction]) -> Fraction:
        return max(min(form(xi) for form in group) for group in self.groups)

    def all_forms(self) -> list[LinearForm]:
        """Distinct forms across all groups, in canonical order."""
        seen: dict[LinearForm, None] = {}
        for group in self.groups:
            for form in group:
                seen.setdefault(form, None)
        return sorted(seen, key=lambda f: f.coeffs)

    @property
    def form_count(self) -> int:
        return sum(len(g) for g in self.groups)


# --------------------------------------------------------------------------
# Rewrite to max-min normal form


def to_maxmin(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    lp_prune: bool = False,
) -> MaxMinForm:
    """Rewrite an expression as a max of mins of linear forms, exactly.

    The rewrite is the classical one: joins concatenate group lists, a sum of
    two min-groups distributes to the min over pairwise sums, negation swaps
    max and min and is pushed back down, and |g| becomes g v (-g).  After
    each step, groups whose form set contains another group's form set are
    dropped (their min can never win the max) and duplicates are removed.
    With ``lp_prune`` enabled, forms that are redundant within their group
    (never the unique minimum anywhere) are also eliminated via exact cone
    feasibility tests.

    Raises :class:`CapExceeded` when the form count passes ``form_cap``.
    """
    groups = _groups(f, form_cap)
    if lp_prune:
        groups = [_drop_redundant_forms(g, f.n) for g in groups]
        groups = _prune(groups, f.n, form_cap)
    return MaxMinForm(f.n, tuple(tuple(g) for g in groups))


def _groups(f: LatticeExpr, cap: int) -> list[list[LinearForm]]:
    n = f.n
    if isinstance(f, Generator):
        return [[unit_form(f.index, n)]]
    if isinstance(f, Zero):
        return [[zero_form(n)]]
    if isinstance(f, Scale):
        if f.coeff == 0:
            return [[zero_form(n)]]
        inner = _groups(f.child, cap)
        scaled = [[form.scaled(abs(f.coeff)) for form in g] for g in inner]
        if f.coeff < 0:
            return _neg_groups(scaled, n, cap)
        return _prune(scaled, n, cap)
    if isinstance(f, Neg):
        return _neg_groups(_groups(f.child, cap), n, cap)
    if isinstance(f, Abs):
        inner = _groups(f.child, cap)
        return _prune(inner + _neg_groups(inner, n, cap), n, cap)
    if isinstance(f, Sum):
        left = _groups(f.left, cap)
        right = _groups(f.right, cap)
        combined = [
            [a + b for a in g1 for b in g2] for g1 in left for g2 in right
        ]
        return _prune(combined, n, cap)
    if isinstance(f, Join):
        return _prune(_groups(f.left, cap) + _groups(f.right, cap), n, cap)
    if isinstance(f, Meet):
        left = _groups(f.left, cap)
        right = _groups(f.right, cap)
        combined = [g1 + g2 for g1 in left for g2 in right]
        return _prune(combined, n, cap)
    raise FreeLatticeError(f"unknown node type {type(f).__name__}")


def _neg_groups(groups: list[list[LinearForm]], n: int, cap: int) -> list[list[LinearForm]]:
    # -(max_i min_j a_ij) = min_i max_j (-a_ij); distributing the outer min
    # over the inner maxes picks one form per group, which is exponential in
    # the group count and is why pruning runs after every step.
    count = 1
    for g in groups:
        count *= len(g)
        if count > cap:
            raise CapExceeded(
                f"negation would create {count}+ groups, over the cap of {cap}"
            )
    out = [[-choice for choice in pick] for pick in itertools.product(*groups)]
    return _prune(out, n, cap)


def _prune(groups: list[list[LinearForm]], n: int, cap: int) -> list[list[LinearForm]]:
    # Deduplicate forms inside each group, then drop any group whose form set
    # is a superset of another group's: its min is pointwise dominated, so it
    # never contributes to the max.
    cleaned: list[tuple[list[LinearForm], frozenset[LinearForm]]] = []
    for g in groups:
        forms = sorted(dict.fromkeys(g), key=lambda form: form.coeffs)
        cleaned.append((forms, frozenset(forms)))
    kept: list[tuple[list[LinearForm], frozenset[LinearForm]]] = []
    for forms, fset in cleaned:
        dominated = False
        for other, oset in cleaned:
            if oset < fset:
                dominated = True
                break
        if not dominated:
            kept.append((forms, fset))
    seen: set[frozenset[LinearForm]] = set()
    result: list[list[LinearForm]] = []
    for forms, fset in kept:
        if fset not in seen:
            seen.add(fset)
            result.append(forms)
    result.sort(key=lambda forms: [form.coeffs for form in forms])
    total = sum(len(g) for g in result)
    if total > cap:
        raise CapExceeded(f"{total} linear forms, over the cap of {cap}")
    return result


def _drop_redundant_forms(group: list[LinearForm], n: int) -> list[LinearForm]:
    """Remove forms that are nowhere the strict minimum of their group.

    A form can be dropped when no point makes every other form strictly
    larger; the strict cone feasibility test is exact, so the group's min is
    unchanged as a function.
    """
    forms = list(group)
    changed = True
    while changed and len(forms) > 1:
        changed = False
        for form in list(forms):
            others = [o for o in forms if o is not form]
            diffs = [o + (-form) for o in others]
            if not _strict_cone_feasible(diffs, n):
                forms.remove(form)
                changed = True
                break
    return forms


def _strict_cone_feasible(forms: list[LinearForm], n: int) -> bool:
    """Is there a point with form(xi) > 0 for every listed form?

    By homogeneity it is enough to search the cube.  Clip the cube by the
    closed halfspaces; the open system is feasible iff every form is strictly
    positive at the centroid of the surviving vertices.
    """
    pool = _VertexPool([form.coeffs for form in forms])
    poly = _cube(n, pool)
    for idx in range(len(forms)):
        poly, _ = _split(poly, pool, idx)
        if poly is None:
            return False
    centroid = _centroid(poly.verts)
    return all(form(centroid) > 0 for form in forms)


# --------------------------------------------------------------------------
# Exact polytope clipping (vertex + halfspace representation)


@dataclass
class _Poly:
    n: int
    verts: list[tuple[Fraction, ...]]
    # halfspaces as (normal, rhs) meaning normal . x <= rhs
    halfspaces: list[tuple[tuple[Fraction, ...], Fraction]]
    # per-vertex bitmask over halfspaces: bit j set iff halfspace j is tight
    tight: list[int]
    # vertex ids in the pool of the enclosing enumeration, parallel to verts
    vids: list[int]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    acc = _ZERO
    for x, y in zip(a, b):
        if x:
            acc += x * y
    return acc


class _VertexPool:
    """Interning table for the vertices met during one cell enumeration,
    with a lazy exact cache of hyperplane values.

    Cells of a central arrangement share most of their skeleton, so keying
    evaluations by (plane, vertex id) collapses the repeated rational dot
    products into single computations.
    """

    def __init__(self, planes: list[tuple[int, ...]]):
        self.planes = planes
        self.ids: dict[tuple[Fraction, ...], int] = {}
        self.coords: list[tuple[Fraction, ...]] = []
        self.vals: list[dict[int, Fraction]] = [dict() for _ in planes]
        self.signs: list[dict[int, int]] = [dict() for _ in planes]

    def intern(self, v: tuple[Fraction, ...]) -> int:
        vid = self.ids.get(v)
        if vid is None:
            vid = len(self.coords)
            self.ids[v] = vid
            self.coords.append(v)
        return vid

    def value(self, plane_idx: int, vid: int) -> Fraction:
        memo = self.vals[plane_idx]
        val = memo.get(vid)
        if val is None:
            val = _dot(self.planes[plane_idx], self.coords[vid])
            memo[vid] = val
            self.signs[plane_idx][vid] = -1 if val < 0 else (0 if val == 0 else 1)
        return val

    def sign(self, plane_idx: int, vid: int) -> int:
        s = self.signs[plane_idx].get(vid)
        if s is None:
            self.value(plane_idx, vid)
            s = self.signs[plane_idx][vid]
        return s


def _cube(n: int, pool: _VertexPool) -> _Poly:
    verts = [tuple(Fraction(s) for s in signs) for signs in itertools.product((-1, 1), repeat=n)]
    halfspaces: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for k in range(n):
        for s in (1, -1):
            normal = tuple(Fraction(s) if i == k else _ZERO for i in range(n))
            halfspaces.append((normal, _ONE))
    tight = [
        sum(1 << (2 * k + (0 if v[k] > 0 else 1)) for k in range(n)) for v in verts
    ]
    vids = [pool.intern(v) for v in verts]
    return _Poly(n, verts, halfspaces, tight, vids)


def _tight_mask(poly: _Poly, pool: _VertexPool, vid: int) -> int:
    """The tight-halfspace mask of a pool vertex against a poly whose
    halfspace list is 2n cube facets then arrangement planes in order."""
    v = pool.coords[vid]
    n = poly.n
    mask = 0
    for k in range(n):
        if v[k] == 1:
            mask |= 1 << (2 * k)
        elif v[k] == -1:
            mask |= 1 << (2 * k + 1)
    for j in range(2 * n, len(poly.halfspaces)):
        if pool.value(j - 2 * n, vid) == 0:
            mask |= 1 << j
    return mask


def _centroid(verts: Sequence[tuple[Fraction, ...]]) -> tuple[Fraction, ...]:
    n = len(verts[0])
    count = Fraction(len(verts))
    return tuple(sum((v[i] for v in verts), _ZERO) / count for i in range(n))


def _matrix_rank(rows: list[tuple[Fraction, ...]], n: int) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        pivot_row = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [inv * v for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _is_edge(poly: _Poly, iu: int, iw: int) -> bool:
    # Vertices are adjacent iff their common tight constraints have normal
    # rank >= n - 1; valid because the polytope is full-dimensional.
    if poly.n == 1:
        return True
    common = poly.tight[iu] & poly.tight[iw]
    rows = []
    j = 0
    while common:
        if common & 1:
            rows.append(poly.halfspaces[j][0])
        common >>= 1
        j += 1
    if len(rows) < poly.n - 1:
        return False
    return _matrix_rank(rows, poly.n) >= poly.n - 1


def _side(
    poly: _Poly,
    pool: _VertexPool,
    plane_idx: int,
    side: int,
    signs: list[int],
    cut_ids: list[int],
) -> Optional[_Poly]:
    """The intersection with side * plane >= 0, from precomputed value signs
    and shared cut vertices; None when empty."""
    newbit = 1 << len(poly.halfspaces)
    normal = pool.planes[plane_idx]
    oriented = tuple(Fraction(-side * c) for c in normal)
    halfspaces = poly.halfspaces + [(oriented, _ZERO)]
    keep = [i for i, s in enumerate(signs) if side * s >= 0]
    if not keep and not cut_ids:
        return None
    verts = [poly.verts[i] for i in keep]
    tight = [poly.tight[i] | (newbit if signs[i] == 0 else 0) for i in keep]
    vids = [poly.vids[i] for i in keep]
    out = _Poly(poly.n, verts, halfspaces, tight, vids)
    for vid in cut_ids:
        out.verts.append(pool.coords[vid])
        # Tightness can appear coincidentally at a cut, so its mask is
        # recomputed from scratch (exact, and cached in the pool).
        out.tight.append(_tight_mask(out, pool, vid))
        out.vids.append(vid)
    return out


def _split(
    poly: _Poly, pool: _VertexPool, plane_idx: int
) -> tuple[Optional[_Poly], Optional[_Poly]]:
    """Both closed sides of the poly against an arrangement plane."""
    signs = [pool.sign(plane_idx, vid) for vid in poly.vids]
    any_pos = 1 in signs
    any_neg = -1 in signs
    cut_ids: list[int] = []
    if any_pos and any_neg:
        pos = [i for i, s in enumerate(signs) if s > 0]
        neg = [i for i, s in enumerate(signs) if s < 0]
        seen: set[int] = set()
        for iu in pos:
            for iw in neg:
                if _is_edge(poly, iu, iw):
                    u, w = poly.verts[iu], poly.verts[iw]
                    val_u = pool.value(plane_idx, poly.vids[iu])
                    val_w = pool.value(plane_idx, poly.vids[iw])
                    t = val_u / (val_u - val_w)
                    cut = tuple(a + t * (b - a) for a, b in zip(u, w))
                    vid = pool.intern(cut)
                    if vid not in seen:
                        seen.add(vid)
                        cut_ids.append(vid)
    plus = _side(poly, pool, plane_idx, 1, signs, cut_ids) if any_pos else None
    minus = _side(poly, pool, plane_idx, -1, signs, cut_ids) if any_neg else None
    return plus, minus


def _slice_plane(
    poly: _Poly, k: int, s: int
) -> list[tuple[Fraction, ...]]:
    """Vertices of the intersection with the cube facet plane xi_k = s."""
    target = Fraction(s)
    vals = [v[k - 1] - target for v in poly.verts]
    on_plane = [v for v, val in zip(poly.verts, vals) if val == 0]
    crossings: list[tuple[Fraction, ...]] = []
    pos = [i for i, val in enumerate(vals) if val > 0]
    neg = [i for i, val in enumerate(vals) if val < 0]
    for iu in pos:
        for iw in neg:
            if _is_edge(poly, iu, iw):
                u, w = poly.verts[iu], poly.verts[iw]
                t = vals[iu] / (vals[iu] - vals[iw])
                crossings.append(tuple(a + t * (b - a) for a, b in zip(u, w)))
    return sorted(dict.fromkeys(on_plane + crossings))


# --------------------------------------------------------------------------
# Hyperplane arrangement and cell enumeration


def _primitive_normal(coeffs: Sequence[Fraction]) -> Optional[tuple[int, ...]]:
    """Canonical integer normal: cleared denominators, gcd one, first nonzero
    coefficient positive.  None for the zero vector."""
    denoms = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * denoms) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return None
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def arrangement_hyperplanes(F: MaxMinForm) -> list[tuple[int, ...]]:
    """The cell-defining hyperplanes: pairwise differences of all forms in
    scope plus the n coordinate hyperplanes, as canonical integer normals."""
    forms = F.all_forms()
    normals: set[tuple[int, ...]] = set()
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            diff = forms[i] + (-forms[j])
            normal = _primitive_normal(diff.coeffs)
            if normal is not None:
                normals.add(normal)
    for k in range(F.n):
        normals.add(tuple(1 if i == k else 0 for i in range(F.n)))
    return sorted(normals)


@dataclass(frozen=True)
class Cell:
    """A full-dimensional cell of the arrangement, intersected with the cube.

    ``signs`` follows the order of :func:`arrangement_hyperplanes`; the
    witness satisfies every sign strictly; on the whole cell the function
    equals ``active``.  ``vertices`` lists the cell's polytope vertices
    inside the cube, or the vertices of cell-meets-facet when the
    enumeration was restricted to one cube facet.
    """

    signs: tuple[int, ...]
    witness: Point
    active: LinearForm
    vertices: tuple[Point, ...]


def _cell_polys(
    F: MaxMinForm, hyperplane_cap: int
) -> tuple[list[tuple[int, ...]], list[tuple[tuple[int, ...], _Poly]]]:
    hyperplanes = arrangement_hyperplanes(F)
    if len(hyperplanes) > hyperplane_cap:
        raise CapExceeded(
            f"{len(hyperplanes)} hyperplanes, over the cap of {hyperplane_cap}"
        )
    n = F.n
    pool = _VertexPool(hyperplanes)
    found: list[tuple[tuple[int, ...], _Poly]] = []

    def full_dimensional(poly: _Poly, chosen: tuple[int, ...]) -> bool:
        # The closed piece is full-dimensional iff no chosen hyperplane
        # supports all of it, i.e. each has a strict vertex; signs come
        # from the pool cache.
        return all(
            any(pool.sign(i, vid) == s for vid in poly.vids)
            for i, s in enumerate(chosen)
        )

    def descend(idx: int, poly: _Poly, signs: tuple[int, ...]) -> None:
        if idx == len(hyperplanes):
            found.append((signs, poly))
            return
        plus, minus = _split(poly, pool, idx)
        for sign, clipped in ((1, plus), (-1, minus)):
            if clipped is None:
                continue
            chosen = signs + (sign,)
            if full_dimensional(clipped, chosen):
                descend(idx + 1, clipped, chosen)

    descend(0, _cube(n, pool), ())
    found.sort(key=lambda item: item[0])
    return hyperplanes, found


def _active_form(F: MaxMinForm, witness: Sequence[Fraction]) -> LinearForm:
    best_form: Optional[LinearForm] = None
    best_val: Optional[Fraction] = None
    for group in F.groups:
        g_form = min(group, key=lambda form: (form(witness), form.coeffs))
        g_val = g_form(witness)
        if best_val is None or g_val > best_val or (
            g_val == best_val and g_form.coeffs < best_form.coeffs
        ):
            best_form, best_val = g_form, g_val
    assert best_form is not None
    return best_form


def enumerate_cells(
    F: MaxMinForm,
    restrict: Optional[tuple[int, int]] = None,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> list[Cell]:
    """Enumerate the full-dimensional cells of the arrangement inside the cube.

    ``restrict`` optionally names a cube facet ``(k, s)`` with s in {+1, -1};
    then each returned cell carries the exact vertices of its intersection
    with that facet, and cells missing the facet are omitted.  The cell list
    is deterministic and canonically ordered by sign vector.
    """
    if restrict is not None:
        k, s = restrict
        if not 1 <= k <= F.n or s not in (1, -1):
            raise FreeLatticeError(f"facet spec {restrict!r} is not (k in 1..n, +-1)")
    _, polys = _cell_polys(F, hyperplane_cap)
    cells: list[Cell] = []
    for signs, poly in polys:
        witness = _centroid(poly.verts)
        active = _active_form(F, witness)
        if restrict is None:
            verts = sorted(poly.verts)
        else:
            verts = _slice_plane(poly, restrict[0], restrict[1])
            if not verts:
                continue
        cells.append(
            Cell(
                signs=signs,
                witness=Point(witness),
                active=active,
                vertices=tuple(Point(v) for v in verts),
            )
        )
    return cells


# --------------------------------------------------------------------------
# Semantic zero test, equality, sup norm


def semantic_zero_witness(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> Optional[Point]:
    """None iff f is the zero function on all of R^n; otherwise a rational
    point where f does not vanish.

    Decided on the full cone decomposition: f is zero iff the active form is
    the zero form on every cell.
    """
    F = to_maxmin(f, form_cap)
    _, polys = _cell_polys(F, hyperplane_cap)
    for signs, poly in polys:
        witness = _centroid(poly.verts)
        active = _active_form(F, witness)
        if not active.is_zero():
            for v in poly.verts:
                if active(v) != 0:
                    return Point(v)
            raise AlgorithmDefect("nonzero active form vanished on its whole cell")
    return None


def is_semantically_zero(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> bool:
    return semantic_zero_witness(f, form_cap, hyperplane_cap) is None


def expr_equal(f: LatticeExpr, g: LatticeExpr) -> bool:
    """Do f and g denote the same function?  Exact, via the zero test."""
    return is_semantically_zero(f - g)


def sup_norm_witness(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> tuple[Fraction, Point]:
    """The exact max of |f| over the cube, with an attaining point.

    By homogeneity the max lives on the cube's boundary, so it is found on
    the 2n facets; on each cell-facet polytope f is one linear form, whose
    extremes sit at vertices.
    """
    F = to_maxmin(f, form_cap)
    _, polys = _cell_polys(F, hyperplane_cap)
    best_val: Optional[Fraction] = None
    best_pt: Optional[tuple[Fraction, ...]] = None
    for k in range(1, F.n + 1):
        for s in (1, -1):
            for signs, poly in polys:
                verts = _slice_plane(poly, k, s)
                if not verts:
                    continue
                witness = _centroid(poly.verts)
                active = _active_form(F, witness)
                for v in verts:
                    val = abs(active(v))
                    if best_val is None or val > best_val or (
                        val == best_val and v < best_pt
                    ):
                        best_val, best_pt = val, v
    if best_val is None:
        raise AlgorithmDefect("no facet vertices found; empty decomposition")
    return best_val, Point(best_pt)


def sup_norm(
    f: LatticeExpr,
    form_cap: int = DEFAULT_FORM_CAP,
    hyperplane_cap: int = DEFAULT_HYPERPLANE_CAP,
) -> Fraction:
    return sup_norm_witness(f, form_cap, hyperplane_cap)[0]
