"""Constructive lifting of lattice homomorphisms through quotients.

Three algorithms on coordinate lattices.  lift_disjoint turns arbitrary
nonnegative preimages of a finite disjoint sequence into disjoint ones by an
induction that subtracts meets against a lifted tail.  lift_disjoint_families
extends this to finite families that are disjoint as families, by lifting one
scaled aggregate per family and capping member preimages inside its band.
projective_lift lifts a lattice homomorphism T into a quotient to a
homomorphism S into the ambient space with Q composed with S equal to T
exactly and ||S|| <= ||T|| + eps, by capping disjoint basis lifts with
preimages taken over an eps-net of the positive unit sphere of the domain.

Preimage selection is delegated to an oracle so the algorithms can be
exercised against hostile choices: the canonical oracle zero-pads, the
adversarial oracle adds seeded nonnegative noise supported on the ideal
coordinates.  All vector arithmetic is rational, so disjointness and
composition postconditions are checked exactly.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Protocol, Sequence

import mpmath

from .errors import (
    AlgorithmDefect,
    CapExceeded,
    DisjointnessError,
    FreeLatticeError,
)
from .fdlattice import (
    FdBanachLattice,
    LatticeHom,
    NormSpec,
    QuotientContext,
    Vector,
    apply_hom,
    compose_hom,
    hom_norm,
    norm_vec,
    unit_vector,
    zero_vector,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_NET_CAP = 200_000


class PreimageOracle(Protocol):
    """Supplies nonnegative preimages under a quotient map.

    The contract: the returned x satisfies Q x = y exactly, x >= 0 whenever
    y >= 0, and x <= cap when a cap is given.  slack_limit, when given,
    bounds the overshoot ||x|| <= ||y|| + slack_limit.
    """

    def preimage(
        self,
        ctx: QuotientContext,
        y: Vector,
        cap: Optional[Vector] = None,
        slack_limit: Optional[Fraction] = None,
    ) -> Vector: ...


class CanonicalOracle:
    """Zero-pads the quotient vector back into the ambient space; the
    minimal-norm positive preimage for every supported norm."""

    def preimage(
        self,
        ctx: QuotientContext,
        y: Vector,
        cap: Optional[Vector] = None,
        slack_limit: Optional[Fraction] = None,
    ) -> Vector:
        x = apply_hom(ctx.section, y)
        if cap is not None:
            x = x.meet(cap)
        return x


@dataclass
class AdversarialOracle:
    """Zero-pads, then adds seeded nonnegative noise on the ideal
    coordinates.  The noise is scaled so the preimage norm exceeds the
    target norm by at most `slack` (or the per-call slack_limit, whichever
    is smaller); a weighted-l1 bound on the noise dominates every supported
    norm, keeping the scaling rational."""

    seed: int
    slack: Fraction = Fraction(1)
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.slack = Fraction(self.slack)
        if self.slack < 0:
            raise FreeLatticeError("oracle slack must be nonnegative")
        self._rng = random.Random(self.seed)

    def preimage(
        self,
        ctx: QuotientContext,
        y: Vector,
        cap: Optional[Vector] = None,
        slack_limit: Optional[Fraction] = None,
    ) -> Vector:
        x = apply_hom(ctx.section, y)
        budget = self.slack
        if slack_limit is not None:
            budget = min(budget, Fraction(slack_limit))
        ideal = sorted(ctx.ideal.coords)
        if ideal and budget > 0:
            amps = {c: Fraction(self._rng.randint(0, 8), 8) for c in ideal}
            mass = _dominating_mass(amps, ctx.domain.spec)
            if mass > 0:
                scale = budget / mass
                entries = list(x.entries)
                for c in ideal:
                    entries[c - 1] += scale * amps[c]
                x = Vector(tuple(entries))
        if cap is not None:
            x = x.meet(cap)
        return x


def _dominating_mass(amps: dict[int, Fraction], spec: NormSpec) -> Fraction:
    """A rational upper bound for the norm of the noise vector with the
    given per-coordinate amplitudes: its weighted-l1 mass dominates l1,
    l-infinity, and lp alike."""
    if spec.weights is not None:
        return sum((spec.weights[c - 1] * a for c, a in amps.items()), _ZERO)
    return sum(amps.values(), _ZERO)


def _checked_preimage(
    oracle: PreimageOracle,
    ctx: QuotientContext,
    y: Vector,
    cap: Optional[Vector] = None,
    slack_limit: Optional[Fraction] = None,
) -> Vector:
    """Runs the oracle and verifies its contract; oracles are caller
    supplied, so their output is never trusted."""
    x = oracle.preimage(ctx, y, cap=cap, slack_limit=slack_limit)
    if apply_hom(ctx.qmap, x) != y:
        raise FreeLatticeError("oracle preimage does not map to the target")
    if y.is_nonneg() and not x.is_nonneg():
        raise FreeLatticeError("oracle preimage of a positive vector is not positive")
    if cap is not None and not x.le(cap):
        raise FreeLatticeError("oracle preimage exceeds its cap")
    return x


# --------------------------------------------------------------------------
# Disjoint lifting of a finite sequence


def _check_disjoint_targets(ctx: QuotientContext, ys: Sequence[Vector]) -> None:
    for i, y in enumerate(ys):
        if y.dim != ctx.space.dim:
            raise FreeLatticeError(
                f"target {i + 1} has dimension {y.dim}, quotient has {ctx.space.dim}"
            )
        if not y.is_nonneg():
            raise FreeLatticeError("lift targets must be nonnegative")
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            if not ys[i].disjoint(ys[j]):
                raise DisjointnessError(
                    f"targets {i + 1} and {j + 1} are not disjoint"
                )


def lift_disjoint(
    ctx: QuotientContext,
    ys: Sequence[Vector],
    oracle: Optional[PreimageOracle] = None,
) -> list[Vector]:
    """Lifts pairwise disjoint nonnegative quotient vectors to pairwise
    disjoint nonnegative preimages, whatever preimages the oracle picks."""
    xs, _ = lift_disjoint_traced(ctx, ys, oracle)
    return xs


def lift_disjoint_traced(
    ctx: QuotientContext,
    ys: Sequence[Vector],
    oracle: Optional[PreimageOracle] = None,
) -> tuple[list[Vector], list[dict]]:
    """As lift_disjoint, also returning one audit record per induction step
    with the raw preimages, the subtracted meet, and the running cap.

    The induction maintains u with Q u = (sum of the remaining targets) and
    u disjoint from every finished lift: at each step the oracle proposes a
    preimage of the current target and one of the remaining tail, both under
    the cap u, and subtracting their meet makes them disjoint without
    disturbing their images (the target and the tail are disjoint below).
    """
    oracle = oracle or CanonicalOracle()
    ys = list(ys)
    _check_disjoint_targets(ctx, ys)
    n = len(ys)
    xs: list[Vector] = []
    steps: list[dict] = []
    u: Optional[Vector] = None  # cap from the previous step; None initially
    for k in range(n):
        tail = zero_vector(ctx.space.dim)
        for y in ys[k + 1 :]:
            tail = tail + y
        xt = _checked_preimage(oracle, ctx, ys[k], cap=u)
        ut = _checked_preimage(oracle, ctx, tail, cap=u)
        meet = xt.meet(ut)
        x = xt - meet
        u_next = ut - meet
        # Q(meet) = y_k /\ tail = 0 by disjointness, so images are intact.
        if apply_hom(ctx.qmap, x) != ys[k]:
            raise AlgorithmDefect("meet subtraction disturbed a lift image")
        steps.append(
            {
                "step": k + 1,
                "target": ys[k],
                "tail": tail,
                "xtilde": xt,
                "utilde": ut,
                "meet": meet,
                "x": x,
                "u": u_next,
            }
        )
        xs.append(x)
        u = u_next
    for i in range(n):
        if not xs[i].is_nonneg():
            raise AlgorithmDefect("disjoint lift produced a negative vector")
        for j in range(i + 1, n):
            if not xs[i].disjoint(xs[j]):
                raise AlgorithmDefect("disjoint lift outputs are not disjoint")
    return xs, steps


# --------------------------------------------------------------------------
# Disjoint lifting of families


def _as_family_list(families: Sequence[Iterable[Vector]]) -> list[list[Vector]]:
    out: list[list[Vector]] = []
    for fam in families:
        if isinstance(fam, (set, frozenset)):
            out.append(sorted(fam, key=lambda v: v.entries))
        else:
            out.append(list(fam))
    return out


def _rational_norm_bound(y: Vector, spec: NormSpec) -> Fraction:
    """The norm for exact specs; the l1 mass otherwise.  Any positive
    rational works here: the scale cancels exactly in the band caps, it only
    balances the magnitudes of the aggregates."""
    if spec.is_exact:
        return norm_vec(y, spec)
    return sum((abs(a) for a in y), _ZERO)


def lift_disjoint_families(
    ctx: QuotientContext,
    families: Sequence[Iterable[Vector]],
    oracle: Optional[PreimageOracle] = None,
) -> list[list[Vector]]:
    """Lifts finite families of nonnegative quotient vectors, disjoint as
    families, to families disjoint as families, preserving every image."""
    out, _ = lift_disjoint_families_traced(ctx, families, oracle)
    return out


def lift_disjoint_families_traced(
    ctx: QuotientContext,
    families: Sequence[Iterable[Vector]],
    oracle: Optional[PreimageOracle] = None,
) -> tuple[list[list[Vector]], dict]:
    """As lift_disjoint_families, also returning the aggregates, their
    disjoint lifts, and the per-member band caps.

    One scaled aggregate per family is lifted disjointly; each member's
    preimage is then capped inside the band of its family's lift.  The cap
    C * u dominates the member exactly because the member enters the
    aggregate with coefficient 1/C, so images survive the meet.
    """
    oracle = oracle or CanonicalOracle()
    fams = _as_family_list(families)
    for fi, fam in enumerate(fams):
        for y in fam:
            if y.dim != ctx.space.dim:
                raise FreeLatticeError(
                    f"family {fi + 1} member dimension {y.dim} does not match "
                    f"quotient dimension {ctx.space.dim}"
                )
            if not y.is_nonneg():
                raise FreeLatticeError("family members must be nonnegative")
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            for a in fams[i]:
                for b in fams[j]:
                    if not a.disjoint(b):
                        raise DisjointnessError(
                            f"families {i + 1} and {j + 1} are not disjoint"
                        )
    spec = ctx.space.spec
    scales: list[list[Optional[Fraction]]] = []
    aggregates: list[Vector] = []
    for fam in fams:
        cs: list[Optional[Fraction]] = []
        v = zero_vector(ctx.space.dim)
        for k, a in enumerate(fam, start=1):
            if a.is_zero():
                cs.append(None)
                continue
            c = Fraction(2) ** k * _rational_norm_bound(a, spec)
            cs.append(c)
            v = v + (1 / c) * a
        scales.append(cs)
        aggregates.append(v)
    lifts = lift_disjoint(ctx, aggregates, oracle)
    out: list[list[Vector]] = []
    for fam, cs, u in zip(fams, scales, lifts):
        lifted: list[Vector] = []
        for a, c in zip(fam, cs):
            if c is None:
                lifted.append(zero_vector(ctx.domain.dim))
                continue
            raw = _checked_preimage(oracle, ctx, a)
            b = raw.meet(c * u)
            if apply_hom(ctx.qmap, b) != a:
                raise AlgorithmDefect("band cap disturbed a family lift image")
            lifted.append(b)
        out.append(lifted)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            for a in out[i]:
                for b in out[j]:
                    if not a.disjoint(b):
                        raise AlgorithmDefect("family lifts are not disjoint")
    trace = {
        "aggregates": aggregates,
        "aggregate_lifts": lifts,
        "scales": scales,
    }
    return out, trace


# --------------------------------------------------------------------------
# Projective lifting with an eps-net


def _simplex_net_size(p: int, m_steps: int) -> int:
    return math.comb(m_steps + p - 1, p - 1)


def _simplex_net(p: int, m_steps: int) -> Iterable[Vector]:
    """All nonnegative rational points with denominator m_steps on the l1
    unit sphere of R^p; any positive unit vector is within p/m_steps of one
    in l1 distance (round down, then top up the largest remainders)."""
    for cut in itertools.combinations(range(m_steps + p - 1), p - 1):
        prev = -1
        parts = []
        for c in cut:
            parts.append(c - prev - 1)
            prev = c
        parts.append(m_steps + p - 2 - prev)
        yield Vector(tuple(Fraction(a, m_steps) for a in parts))


def _round_simplex(x: Vector, m_steps: int) -> Vector:
    """The rounding map certifying the simplex net mesh bound."""
    floors = [math.floor(a * m_steps) for a in x]
    rem = m_steps - sum(floors)
    order = sorted(
        range(x.dim), key=lambda i: (x[i] * m_steps - floors[i]), reverse=True
    )
    for i in order[:rem]:
        floors[i] += 1
    return Vector(tuple(Fraction(f, m_steps) for f in floors))


def _face_net_size(p: int, m_steps: int) -> int:
    # Inclusion-exclusion over which coordinates sit at the top value 1.
    total = 0
    for j in range(1, p + 1):
        total += (-1) ** (j + 1) * math.comb(p, j) * (m_steps + 1) ** (p - j)
    return total


def _face_net(p: int, m_steps: int) -> Iterable[Vector]:
    """All points of the grid (k/m_steps) on the positive unit sphere of
    l-infinity: at least one coordinate pinned to 1.  Deduplicated; any
    positive unit vector is within 1/(2 m_steps) in sup distance."""
    seen: set[tuple[Fraction, ...]] = set()
    axis = [Fraction(t, m_steps) for t in range(m_steps + 1)]
    for k in range(p):
        for rest in itertools.product(axis, repeat=p - 1):
            entries = rest[:k] + (_ONE,) + rest[k:]
            if entries not in seen:
                seen.add(entries)
                yield Vector(entries)


def _round_faces(x: Vector, m_steps: int) -> Vector:
    """The rounding map certifying the face net mesh bound."""
    top = max(range(x.dim), key=lambda i: x[i])
    entries = []
    for i, a in enumerate(x):
        if i == top:
            entries.append(_ONE)
        else:
            entries.append(
                Fraction(min(m_steps, math.floor(a * m_steps + Fraction(1, 2))), m_steps)
            )
    return Vector(tuple(entries))


def _l1_gauge(spec: NormSpec, p: int) -> Fraction:
    """max of the l1 norm over the positive unit sphere of the given norm."""
    if spec.kind == "l1":
        return _ONE
    if spec.kind == "linf":
        return Fraction(p)
    raise AlgorithmDefect("gauge requested for a non-plain norm kind")


def _rational_upper(value) -> Fraction:
    """A rational upper bound of an exact or mpmath norm value."""
    if isinstance(value, Fraction):
        return value
    scaled = mpmath.ceil(value * mpmath.mpf(10) ** 9)
    return Fraction(int(scaled), 10**9)


def _num_le(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a <= b
    return float(a) <= float(b) + 1e-25


def _conjugate_to_plain(
    T: LatticeHom, dom: FdBanachLattice
) -> tuple[LatticeHom, FdBanachLattice, Optional[LatticeHom]]:
    """Rewrites a weighted-l1 or weighted-l-infinity domain as the plain one
    through the diagonal isometry x -> (x_k / w_k); returns the conjugated
    hom, the plain domain, and the map to postcompose into the answer."""
    spec = dom.spec
    if spec.kind in ("l1", "linf"):
        return T, dom, None
    if spec.kind == "lp":
        raise FreeLatticeError(
            "projective lifting over an lp domain is not supported: rational "
            "net points on the lp sphere do not exist"
        )
    w = spec.weights
    shrink = LatticeHom(dom.dim, tuple((k + 1, 1 / w[k]) for k in range(dom.dim)))
    grow = LatticeHom(dom.dim, tuple((k + 1, w[k]) for k in range(dom.dim)))
    plain = FdBanachLattice(dom.dim, NormSpec("l1" if spec.kind == "wl1" else "linf"))
    return compose_hom(T, shrink), plain, grow


def projective_lift(
    T: LatticeHom,
    dom: FdBanachLattice,
    ctx: QuotientContext,
    eps,
    oracle: Optional[PreimageOracle] = None,
    net_cap: int = DEFAULT_NET_CAP,
) -> LatticeHom:
    """Lifts T: dom -> X/J to S: dom -> X with Q.S = T exactly and
    ||S|| <= ||T|| + eps."""
    S, _ = projective_lift_traced(T, dom, ctx, eps, oracle, net_cap)
    return S


def projective_lift_traced(
    T: LatticeHom,
    dom: FdBanachLattice,
    ctx: QuotientContext,
    eps,
    oracle: Optional[PreimageOracle] = None,
    net_cap: int = DEFAULT_NET_CAP,
) -> tuple[LatticeHom, dict]:
    """As projective_lift, also returning an audit record with the net
    parameters, the disjoint basis lifts, and the final columns.

    The construction: lift the (disjoint) basis images disjointly, then cap
    the k-th lift by (1/p_i[k]) q_i over every net point p_i with p_i[k]
    positive, q_i a preimage of T p_i.  Net granularity eps/(1 + K(||T||+1)),
    with K the largest l1 mass on the positive unit sphere of the domain,
    makes the norm bound hold; it is asserted before returning.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise FreeLatticeError("eps must be positive")
    oracle = oracle or CanonicalOracle()
    if T.dom_dim != dom.dim:
        raise FreeLatticeError("hom domain does not match the given space")
    if T.cod_dim != ctx.space.dim:
        raise FreeLatticeError("hom codomain does not match the quotient space")

    T_plain, dom_plain, grow = _conjugate_to_plain(T, dom)
    p = dom_plain.dim
    norm_T = hom_norm(T_plain, dom_plain, ctx.space)
    K = _l1_gauge(dom_plain.spec, p)
    eps_net = eps / (1 + K * (_rational_upper(norm_T) + 1))
    eps_eff = min(eps_net, _ONE)

    if dom_plain.spec.kind == "l1":
        m_steps = math.ceil(p / eps_eff)
        net_size = _simplex_net_size(p, m_steps)
        net = _simplex_net(p, m_steps)
        net_kind = "simplex"
        mesh = Fraction(p, m_steps)
    else:
        m_steps = math.ceil(1 / (2 * eps_eff))
        net_size = _face_net_size(p, m_steps)
        net = _face_net(p, m_steps)
        net_kind = "faces"
        mesh = Fraction(1, 2 * m_steps)
    if net_size > net_cap:
        raise CapExceeded(
            f"eps-net needs {net_size} points, exceeding the cap {net_cap}"
        )

    basis_targets = [apply_hom(T_plain, unit_vector(k, p)) for k in range(1, p + 1)]
    xs = lift_disjoint(ctx, basis_targets, oracle)
    zs = list(xs)
    for pt in net:
        q = _checked_preimage(
            oracle, ctx, apply_hom(T_plain, pt), slack_limit=eps_eff
        )
        for k in range(p):
            if pt[k] > 0:
                zs[k] = zs[k].meet((1 / pt[k]) * q)

    rows: list[Optional[tuple[int, Fraction]]] = [None] * ctx.domain.dim
    for k, z in enumerate(zs, start=1):
        if apply_hom(ctx.qmap, z) != basis_targets[k - 1]:
            raise AlgorithmDefect("net caps disturbed a basis lift image")
        for j in range(ctx.domain.dim):
            if z[j] != 0:
                if rows[j] is not None:
                    raise AlgorithmDefect("lift columns are not disjoint")
                rows[j] = (k, z[j])
    S_plain = LatticeHom(p, tuple(rows))
    S = S_plain if grow is None else compose_hom(S_plain, grow)

    if compose_hom(ctx.qmap, S) != T:
        raise AlgorithmDefect("lift does not compose back to the input hom")
    norm_S = hom_norm(S, dom, ctx.domain)
    bound = hom_norm(T, dom, ctx.space) + eps
    if not _num_le(norm_S, bound):
        raise AlgorithmDefect("lift norm exceeds the eps bound")
    trace = {
        "eps_net": eps_net,
        "eps_eff": eps_eff,
        "net_kind": net_kind,
        "net_steps": m_steps,
        "net_size": net_size,
        "mesh": mesh,
        "basis_lifts": xs,
        "columns": zs,
        "norm_T": norm_T,
        "norm_S": norm_S,
    }
    return S, trace
