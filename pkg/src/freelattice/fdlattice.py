"""Finite-dimensional Banach lattices with coordinatewise order.

The ambient spaces for the lifting algorithms: R^m under one of the norms
l1, l-infinity, lp (p rational, 1 < p < infinity), or their weighted l1 /
l-infinity variants with strictly positive rational weights.  All of these
norms are absolute and monotone, which the quotient construction exploits:
every closed ideal of such a coordinate lattice is spanned by a subset of the
standard basis, and zeroing the ideal coordinates attains the quotient
infimum, so the quotient is again a coordinate lattice with the restricted
norm.

Lattice homomorphisms between coordinate lattices send each output
coordinate to a nonnegative multiple of one input coordinate; the
representation below stores exactly that, so every representable map is a
lattice homomorphism by construction.

l1 / l-infinity / weighted norms are exact rationals; lp values are
evaluated with mpmath well below the advertised 1e-12 tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

import mpmath

from .errors import DimensionMismatch, FreeLatticeError

_ZERO = Fraction(0)
_ONE = Fraction(1)

_MP_DPS = 60  # working precision for lp norms, far beyond the 1e-12 contract

EXACT_KINDS = ("l1", "linf", "wl1", "wlinf")


@dataclass(frozen=True)
class NormSpec:
    """One of l1, linf, lp, wl1, wlinf.  Weighted kinds carry per-coordinate
    strictly positive rational weights; lp carries a rational p > 1."""

    kind: str
    p: Optional[Fraction] = None
    weights: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in ("l1", "linf", "lp", "wl1", "wlinf"):
            raise FreeLatticeError(f"unknown norm kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None:
                raise FreeLatticeError("lp needs an exponent")
            object.__setattr__(self, "p", Fraction(self.p))
            if self.p <= 1:
                raise FreeLatticeError("lp exponent must be greater than 1")
        elif self.p is not None:
            raise FreeLatticeError(f"{self.kind} does not take an exponent")
        if self.kind in ("wl1", "wlinf"):
            if not self.weights:
                raise FreeLatticeError(f"{self.kind} needs weights")
            ws = tuple(Fraction(w) for w in self.weights)
            if any(w <= 0 for w in ws):
                raise FreeLatticeError("weights must be strictly positive")
            object.__setattr__(self, "weights", ws)
        elif self.weights is not None:
            raise FreeLatticeError(f"{self.kind} does not take weights")

    @property
    def is_exact(self) -> bool:
        return self.kind in EXACT_KINDS

    def restricted(self, kept: Sequence[int]) -> "NormSpec":
        """The induced spec on a coordinate subset (1-based indices)."""
        if self.weights is None:
            return self
        return NormSpec(self.kind, weights=tuple(self.weights[k - 1] for k in kept))


L1 = NormSpec("l1")
LINF = NormSpec("linf")


def lp_spec(p) -> NormSpec:
    return NormSpec("lp", p=Fraction(p))


def weighted_l1(weights: Iterable) -> NormSpec:
    return NormSpec("wl1", weights=tuple(Fraction(w) for w in weights))


def weighted_linf(weights: Iterable) -> NormSpec:
    return NormSpec("wlinf", weights=tuple(Fraction(w) for w in weights))


@dataclass(frozen=True)
class FdBanachLattice:
    """R^dim with coordinatewise order under the given norm."""

    dim: int
    spec: NormSpec

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise FreeLatticeError("dimension must be at least 1")
        if self.spec.weights is not None and len(self.spec.weights) != self.dim:
            raise DimensionMismatch(
                f"{len(self.spec.weights)} weights for dimension {self.dim}"
            )


@dataclass(frozen=True)
class Vector:
    """A rational vector; order, lattice operations, and arithmetic are
    componentwise."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise FreeLatticeError("a vector needs at least one entry")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def _match(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise FreeLatticeError(f"expected a vector, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"vector dims {self.dim} and {other.dim} differ")

    def __add__(self, other: "Vector") -> "Vector":
        self._match(other)
        return Vector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._match(other)
        return Vector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __rmul__(self, t) -> "Vector":
        t = Fraction(t)
        return Vector(tuple(t * a for a in self.entries))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.entries))

    def __abs__(self) -> "Vector":
        return Vector(tuple(abs(a) for a in self.entries))

    def meet(self, other: "Vector") -> "Vector":
        self._match(other)
        return Vector(tuple(min(a, b) for a, b in zip(self.entries, other.entries)))

    def join(self, other: "Vector") -> "Vector":
        self._match(other)
        return Vector(tuple(max(a, b) for a, b in zip(self.entries, other.entries)))

    def positive_part(self) -> "Vector":
        return Vector(tuple(max(a, _ZERO) for a in self.entries))

    def is_nonneg(self) -> bool:
        return all(a >= 0 for a in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def le(self, other: "Vector") -> bool:
        self._match(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def disjoint(self, other: "Vector") -> bool:
        """|self| and |other| meet in zero, i.e. disjoint supports."""
        self._match(other)
        return all(a == 0 or b == 0 for a, b in zip(self.entries, other.entries))

    def support(self) -> frozenset[int]:
        """1-based indices of the nonzero coordinates."""
        return frozenset(i + 1 for i, a in enumerate(self.entries) if a != 0)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def vector(*entries) -> Vector:
    return Vector(tuple(Fraction(e) for e in entries))


def zero_vector(m: int) -> Vector:
    return Vector((_ZERO,) * m)


def unit_vector(k: int, m: int) -> Vector:
    """The k-th standard basis vector, 1-based."""
    if not 1 <= k <= m:
        raise FreeLatticeError(f"basis index {k} out of range 1..{m}")
    return Vector(tuple(_ONE if i == k - 1 else _ZERO for i in range(m)))


# --------------------------------------------------------------------------
# Norms


Number = Union[Fraction, mpmath.mpf]


def norm_vec(x: Vector, spec: NormSpec) -> Number:
    """The norm of x under spec: an exact Fraction for the l1 / l-infinity
    family, an mpmath value within 1e-12 for lp."""
    if spec.weights is not None and len(spec.weights) != x.dim:
        raise DimensionMismatch("weight count does not match vector dimension")
    if spec.kind == "l1":
        return sum((abs(a) for a in x), _ZERO)
    if spec.kind == "linf":
        return max(abs(a) for a in x)
    if spec.kind == "wl1":
        return sum((w * abs(a) for w, a in zip(spec.weights, x)), _ZERO)
    if spec.kind == "wlinf":
        return max(w * abs(a) for w, a in zip(spec.weights, x))
    # lp
    with mpmath.workdps(_MP_DPS):
        p = _mpf_frac(spec.p)
        total = mpmath.mpf(0)
        for a in x:
            if a != 0:
                total += mpmath.power(_mpf_frac(abs(a)), p)
        return mpmath.power(total, 1 / p)


def _mpf_frac(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


# --------------------------------------------------------------------------
# Lattice homomorphisms


@dataclass(frozen=True)
class LatticeHom:
    """A lattice homomorphism between coordinate lattices.

    ``rows[j]`` describes output coordinate j+1: either None (the zero
    functional) or a pair (source index, scale) with a 1-based source and a
    nonnegative rational scale.  Scale zero normalizes to None, so structural
    equality of homs coincides with equality as maps.
    """

    dom_dim: int
    rows: tuple[Optional[tuple[int, Fraction]], ...]

    def __post_init__(self) -> None:
        if self.dom_dim < 1:
            raise FreeLatticeError("domain dimension must be at least 1")
        if not self.rows:
            raise FreeLatticeError("codomain dimension must be at least 1")
        normalized = []
        for row in self.rows:
            if row is None:
                normalized.append(None)
                continue
            src, scale = row
            scale = Fraction(scale)
            if not 1 <= src <= self.dom_dim:
                raise FreeLatticeError(
                    f"source index {src} out of range 1..{self.dom_dim}"
                )
            if scale < 0:
                raise FreeLatticeError("lattice homomorphism scales must be nonnegative")
            normalized.append(None if scale == 0 else (src, scale))
        object.__setattr__(self, "rows", tuple(normalized))

    @property
    def cod_dim(self) -> int:
        return len(self.rows)

    def column(self, k: int, cod_dim_check: Optional[int] = None) -> Vector:
        """The image of the k-th basis vector (1-based)."""
        if not 1 <= k <= self.dom_dim:
            raise FreeLatticeError(f"basis index {k} out of range 1..{self.dom_dim}")
        return Vector(
            tuple(
                row[1] if row is not None and row[0] == k else _ZERO
                for row in self.rows
            )
        )


def identity_hom(m: int) -> LatticeHom:
    return LatticeHom(m, tuple((k, _ONE) for k in range(1, m + 1)))


def apply_hom(T: LatticeHom, x: Vector) -> Vector:
    if x.dim != T.dom_dim:
        raise DimensionMismatch(
            f"vector dim {x.dim} does not match hom domain {T.dom_dim}"
        )
    return Vector(
        tuple(
            row[1] * x[row[0] - 1] if row is not None else _ZERO for row in T.rows
        )
    )


def compose_hom(outer: LatticeHom, inner: LatticeHom) -> LatticeHom:
    """The composite x -> outer(inner(x))."""
    if inner.cod_dim != outer.dom_dim:
        raise DimensionMismatch(
            f"cannot compose: inner codomain {inner.cod_dim}, outer domain {outer.dom_dim}"
        )
    rows: list[Optional[tuple[int, Fraction]]] = []
    for row in outer.rows:
        if row is None:
            rows.append(None)
            continue
        src, scale = row
        inner_row = inner.rows[src - 1]
        if inner_row is None:
            rows.append(None)
        else:
            rows.append((inner_row[0], scale * inner_row[1]))
    return LatticeHom(inner.dom_dim, tuple(rows))


# --------------------------------------------------------------------------
# Ideals and quotients


@dataclass(frozen=True)
class IdealSpec:
    """A closed ideal, i.e. the span of a subset of the standard basis.
    Coordinates are 1-based; the empty set is the zero ideal."""

    coords: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", frozenset(int(c) for c in self.coords))


@dataclass(frozen=True)
class QuotientContext:
    """A quotient X -> X/J realized on coordinates.

    ``kept`` lists the surviving coordinates of X in increasing order; the
    quotient space carries the restricted norm, ``qmap`` drops the ideal
    coordinates with scale one, and ``section`` zero-pads back, so
    qmap . section is the identity on the quotient.
    """

    domain: FdBanachLattice
    ideal: IdealSpec
    space: FdBanachLattice
    qmap: LatticeHom
    section: LatticeHom
    kept: tuple[int, ...]

    def __iter__(self):
        # Allows "qspace, Q = quotient(X, J)" while keeping the rest handy.
        return iter((self.space, self.qmap))


def quotient(space: FdBanachLattice, ideal) -> QuotientContext:
    """Quotient a coordinate lattice by the closed ideal on the given
    1-based coordinates.  Fails when the ideal is everything, since the zero
    space is not represented."""
    if isinstance(ideal, IdealSpec):
        coords = ideal.coords
    else:
        coords = frozenset(int(c) for c in ideal)
    bad = [c for c in coords if not 1 <= c <= space.dim]
    if bad:
        raise FreeLatticeError(f"ideal coordinate {min(bad)} out of range 1..{space.dim}")
    kept = tuple(k for k in range(1, space.dim + 1) if k not in coords)
    if not kept:
        raise FreeLatticeError("the ideal is the whole space; zero quotient unsupported")
    qspace = FdBanachLattice(len(kept), space.spec.restricted(kept))
    qmap = LatticeHom(space.dim, tuple((k, _ONE) for k in kept))
    position = {k: i + 1 for i, k in enumerate(kept)}
    section = LatticeHom(
        len(kept),
        tuple(
            (position[k], _ONE) if k in position else None
            for k in range(1, space.dim + 1)
        ),
    )
    return QuotientContext(
        domain=space,
        ideal=IdealSpec(coords),
        space=qspace,
        qmap=qmap,
        section=section,
        kept=kept,
    )


# --------------------------------------------------------------------------
# Operator norms of lattice homomorphisms


def hom_norm(T: LatticeHom, dom: FdBanachLattice, cod: FdBanachLattice) -> Number:
    """The operator norm of T, by closed form.

    Positivity of T and absoluteness of every supported norm put the
    supremum on the positive orthant, where each case reduces to a finite
    formula: l1 domains maximize over scaled basis vectors, l-infinity
    domains evaluate at the top corner of the unit ball, and lp domains
    reduce to Hoelder-type allocations documented inline.  Values are exact
    whenever both specs are in the l1 / l-infinity family.
    """
    return hom_norm_witness(T, dom, cod)[0]


def hom_norm_witness(
    T: LatticeHom, dom: FdBanachLattice, cod: FdBanachLattice
) -> tuple[Number, Vector]:
    """The operator norm together with a unit vector attaining it (for lp
    cases, attaining up to the evaluation tolerance)."""
    if T.dom_dim != dom.dim or T.cod_dim != cod.dim:
        raise DimensionMismatch("hom dimensions do not match the given spaces")
    kind = dom.spec.kind
    if kind in ("l1", "wl1"):
        weights = dom.spec.weights or (_ONE,) * dom.dim
        best: Optional[tuple[Number, Vector]] = None
        for k in range(1, dom.dim + 1):
            x = (1 / weights[k - 1]) * unit_vector(k, dom.dim)
            val = norm_vec(apply_hom(T, x), cod.spec)
            if best is None or val > best[0]:
                best = (val, x)
        return best
    if kind in ("linf", "wlinf"):
        weights = dom.spec.weights or (_ONE,) * dom.dim
        # The positive unit ball's top corner dominates every positive x.
        top = Vector(tuple(1 / w for w in weights))
        return norm_vec(apply_hom(T, top), cod.spec), top
    # lp domain (plain by construction; there is no weighted lp kind)
    return _hom_norm_lp(T, dom, cod)


def _hom_norm_lp(
    T: LatticeHom, dom: FdBanachLattice, cod: FdBanachLattice
) -> tuple[Number, Vector]:
    p = dom.spec.p
    q = p / (p - 1)  # conjugate exponent, rational
    cod_kind = cod.spec.kind
    cod_w = cod.spec.weights or (_ONE,) * cod.dim
    # Column data: for input k, the output entries scale * weight.
    cols: dict[int, list[Fraction]] = {k: [] for k in range(1, dom.dim + 1)}
    for j, row in enumerate(T.rows):
        if row is not None:
            src, scale = row
            cols[src].append(cod_w[j] * scale if cod_kind in ("wl1", "wlinf") else scale)
    if cod_kind in ("l1", "wl1"):
        # ||Tx||_1 = sum_k a_k x_k on positives with a_k the column mass;
        # Hoelder against ||x||_p gives ||a||_q, attained at x_k ~ a_k^(q/p).
        a = [sum(cols[k], _ZERO) for k in range(1, dom.dim + 1)]
        with mpmath.workdps(_MP_DPS):
            qf = _mpf_frac(q)
            value = mpmath.power(
                sum(mpmath.power(_mpf_frac(v), qf) for v in a if v != 0), 1 / qf
            )
            witness = _lp_allocation(a, q, p)
        return value, witness
    if cod_kind in ("linf", "wlinf"):
        # Each output is scale * x_src <= scale for unit x, attained at e_src.
        best_val = _ZERO
        best_k = 1
        for k in range(1, dom.dim + 1):
            for v in cols[k]:
                if v > best_val:
                    best_val, best_k = v, k
        return best_val, unit_vector(best_k, dom.dim)
    # lp -> lq: ||Tx||_q^q = sum_k d_k x_k^q with d_k the column q-mass.
    qq = cod.spec.p
    with mpmath.workdps(_MP_DPS):
        qqf = _mpf_frac(qq)
        d = [
            sum(mpmath.power(_mpf_frac(v), qqf) for v in cols[k] if v != 0)
            for k in range(1, dom.dim + 1)
        ]
        if qq >= p:
            # Concentrating on the best single coordinate is optimal.
            best_k = max(range(dom.dim), key=lambda i: d[i])
            return mpmath.power(d[best_k], 1 / qqf), unit_vector(best_k + 1, dom.dim)
        # q < p: maximize sum d_k t_k over the (p/q)-ball of t = x^q; the
        # Hoelder conjugate of r = p/q gives ||d||_{r'} with r' = p/(p-q).
        r_conj = p / (p - qq)
        rcf = _mpf_frac(r_conj)
        total = sum(mpmath.power(v, rcf) for v in d if v != 0)
        value = mpmath.power(mpmath.power(total, 1 / rcf), 1 / qqf)
        # Allocation t_k ~ d_k^{r'-1}; map back through x = t^(1/q).
        weights = [mpmath.power(v, rcf - 1) if v != 0 else mpmath.mpf(0) for v in d]
        mass = sum(mpmath.power(w, _mpf_frac(p) / qqf) for w in weights)
        if mass == 0:
            return mpmath.mpf(0), unit_vector(1, dom.dim)
        scale = mpmath.power(mass, -1 / _mpf_frac(p))
        entries = tuple(
            Fraction(str(mpmath.nstr(scale * mpmath.power(w, 1 / qqf), 25)))
            for w in weights
        )
        return value, Vector(entries)


def _lp_allocation(a: list[Fraction], q: Fraction, p: Fraction) -> Vector:
    """A near-optimal positive unit vector for max sum a_k x_k over the
    p-ball: x_k proportional to a_k^(q/p)."""
    with mpmath.workdps(_MP_DPS):
        qf, pf = _mpf_frac(q), _mpf_frac(p)
        raw = [
            mpmath.power(_mpf_frac(v), qf / pf) if v > 0 else mpmath.mpf(0) for v in a
        ]
        mass = sum(mpmath.power(r, pf) for r in raw)
        if mass == 0:
            return unit_vector(1, len(a))
        scale = mpmath.power(mass, -1 / pf)
        return Vector(
            tuple(Fraction(str(mpmath.nstr(scale * r, 25))) for r in raw)
        )
