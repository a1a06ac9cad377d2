"""The shared command layer: every operation the CLI and the HTTP service
expose runs through handle(), which validates the request, calls the core
package, and wraps the outcome in a CommandResult.

Payloads leave this module JSON-safe: rationals already rendered as "p/q"
strings, extended-precision norms as floats, vectors as string lists.  The
CLI's canonical serializer therefore emits identical bytes whether a result
was computed locally or fetched from a server.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

from pydantic import ValidationError

from ..canonical import expr_equal, sup_norm, to_maxmin
from ..errors import FreeLatticeError
from ..expressions import Point, eval_expr, parse_expr, print_expr, project_onto
from ..fdlattice import (
    FdBanachLattice,
    IdealSpec,
    LatticeHom,
    NormSpec,
    Vector,
    quotient,
)
from ..freenorm import AtomicMeasure, dual_norm, free_norm, quotient_norm
from ..jsonio import parse_rational, rational_str
from ..lifting import (
    AdversarialOracle,
    CanonicalOracle,
    PreimageOracle,
    lift_disjoint_families_traced,
    lift_disjoint_traced,
    projective_lift_traced,
)
from ..symnorm import circle_dual_norm, circle_measure, symmetric_norm
from . import models


@dataclass
class CommandResult:
    """Outcome envelope for one operation."""

    status: str
    payload: Optional[dict]
    diagnostics: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "payload": self.payload,
            "diagnostics": list(self.diagnostics),
        }


REQUEST_MODELS: dict[str, type] = {
    "canon": models.CanonRequest,
    "eval": models.EvalRequest,
    "equal": models.EqualRequest,
    "norm": models.NormRequest,
    "dual-norm": models.DualNormRequest,
    "quotient-norm": models.QuotientNormRequest,
    "project": models.ProjectRequest,
    "lift-disjoint": models.LiftDisjointRequest,
    "lift-families": models.LiftFamiliesRequest,
    "projlift": models.ProjliftRequest,
    "symnorm": models.SymnormRequest,
}


def handle(op: str, request: Mapping) -> CommandResult:
    """Validates and runs one operation; never raises for domain problems."""
    model_cls = REQUEST_MODELS.get(op)
    if model_cls is None:
        return CommandResult("error", None, [f"unknown operation {op!r}"])
    try:
        req = model_cls.model_validate(dict(request))
    except ValidationError as exc:
        notes = [
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        ]
        return CommandResult("error", None, notes)
    try:
        payload = _HANDLERS[op](req)
    except FreeLatticeError as exc:
        return CommandResult("error", None, [str(exc)])
    return CommandResult("ok", payload, [])


# --------------------------------------------------------------------------
# Conversion helpers


def _point(coords: list[str]) -> Point:
    return Point(tuple(parse_rational(c) for c in coords))


def _vector(entries: list[str]) -> Vector:
    return Vector(tuple(parse_rational(e) for e in entries))


def _vec_json(v: Vector) -> list[str]:
    return [rational_str(e) for e in v]


def _space(model: models.SpaceModel) -> FdBanachLattice:
    kwargs = {}
    if model.p is not None:
        kwargs["p"] = parse_rational(model.p)
    if model.weights is not None:
        kwargs["weights"] = tuple(parse_rational(w) for w in model.weights)
    return FdBanachLattice(model.dim, NormSpec(model.kind, **kwargs))


def _oracle(model: models.OracleModel) -> PreimageOracle:
    if model.kind == "canonical":
        return CanonicalOracle()
    slack = parse_rational(model.slack) if model.slack is not None else Fraction(1)
    return AdversarialOracle(model.seed, slack)


def _norm_json(value) -> Union[str, float]:
    if isinstance(value, Fraction):
        return rational_str(value)
    return float(value)


# --------------------------------------------------------------------------
# Operation handlers


def _canon(req: models.CanonRequest) -> dict:
    f = parse_expr(req.expr, req.n)
    mm = to_maxmin(f, lp_prune=req.lp_prune)
    return {
        "op": "canon",
        "n": req.n,
        "form_count": mm.form_count,
        "groups": [
            [[rational_str(c) for c in form.coeffs] for form in group]
            for group in mm.groups
        ],
    }


def _eval(req: models.EvalRequest) -> dict:
    f = parse_expr(req.expr, req.n)
    value = eval_expr(f, _point(req.at))
    return {"op": "eval", "value": rational_str(value)}


def _equal(req: models.EqualRequest) -> dict:
    lhs = parse_expr(req.lhs, req.n)
    rhs = parse_expr(req.rhs, req.n)
    return {"op": "equal", "equal": expr_equal(lhs, rhs)}


def _norm(req: models.NormRequest) -> dict:
    f = parse_expr(req.expr, req.n)
    if req.kind == "sup":
        return {"op": "norm", "kind": "sup", "value": rational_str(sup_norm(f))}
    cert = free_norm(f)
    return {
        "op": "norm",
        "kind": "free",
        "value": rational_str(cert.value),
        "certificate": {
            "value": rational_str(cert.value),
            "atoms": [
                {"weight": rational_str(w), "point": [rational_str(c) for c in pt]}
                for pt, w in cert.primal.atoms
            ],
            "prices": [rational_str(y) for y in cert.prices],
        },
    }


def _dual_norm(req: models.DualNormRequest) -> dict:
    mu = AtomicMeasure(
        req.n,
        tuple((_point(a.point), parse_rational(a.weight)) for a in req.atoms),
    )
    return {"op": "dual_norm", "value": rational_str(dual_norm(mu))}


def _quotient_norm(req: models.QuotientNormRequest) -> dict:
    f = parse_expr(req.expr, req.n)
    points = [_point(p) for p in req.points]
    return {"op": "quotient_norm", "value": rational_str(quotient_norm(f, points))}


def _project(req: models.ProjectRequest) -> dict:
    f = parse_expr(req.expr, req.n)
    g = project_onto(f, frozenset(req.keep))
    return {"op": "project", "n": req.n, "expr": print_expr(g)}


def _lift_disjoint(req: models.LiftDisjointRequest) -> dict:
    ctx = quotient(_space(req.space), IdealSpec(frozenset(req.ideal)))
    ys = [_vector(y) for y in req.ys]
    xs, steps = lift_disjoint_traced(ctx, ys, _oracle(req.oracle))
    payload = {"op": "lift_disjoint", "lifts": [_vec_json(x) for x in xs]}
    if req.trace:
        payload["trace"] = [
            {
                "step": s["step"],
                "target": _vec_json(s["target"]),
                "tail": _vec_json(s["tail"]),
                "xtilde": _vec_json(s["xtilde"]),
                "utilde": _vec_json(s["utilde"]),
                "meet": _vec_json(s["meet"]),
                "x": _vec_json(s["x"]),
                "u": _vec_json(s["u"]),
            }
            for s in steps
        ]
    return payload


def _lift_families(req: models.LiftFamiliesRequest) -> dict:
    ctx = quotient(_space(req.space), IdealSpec(frozenset(req.ideal)))
    fams = [[_vector(y) for y in fam] for fam in req.families]
    out, tr = lift_disjoint_families_traced(ctx, fams, _oracle(req.oracle))
    payload = {
        "op": "lift_families",
        "families": [[_vec_json(b) for b in fam] for fam in out],
    }
    if req.trace:
        payload["trace"] = {
            "aggregates": [_vec_json(v) for v in tr["aggregates"]],
            "aggregate_lifts": [_vec_json(u) for u in tr["aggregate_lifts"]],
            "scales": [
                [None if c is None else rational_str(c) for c in cs]
                for cs in tr["scales"]
            ],
        }
    return payload


def _projlift(req: models.ProjliftRequest) -> dict:
    dom = _space(req.dom)
    ctx = quotient(_space(req.space), IdealSpec(frozenset(req.ideal)))
    rows = tuple(
        None if r is None else (r.source, parse_rational(r.scale)) for r in req.rows
    )
    T = LatticeHom(dom.dim, rows)
    S, tr = projective_lift_traced(
        T, dom, ctx, parse_rational(req.eps), _oracle(req.oracle), req.net_cap
    )
    payload = {
        "op": "projlift",
        "dom_dim": S.dom_dim,
        "rows": [
            None if row is None else {"source": row[0], "scale": rational_str(row[1])}
            for row in S.rows
        ],
        "norm_t": _norm_json(tr["norm_T"]),
        "norm_s": _norm_json(tr["norm_S"]),
    }
    if req.trace:
        payload["trace"] = {
            "eps_net": rational_str(tr["eps_net"]),
            "eps_eff": rational_str(tr["eps_eff"]),
            "net_kind": tr["net_kind"],
            "net_steps": tr["net_steps"],
            "net_size": tr["net_size"],
            "mesh": rational_str(tr["mesh"]),
            "basis_lifts": [_vec_json(x) for x in tr["basis_lifts"]],
            "columns": [_vec_json(z) for z in tr["columns"]],
        }
    return payload


def _symnorm(req: models.SymnormRequest) -> dict:
    mu = circle_measure([(a.angle, a.weight) for a in req.atoms])
    return {
        "op": "symnorm",
        "dual": circle_dual_norm(mu),
        "symmetric": symmetric_norm(mu, req.tol),
    }


_HANDLERS: dict[str, Callable] = {
    "canon": _canon,
    "eval": _eval,
    "equal": _equal,
    "norm": _norm,
    "dual-norm": _dual_norm,
    "quotient-norm": _quotient_norm,
    "project": _project,
    "lift-disjoint": _lift_disjoint,
    "lift-families": _lift_families,
    "projlift": _projlift,
    "symnorm": _symnorm,
}
