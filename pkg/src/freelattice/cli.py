"""Command-line front end.

Every subcommand builds a JSON-safe request, runs it through the shared
handler layer (in process by default, over HTTP with --server), and prints
the resulting CommandResult: human-readable by default, canonical JSON with
--json.  Exit status 0 means ok, 1 a domain error, 2 a usage error.

Expression syntax: generators x1..xn, rational scalars like 3 or 1/2 with
explicit '*', operators + - v (join) /\\ (meet), absolute value |...|,
parentheses.  Vectors and points are comma-separated rationals; adversarial
oracle seeds are always explicit flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import httpx

from .errors import FreeLatticeError
from .jsonio import canonical_dumps, format_float
from .lifting import DEFAULT_NET_CAP
from .service.handlers import CommandResult, handle


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freelattice",
        description="workbench for finitely generated free Banach lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument(
        "--server", metavar="URL", help="send the request to a running service"
    )

    def expr_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("-n", type=int, required=True, help="generator count")
        return p

    p = expr_cmd("canon", "max-min canonical form of an expression")
    p.add_argument("expr")
    p.add_argument(
        "--lp-prune", action="store_true", help="also drop LP-redundant forms"
    )

    p = expr_cmd("eval", "evaluate an expression at a point")
    p.add_argument("expr")
    p.add_argument("--at", required=True, metavar="COORDS", help="e.g. 1,-1/2")

    p = expr_cmd("equal", "decide semantic equality of two expressions")
    p.add_argument("lhs")
    p.add_argument("rhs")

    p = expr_cmd("norm", "sup norm or free norm with certificate")
    p.add_argument("expr")
    p.add_argument("--kind", required=True, choices=["sup", "free"])

    p = expr_cmd("dual-norm", "dual free norm of an atomic measure")
    p.add_argument(
        "--atom",
        action="append",
        default=[],
        metavar="W:COORDS",
        help="repeatable, e.g. --atom 1:1,0 --atom 1/2:0,-1",
    )

    p = expr_cmd("quotient-norm", "norm of the restriction to a point set")
    p.add_argument("expr")
    p.add_argument(
        "--point",
        action="append",
        required=True,
        metavar="COORDS",
        help="repeatable; points must lie on the sup-norm sphere",
    )

    p = expr_cmd("project", "substitute zero for dropped generators")
    p.add_argument("expr")
    p.add_argument("--keep", required=True, metavar="INDICES", help="e.g. 1,3")

    def lift_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument(
            "--space",
            required=True,
            metavar="SPEC",
            help="KIND:DIM[:EXTRA], e.g. l1:4, lp:3:5/2, wl1:2:1,1/2",
        )
        p.add_argument(
            "--ideal", default="", metavar="INDICES", help="ideal coordinates, e.g. 3,4"
        )
        p.add_argument("--oracle", choices=["canonical", "adversarial"],
                       default="canonical")
        p.add_argument("--seed", type=int, help="adversarial oracle seed")
        p.add_argument("--slack", metavar="R", help="adversarial norm slack")
        p.add_argument("--trace", action="store_true", help="include audit trace")
        return p

    p = lift_cmd("lift-disjoint", "disjointness-preserving lifting")
    p.add_argument(
        "--y", action="append", default=[], metavar="COORDS",
        help="repeatable disjoint nonnegative quotient vectors",
    )

    p = lift_cmd("lift-families", "disjoint lifting of families")
    p.add_argument(
        "--family", action="append", default=[], metavar="V|V|..",
        help="repeatable; members separated by '|'",
    )

    p = lift_cmd("projlift", "lift a hom through the quotient within eps")
    p.add_argument(
        "--dom", required=True, metavar="SPEC", help="domain space, e.g. linf:2"
    )
    p.add_argument(
        "--row", action="append", required=True, metavar="SRC:SCALE",
        help="repeatable hom rows; 0 for a zero row",
    )
    p.add_argument("--eps", required=True, metavar="R", help="norm slack, e.g. 1/10")
    p.add_argument("--net-cap", type=int, default=DEFAULT_NET_CAP)

    p = sub.add_parser("symnorm", parents=[common],
                       help="circle-model dual and symmetric norms")
    p.add_argument(
        "--atoms", required=True, metavar="A:W,..",
        help="angle:weight pairs, e.g. 0:1,1.5708:2",
    )
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


# --------------------------------------------------------------------------
# Request building


class RequestError(FreeLatticeError):
    """A flag value that cannot be turned into a request."""


def _split_indices(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise RequestError(f"not an index list: {text!r}") from exc


def _split_vec(text: str) -> list[str]:
    coords = [tok.strip() for tok in text.split(",")]
    if not all(coords):
        raise RequestError(f"not a coordinate list: {text!r}")
    return coords


def _parse_space(text: str) -> dict:
    parts = text.split(":", 2)
    if len(parts) < 2:
        raise RequestError(f"space spec needs KIND:DIM, got {text!r}")
    kind, dim_text = parts[0], parts[1]
    try:
        dim = int(dim_text)
    except ValueError as exc:
        raise RequestError(f"bad space dimension {dim_text!r}") from exc
    spec: dict = {"kind": kind, "dim": dim}
    if kind == "lp":
        if len(parts) < 3:
            raise RequestError("lp spaces need an exponent: lp:DIM:P")
        spec["p"] = parts[2]
    elif kind in ("wl1", "wlinf"):
        if len(parts) < 3:
            raise RequestError(f"{kind} spaces need weights: {kind}:DIM:W,W,..")
        spec["weights"] = _split_vec(parts[2])
    elif len(parts) > 2:
        raise RequestError(f"{kind} spaces take no extra parameter")
    return spec


def _parse_atom(text: str) -> dict:
    head, sep, tail = text.partition(":")
    if not sep:
        raise RequestError(f"atom needs WEIGHT:COORDS, got {text!r}")
    return {"weight": head.strip(), "point": _split_vec(tail)}


def _parse_circle_atoms(text: str) -> list[dict]:
    atoms = []
    for chunk in text.split(","):
        head, sep, tail = chunk.partition(":")
        if not sep:
            raise RequestError(f"circle atom needs ANGLE:WEIGHT, got {chunk!r}")
        try:
            atoms.append({"angle": float(head), "weight": float(tail)})
        except ValueError as exc:
            raise RequestError(f"bad circle atom {chunk!r}") from exc
    return atoms


def _parse_row(text: str) -> Optional[dict]:
    text = text.strip()
    if text in ("0", "zero", "-"):
        return None
    head, sep, tail = text.partition(":")
    if not sep:
        raise RequestError(f"hom row needs SRC:SCALE or 0, got {text!r}")
    try:
        source = int(head)
    except ValueError as exc:
        raise RequestError(f"bad row source {head!r}") from exc
    return {"source": source, "scale": tail.strip()}


def _oracle_dict(args: argparse.Namespace) -> dict:
    oracle: dict = {"kind": args.oracle}
    if args.oracle == "adversarial" and args.seed is None:
        raise RequestError("--oracle adversarial needs --seed")
    if args.seed is not None:
        oracle["seed"] = args.seed
    if args.slack is not None:
        oracle["slack"] = args.slack
    return oracle


def build_request(args: argparse.Namespace) -> tuple[str, dict]:
    """Turns parsed flags into (operation, request dict)."""
    cmd = args.command
    if cmd == "canon":
        return cmd, {"n": args.n, "expr": args.expr, "lp_prune": args.lp_prune}
    if cmd == "eval":
        return cmd, {"n": args.n, "expr": args.expr, "at": _split_vec(args.at)}
    if cmd == "equal":
        return cmd, {"n": args.n, "lhs": args.lhs, "rhs": args.rhs}
    if cmd == "norm":
        return cmd, {"n": args.n, "expr": args.expr, "kind": args.kind}
    if cmd == "dual-norm":
        return cmd, {"n": args.n, "atoms": [_parse_atom(a) for a in args.atom]}
    if cmd == "quotient-norm":
        return cmd, {
            "n": args.n,
            "expr": args.expr,
            "points": [_split_vec(p) for p in args.point],
        }
    if cmd == "project":
        return cmd, {"n": args.n, "expr": args.expr, "keep": _split_indices(args.keep)}
    if cmd == "lift-disjoint":
        return cmd, {
            "space": _parse_space(args.space),
            "ideal": _split_indices(args.ideal),
            "ys": [_split_vec(y) for y in args.y],
            "oracle": _oracle_dict(args),
            "trace": args.trace,
        }
    if cmd == "lift-families":
        return cmd, {
            "space": _parse_space(args.space),
            "ideal": _split_indices(args.ideal),
            "families": [
                [_split_vec(v) for v in fam.split("|")] for fam in args.family
            ],
            "oracle": _oracle_dict(args),
            "trace": args.trace,
        }
    if cmd == "projlift":
        return cmd, {
            "dom": _parse_space(args.dom),
            "space": _parse_space(args.space),
            "ideal": _split_indices(args.ideal),
            "rows": [_parse_row(r) for r in args.row],
            "eps": args.eps,
            "oracle": _oracle_dict(args),
            "net_cap": args.net_cap,
            "trace": args.trace,
        }
    if cmd == "symnorm":
        return cmd, {"atoms": _parse_circle_atoms(args.atoms), "tol": args.tol}
    raise RequestError(f"unknown command {cmd!r}")


# --------------------------------------------------------------------------
# Remote execution


def run_remote(
    server: str, op: str, request: dict, transport: Optional[httpx.BaseTransport] = None
) -> CommandResult:
    base = server.rstrip("/")
    try:
        with httpx.Client(base_url=base, transport=transport, timeout=120.0) as client:
            resp = client.post(f"/v1/{op}", json=request)
    except httpx.HTTPError as exc:
        return CommandResult("error", None, [f"server request failed: {exc}"])
    if resp.status_code in (200, 400):
        doc = resp.json()
        return CommandResult(
            doc.get("status", "error"),
            doc.get("payload"),
            list(doc.get("diagnostics", [])),
        )
    return CommandResult(
        "error", None, [f"server returned HTTP {resp.status_code}: {resp.text}"]
    )


# --------------------------------------------------------------------------
# Rendering


def _vec_text(entries: list) -> str:
    return "(" + ", ".join(str(e) for e in entries) + ")"


def _render_human(result: CommandResult) -> str:
    if not result.ok:
        return "error: " + "; ".join(result.diagnostics)
    p = result.payload or {}
    op = p.get("op")
    lines: list[str] = []
    if op == "canon":
        lines.append(f"groups: {len(p['groups'])}, forms: {p['form_count']}")
        for i, group in enumerate(p["groups"], start=1):
            lines.append(f"group {i}: " + " /\\ ".join(_vec_text(f) for f in group))
    elif op in ("eval", "dual_norm", "quotient_norm"):
        lines.append(f"value: {p['value']}")
    elif op == "equal":
        lines.append(f"equal: {'true' if p['equal'] else 'false'}")
    elif op == "norm":
        lines.append(f"value: {p['value']}")
        cert = p.get("certificate")
        if cert:
            for atom in cert["atoms"]:
                lines.append(
                    f"atom: weight {atom['weight']} at {_vec_text(atom['point'])}"
                )
            lines.append(f"prices: {_vec_text(cert['prices'])}")
    elif op == "project":
        lines.append(p["expr"])
    elif op == "lift_disjoint":
        for i, x in enumerate(p["lifts"], start=1):
            lines.append(f"x{i}: {_vec_text(x)}")
    elif op == "lift_families":
        for i, fam in enumerate(p["families"], start=1):
            lines.append(f"family {i}:")
            for j, b in enumerate(fam, start=1):
                lines.append(f"  b{j}: {_vec_text(b)}")
    elif op == "projlift":
        for j, row in enumerate(p["rows"], start=1):
            if row is None:
                lines.append(f"row {j}: 0")
            else:
                lines.append(f"row {j}: {row['scale']} * e{row['source']}")
        lines.append(f"norm T: {_num_text(p['norm_t'])}")
        lines.append(f"norm S: {_num_text(p['norm_s'])}")
    elif op == "symnorm":
        lines.append(f"dual: {format_float(p['dual'])}")
        lines.append(f"symmetric: {format_float(p['symmetric'])}")
    else:
        lines.append(str(p))
    return "\n".join(lines)


def _num_text(value) -> str:
    return format_float(value) if isinstance(value, float) else str(value)


# --------------------------------------------------------------------------
# Entry points


def main(
    argv: Optional[list[str]] = None,
    transport: Optional[httpx.BaseTransport] = None,
) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("freelattice.service.app:app", host=args.host, port=args.port)
        return 0
    try:
        op, request = build_request(args)
    except RequestError as exc:
        result = CommandResult("error", None, [str(exc)])
    else:
        if args.server:
            result = run_remote(args.server, op, request, transport)
        else:
            result = handle(op, request)
    if args.json:
        print(canonical_dumps(result.as_dict()))
    else:
        print(_render_human(result))
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
