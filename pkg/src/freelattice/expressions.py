"""Symbolic elements of the free vector lattice over n generators.

An expression denotes a positively homogeneous, piecewise-linear function on
R^n, built from the coordinate functionals x1..xn by exact rational scaling,
addition, negation, absolute value, and the lattice operations join (``v``)
and meet (``/\\``).  Scalars are rationals throughout so every identity the
package checks is an exact equality.

Concrete grammar accepted by :func:`parse_expr` (whitespace insignificant)::

    expr  := join (('+' | '-') join)*
    join  := meet ('v' meet)*
    meet  := unary ('/\\' unary)*
    unary := '-' unary | atom
    atom  := RATIONAL '*' unary | '0' | GENERATOR | '|' expr '|' | '(' expr ')'

with ``GENERATOR`` one of ``x1 .. x<n>`` and ``RATIONAL`` either an integer
or ``p/q``.  Binding from tightest to loosest: scalar multiplication, unary
minus and absolute value, meet, join, addition/subtraction; binary operators
associate to the left.  A bare ``0`` denotes the zero function (the only
homogeneous constant), every other bare number is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import DimensionMismatch, ExprSyntaxError, FreeLatticeError

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Coerce to an exact rational. ``Fraction`` already keeps the canonical
    reduced form with a positive denominator."""
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    """A rational point of R^n.  Coordinates are stored 0-indexed."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise FreeLatticeError("a point needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def sup_abs(self) -> Fraction:
        return max(abs(c) for c in self.coords)

    def in_cube(self) -> bool:
        """True iff the point lies in [-1, 1]^n."""
        return self.sup_abs() <= 1

    def scaled(self, t: RationalLike) -> "Point":
        t = Fraction(t)
        return Point(tuple(t * c for c in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def point(*coords: RationalLike) -> Point:
    return Point(tuple(Fraction(c) for c in coords))


# --------------------------------------------------------------------------
# Expression trees


@dataclass(frozen=True)
class LatticeExpr:
    """Base node.  ``n`` is the generator count, identical across the tree."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise FreeLatticeError("generator count must be at least 1")

    def _check_child(self, child: "LatticeExpr") -> None:
        if not isinstance(child, LatticeExpr):
            raise FreeLatticeError(f"expected an expression, got {type(child).__name__}")
        if child.n != self.n:
            raise DimensionMismatch(
                f"subexpression over {child.n} generators used in a tree over {self.n}"
            )

    # Operator sugar so tests and callers can write f + g, -f, 2 * f, abs(f).
    def __add__(self, other: "LatticeExpr") -> "Sum":
        return Sum(self.n, self, other)

    def __sub__(self, other: "LatticeExpr") -> "Sum":
        return Sum(self.n, self, Neg(other.n, other))

    def __neg__(self) -> "Neg":
        return Neg(self.n, self)

    def __abs__(self) -> "Abs":
        return Abs(self.n, self)

    def __rmul__(self, c: RationalLike) -> "Scale":
        return Scale(self.n, Fraction(c), self)

    def join(self, other: "LatticeExpr") -> "Join":
        return Join(self.n, self, other)

    def meet(self, other: "LatticeExpr") -> "Meet":
        return Meet(self.n, self, other)

    def __str__(self) -> str:
        return print_expr(self)


@dataclass(frozen=True)
class Generator(LatticeExpr):
    """The k-th generator, the coordinate functional xi -> xi_k.  1-based."""

    index: int

    def __post_init__(self) -> None:
        super().__post_init__()
        if not 1 <= self.index <= self.n:
            raise FreeLatticeError(
                f"generator index {self.index} out of range 1..{self.n}"
            )


@dataclass(frozen=True)
class Zero(LatticeExpr):
    """The zero function.  Present as its own node so substitution does not
    inflate trees."""


@dataclass(frozen=True)
class Scale(LatticeExpr):
    coeff: Fraction
    child: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        self._check_child(self.child)


@dataclass(frozen=True)
class Neg(LatticeExpr):
    child: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        self._check_child(self.child)


@dataclass(frozen=True)
class Abs(LatticeExpr):
    child: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        self._check_child(self.child)


@dataclass(frozen=True)
class Sum(LatticeExpr):
    left: LatticeExpr
    right: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        self._check_child(self.left)
        self._check_child(self.right)


@dataclass(frozen=True)
class Join(LatticeExpr):
    left: LatticeExpr
    right: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        self._check_child(self.left)
        self._check_child(self.right)


@dataclass(frozen=True)
class Meet(LatticeExpr):
    left: LatticeExpr
    right: LatticeExpr

    def __post_init__(self) -> None:
        super().__post_init__()
        self._check_child(self.left)
        self._check_child(self.right)


def delta(k: int, n: int) -> Generator:
    """The k-th generator of the lattice over n generators."""
    return Generator(n, k)


def zero(n: int) -> Zero:
    return Zero(n)


# --------------------------------------------------------------------------
# Evaluation


def eval_expr(f: LatticeExpr, xi: Point) -> Fraction:
    """Evaluate f at a rational point, exactly.

    Evaluation at a fixed point is a lattice homomorphism in f: generators map
    to coordinates, joins to max, meets to min, and linear nodes act linearly.
    """
    if xi.dim != f.n:
        raise DimensionMismatch(
            f"point has {xi.dim} coordinates, expression has {f.n} generators"
        )
    return _ev(f, xi)


def _ev(f: LatticeExpr, xi: Point) -> Fraction:
    if isinstance(f, Generator):
        return xi[f.index - 1]
    if isinstance(f, Zero):
        return Fraction(0)
    if isinstance(f, Scale):
        return f.coeff * _ev(f.child, xi)
    if isinstance(f, Neg):
        return -_ev(f.child, xi)
    if isinstance(f, Abs):
        return abs(_ev(f.child, xi))
    if isinstance(f, Sum):
        return _ev(f.left, xi) + _ev(f.right, xi)
    if isinstance(f, Join):
        return max(_ev(f.left, xi), _ev(f.right, xi))
    if isinstance(f, Meet):
        return min(_ev(f.left, xi), _ev(f.right, xi))
    raise FreeLatticeError(f"unknown node type {type(f).__name__}")


# --------------------------------------------------------------------------
# Projection onto a subset of generators


def project_onto(f: LatticeExpr, keep) -> LatticeExpr:
    """Substitute the zero function for every generator outside ``keep``.

    Semantically this is xi -> f(xi restricted to keep), the band projection
    determined by the kept generators.  ``keep`` must be a nonempty subset of
    {1..n}.
    """
    kept = frozenset(int(k) for k in keep)
    if not kept:
        raise FreeLatticeError("projection subset must be nonempty")
    bad = [k for k in kept if not 1 <= k <= f.n]
    if bad:
        raise FreeLatticeError(f"projection index {min(bad)} out of range 1..{f.n}")
    return _proj(f, kept)


def _proj(f: LatticeExpr, kept: frozenset[int]) -> LatticeExpr:
    if isinstance(f, Generator):
        return f if f.index in kept else Zero(f.n)
    if isinstance(f, Zero):
        return f
    if isinstance(f, Scale):
        return Scale(f.n, f.coeff, _proj(f.child, kept))
    if isinstance(f, Neg):
        return Neg(f.n, _proj(f.child, kept))
    if isinstance(f, Abs):
        return Abs(f.n, _proj(f.child, kept))
    if isinstance(f, Sum):
        return Sum(f.n, _proj(f.left, kept), _proj(f.right, kept))
    if isinstance(f, Join):
        return Join(f.n, _proj(f.left, kept), _proj(f.right, kept))
    if isinstance(f, Meet):
        return Meet(f.n, _proj(f.left, kept), _proj(f.right, kept))
    raise FreeLatticeError(f"unknown node type {type(f).__name__}")


# --------------------------------------------------------------------------
# Printer.  print_expr is the inverse of parse_expr on trees:
# parse_expr(print_expr(f), f.n) is structurally equal to f.


def print_expr(f: LatticeExpr) -> str:
    if isinstance(f, Generator):
        return f"x{f.index}"
    if isinstance(f, Zero):
        return "0"
    if isinstance(f, Scale):
        sign = "-" if f.coeff < 0 else ""
        body = print_expr(f.child)
        # The child must re-parse as a unary; Neg is legal there but is
        # parenthesized anyway for readability.
        if isinstance(f.child, (Sum, Join, Meet, Neg)):
            body = f"({body})"
        return f"{sign}{_literal(abs(f.coeff))}*{body}"
    if isinstance(f, Neg):
        body = print_expr(f.child)
        # Scale must be parenthesized: "-2*x1" would re-parse as a negative
        # scalar, not as Neg.  Zero must be parenthesized since "-0" re-parses
        # as the zero function itself.
        if isinstance(f.child, (Sum, Join, Meet, Scale, Zero)):
            body = f"({body})"
        return f"-{body}"
    if isinstance(f, Abs):
        return f"|{print_expr(f.child)}|"
    if isinstance(f, Sum):
        left = print_expr(f.left)
        if isinstance(f.right, Neg):
            inner = f.right.child
            body = print_expr(inner)
            if isinstance(inner, Sum):
                body = f"({body})"
            return f"{left} - {body}"
        body = print_expr(f.right)
        if isinstance(f.right, Sum):
            body = f"({body})"
        return f"{left} + {body}"
    if isinstance(f, Join):
        left = print_expr(f.left)
        if isinstance(f.left, Sum):
            left = f"({left})"
        right = print_expr(f.right)
        if isinstance(f.right, (Sum, Join)):
            right = f"({right})"
        return f"{left} v {right}"
    if isinstance(f, Meet):
        left = print_expr(f.left)
        if isinstance(f.left, (Sum, Join)):
            left = f"({left})"
        right = print_expr(f.right)
        if isinstance(f.right, (Sum, Join, Meet)):
            right = f"({right})"
        return f"{left} /\\ {right}"
    raise FreeLatticeError(f"unknown node type {type(f).__name__}")


def _literal(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# --------------------------------------------------------------------------
# Parser


_PUNCT = "+-*()|v"


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "gen" | "meet" | "slash" | "op" | "end"
    pos: int
    value: int = 0
    op: str = ""


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", i, value=int(text[i:j])))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < size and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError("generator name needs an index, like x1", i)
            tokens.append(_Token("gen", i, value=int(text[i + 1 : j])))
            i = j
            continue
        if ch == "/":
            if i + 1 < size and text[i + 1] == "\\":
                tokens.append(_Token("meet", i))
                i += 2
            else:
                tokens.append(_Token("slash", i))
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token("op", i, op=ch))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", size))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.op in ops

    def expect_op(self, op: str, what: str) -> None:
        tok = self.take()
        if tok.kind != "op" or tok.op != op:
            raise ExprSyntaxError(f"expected {what}", tok.pos)

    # expr := join (('+' | '-') join)*
    def parse_sum(self) -> LatticeExpr:
        node = self.parse_join()
        while self.at_op("+", "-"):
            op = self.take().op
            rhs = self.parse_join()
            if op == "-":
                rhs = Neg(self.n, rhs)
            node = Sum(self.n, node, rhs)
        return node

    def parse_join(self) -> LatticeExpr:
        node = self.parse_meet()
        while self.at_op("v"):
            self.take()
            node = Join(self.n, node, self.parse_meet())
        return node

    def parse_meet(self) -> LatticeExpr:
        node = self.parse_unary()
        while self.peek().kind == "meet":
            self.take()
            node = Meet(self.n, node, self.parse_unary())
        return node

    def parse_unary(self) -> LatticeExpr:
        if self.at_op("-"):
            pos = self.take().pos
            if self.peek().kind == "int":
                # A minus directly before a number is a negative scalar, so
                # "-2*x1" means Scale(-2, x1).  Negating a scaled expression
                # requires parentheses: "-(2*x1)".
                lit = self.parse_rational()
                if self.at_op("*"):
                    self.take()
                    return Scale(self.n, -lit, self.parse_unary())
                if lit == 0:
                    return Zero(self.n)
                raise ExprSyntaxError(
                    "a scalar must be followed by '*' (bare constants are not homogeneous)",
                    pos,
                )
            return Neg(self.n, self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> LatticeExpr:
        tok = self.peek()
        if tok.kind == "int":
            lit = self.parse_rational()
            if self.at_op("*"):
                self.take()
                return Scale(self.n, lit, self.parse_unary())
            if lit == 0:
                return Zero(self.n)
            raise ExprSyntaxError(
                "a scalar must be followed by '*' (bare constants are not homogeneous)",
                tok.pos,
            )
        if tok.kind == "gen":
            self.take()
            if not 1 <= tok.value <= self.n:
                raise ExprSyntaxError(
                    f"generator index {tok.value} out of range 1..{self.n}", tok.pos
                )
            return Generator(self.n, tok.value)
        if tok.kind == "op" and tok.op == "|":
            self.take()
            inner = self.parse_sum()
            self.expect_op("|", "closing '|'")
            return Abs(self.n, inner)
        if tok.kind == "op" and tok.op == "(":
            self.take()
            inner = self.parse_sum()
            self.expect_op(")", "closing ')'")
            return inner
        raise ExprSyntaxError("expected an operand", tok.pos)

    def parse_rational(self) -> Fraction:
        tok = self.take()
        assert tok.kind == "int"
        value = Fraction(tok.value)
        if self.peek().kind == "slash":
            self.take()
            den = self.take()
            if den.kind != "int":
                raise ExprSyntaxError("expected a denominator", den.pos)
            if den.value == 0:
                raise ExprSyntaxError("zero denominator", den.pos)
            value = Fraction(tok.value, den.value)
        return value


def parse_expr(text: str, n: int) -> LatticeExpr:
    """Parse an expression over generators x1..xn.

    Raises :class:`ExprSyntaxError` with the offending position on malformed
    input or on a generator index outside 1..n.
    """
    if n < 1:
        raise FreeLatticeError("generator count must be at least 1")
    parser = _Parser(text, n)
    node = parser.parse_sum()
    tail = parser.peek()
    if tail.kind != "end":
        raise ExprSyntaxError("unexpected trailing input", tail.pos)
    return node
