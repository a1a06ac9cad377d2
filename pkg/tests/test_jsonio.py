"""Deterministic JSON encoding: rational strings, 17-digit floats, and the
byte-stable canonical serializer."""

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelattice.errors import FreeLatticeError
from freelattice.jsonio import (
    canonical_dumps,
    format_float,
    parse_rational,
    rational_str,
    to_jsonable,
)


def test_rational_rendering():
    assert rational_str(Fraction(3, 2)) == "3/2"
    assert rational_str(Fraction(4, 2)) == "2"
    assert rational_str(Fraction(-5, 10)) == "-1/2"
    assert rational_str(Fraction(0)) == "0"
    assert rational_str(Fraction(7, -3)) == "-7/3"


def test_rational_parsing():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -7 ") == Fraction(-7)
    assert parse_rational("0") == 0
    for bad in ("", "x", "1/0", "1.5.2", "1/2/3"):
        with pytest.raises(FreeLatticeError):
            parse_rational(bad)


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(q):
    assert parse_rational(rational_str(q)) == q


def test_float_formatting():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1.0"
    assert format_float(-2.5) == "-2.5"
    assert "e" in format_float(1e30)
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(FreeLatticeError):
            format_float(bad)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_formatting_round_trips(x):
    assert float(format_float(x)) == x


def test_to_jsonable_rewrites_fractions_and_tuples():
    doc = {
        "a": Fraction(1, 3),
        "b": (Fraction(2), [Fraction(-1, 2)]),
        "c": {"d": 5, "e": "text"},
    }
    assert to_jsonable(doc) == {
        "a": "1/3",
        "b": ["2", ["-1/2"]],
        "c": {"d": 5, "e": "text"},
    }


def test_canonical_dumps_is_deterministic_and_ordered():
    doc = {"z": 1, "a": [True, False, None], "m": {"k": Fraction(5, 4)}}
    text = canonical_dumps(doc)
    assert text == '{"z": 1, "a": [true, false, null], "m": {"k": "5/4"}}'
    assert canonical_dumps(doc) == text
    # Key order is insertion order, not alphabetical.
    assert text.index('"z"') < text.index('"a"')


def test_canonical_dumps_floats_and_unicode():
    assert canonical_dumps({"x": 0.1}) == '{"x": 0.10000000000000001}'
    assert canonical_dumps({"x": 2.0}) == '{"x": 2.0}'
    out = canonical_dumps({"s": "ε"})
    assert out == '{"s": "\\u03b5"}'
    assert json.loads(out) == {"s": "ε"}


def test_canonical_dumps_rejects_unknown_types():
    with pytest.raises(FreeLatticeError):
        canonical_dumps({"x": object()})
    with pytest.raises(FreeLatticeError):
        canonical_dumps({"x": float("nan")})


@given(
    st.recursive(
        st.one_of(
            st.none(),
            st.booleans(),
            st.integers(min_value=-(10**9), max_value=10**9),
            st.floats(allow_nan=False, allow_infinity=False),
            st.text(max_size=12),
            st.fractions(max_denominator=100),
        ),
        lambda leaf: st.one_of(
            st.lists(leaf, max_size=4),
            st.dictionaries(st.text(max_size=6), leaf, max_size=4),
        ),
        max_leaves=20,
    )
)
def test_canonical_dumps_emits_valid_json(doc):
    parsed = json.loads(canonical_dumps(doc))
    assert parsed == json.loads(canonical_dumps(to_jsonable(doc)))
