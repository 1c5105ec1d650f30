"""Proposition parser and printer."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from proofdeck.kernel import (
    FALSE,
    TRUE,
    And,
    Atom,
    Imp,
    Not,
    Or,
    ParseError,
    parse_prop,
    pretty,
)

A, B, C = Atom("A"), Atom("B"), Atom("C")


def test_imp_is_right_associative():
    assert parse_prop("A -> B -> A") == Imp(A, Imp(B, A))


def test_not_normalizes_to_imp_false():
    assert parse_prop("~A") == Imp(A, FALSE)
    assert parse_prop("~A") == Not(A)
    assert parse_prop("~~A") == Imp(Imp(A, FALSE), FALSE)


def test_and_binds_tighter_than_or():
    assert parse_prop("A /\\ B \\/ C") == Or(And(A, B), C)


def test_or_binds_tighter_than_imp():
    assert parse_prop("A \\/ B -> C") == Imp(Or(A, B), C)


def test_not_binds_tightest():
    assert parse_prop("~A /\\ B") == And(Not(A), B)


def test_left_associativity():
    assert parse_prop("A /\\ B /\\ C") == And(And(A, B), C)
    assert parse_prop("A \\/ B \\/ C") == Or(Or(A, B), C)


def test_parens_and_whitespace():
    assert parse_prop("A /\\ (B \\/ C)") == And(A, Or(B, C))
    assert parse_prop("  ( A )  ") == A
    assert parse_prop("(A -> B) -> C") == Imp(Imp(A, B), C)


def test_constants():
    assert parse_prop("True") is TRUE
    assert parse_prop("False") is FALSE


def test_primed_and_underscored_names():
    assert parse_prop("x' -> _y0") == Imp(Atom("x'"), Atom("_y0"))


@pytest.mark.parametrize(
    "src",
    ["", "->", "A ->", "(A", "A)", "A B", "Lemma", "A -> Qed", "A /\\", "~"],
)
def test_parse_errors(src):
    with pytest.raises(ParseError):
        parse_prop(src)


def test_parse_error_offsets_are_byte_offsets():
    with pytest.raises(ParseError) as exc:
        parse_prop("A -> Lemma")
    assert exc.value.start == 5
    with pytest.raises(ParseError) as exc:
        parse_prop("A ? B")
    assert exc.value.start == 2


def test_pretty_examples():
    assert pretty(Imp(A, Imp(B, A))) == "A -> B -> A"
    assert pretty(Or(And(A, B), C)) == "A /\\ B \\/ C"
    assert pretty(Not(A)) == "~A"
    assert pretty(Imp(Imp(A, B), C)) == "(A -> B) -> C"
    assert pretty(And(A, Or(B, C))) == "A /\\ (B \\/ C)"
    assert pretty(TRUE) == "True"
    assert pretty(And(Not(A), B)) == "~A /\\ B"
    assert pretty(Not(And(A, B))) == "~(A /\\ B)"


_atoms = st.sampled_from([A, B, C, Atom("p"), Atom("q"), Atom("x'"), Atom("H_1")])

_props = st.recursive(
    _atoms | st.just(TRUE) | st.just(FALSE),
    lambda sub: st.one_of(
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Imp, sub, sub),
        st.builds(Not, sub),
    ),
    max_leaves=25,
)


@given(_props)
def test_pretty_parse_round_trip(p):
    assert parse_prop(pretty(p)) == p
