from __future__ import annotations

import time

import pytest

from datalad_pirc.errors import RuleError
from datalad_pirc.terms import Symbol, Var, app, term_size, variables
from datalad_pirc.tpdb import parse_term
from datalad_pirc.trs import (
    RelativeTrs,
    Rule,
    Trs,
    constructor_symbols,
    defined_positions,
    defined_symbols,
    enumerate_ground_basic,
    is_basic,
    is_constructor_term,
    rename_apart,
)

PLUS = Symbol("plus", 2)
S = Symbol("S", 1)
ZERO = Symbol("Zero", 0)


def test_rule_validation() -> None:
    with pytest.raises(RuleError):
        Rule(Var("x"), app(ZERO))
    with pytest.raises(RuleError, match="y"):
        Rule(app(S, Var("x")), Var("y"))
    rule = Rule(app(PLUS, app(ZERO), Var("y")), Var("y"))
    assert rule.root == PLUS
    assert str(rule) == "plus(Zero, y) -> y"


def test_signature(size_trs) -> None:
    names = [str(s) for s in size_trs.symbols]
    assert names == ["plus", "Zero", "S", "size", "Nil", "Tree"]
    assert {str(s) for s in defined_symbols(size_trs)} == {"plus", "size"}
    assert {str(s) for s in constructor_symbols(size_trs)} == {
        "Zero",
        "S",
        "Nil",
        "Tree",
    }
    assert len(size_trs) == 4
    assert [str(r) for r in size_trs.rules_for(PLUS)] == [
        "plus(Zero, y) -> y",
        "plus(S(x), y) -> S(plus(x, y))",
    ]


def test_basic_terms(size_trs) -> None:
    def term(text):
        return parse_term(text, size_trs.signature, ["x", "y"])

    assert is_basic(term("size(Tree(x, Nil, S(y)))"), size_trs)
    assert not is_basic(term("size(size(Nil))"), size_trs)
    assert not is_basic(term("S(Zero)"), size_trs)
    assert not is_basic(term("x"), size_trs)
    assert is_constructor_term(term("Tree(x, Nil, S(y))"), size_trs)
    assert defined_positions(
        term("S(plus(size(Nil), size(Tree(Zero, Nil, Nil))))"), size_trs
    ) == {(1,), (1, 1), (1, 2)}


def test_enumerate_ground_basic(size_trs) -> None:
    found = enumerate_ground_basic(size_trs, 3, 100)
    assert [str(t) for t in found.terms] == [
        "size(Zero)",
        "size(Nil)",
        "plus(Zero, Zero)",
        "plus(Zero, Nil)",
        "plus(Nil, Zero)",
        "plus(Nil, Nil)",
        "size(S(Zero))",
        "size(S(Nil))",
    ]
    assert not found.truncated
    assert found.complete_up_to == 3
    assert all(is_basic(t, size_trs) for t in found.terms)


def test_enumerate_ground_basic_sizes(size_trs) -> None:
    found = enumerate_ground_basic(size_trs, 6, 100_000)
    sizes = [term_size(t) for t in found.terms]
    assert sizes == sorted(sizes)
    assert len(set(found.terms)) == len(found.terms)
    assert max(sizes) == 6


def test_enumerate_ground_basic_truncated(size_trs) -> None:
    found = enumerate_ground_basic(size_trs, 3, 3)
    assert [str(t) for t in found.terms] == [
        "size(Zero)",
        "size(Nil)",
        "plus(Zero, Zero)",
    ]
    assert found.truncated
    assert found.complete_up_to == 2
    with pytest.raises(ValueError):
        enumerate_ground_basic(size_trs, 3, 0)


def test_enumerate_ground_basic_is_lazy(size_trs) -> None:
    full = enumerate_ground_basic(size_trs, 6, 100_000).terms
    start = time.monotonic()
    found = enumerate_ground_basic(size_trs, 60, 50)
    assert time.monotonic() - start < 5
    assert found.truncated
    assert found.terms == full[:50]
    # truncated argument pools still give the exact prefix
    for cap in (7, 300, 2000):
        assert enumerate_ground_basic(size_trs, 6, cap).terms == full[:cap]


def test_rename_apart(size_trs) -> None:
    rule = size_trs.rules[1]
    renamed = rename_apart(rule, {"x", "y"})
    assert str(renamed) == "plus(S(x0), y0) -> S(plus(x0, y0))"
    assert renamed.alpha_equivalent(rule)
    assert not variables(renamed.lhs) & {"x", "y"}
    ground = size_trs.rules[2]
    assert rename_apart(ground, {"x"}) is ground


def test_relative_trs(size_relative) -> None:
    assert isinstance(size_relative, RelativeTrs)
    assert len(size_relative.counted) == 3
    assert [str(r) for r in size_relative.free.rules] == [
        "plus(S(x), y) -> S(plus(x, y))"
    ]
    union = size_relative.union
    assert isinstance(union, Trs)
    assert len(union) == 4
    assert size_relative.is_counted(size_relative.counted.rules[0])
    assert not size_relative.is_counted(size_relative.free.rules[0])
