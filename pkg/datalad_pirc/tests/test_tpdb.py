from __future__ import annotations

import random
from typing import Sequence

import pytest

from datalad_pirc.dependency_tuples import canonical_parallel_problem
from datalad_pirc.errors import (
    AmbiguousSymbolError,
    ArityMismatchError,
    TpdbSyntaxError,
)
from datalad_pirc.fsspec import fixture_names, fixture_path
from datalad_pirc.terms import App, Symbol, SymbolKind, Term, Var, term_size, variables
from datalad_pirc.tpdb import load, parse, parse_term, serialize, tokenize
from datalad_pirc.transform import delta
from datalad_pirc.trs import RelativeTrs, Rule, Trs

from .conftest import load_system

SIZE_TEXT = """\
(VAR y x v l r)
(STRATEGY INNERMOST)
(RULES
  plus(Zero, y) -> y
  plus(S(x), y) -> S(plus(x, y))
  size(Nil) -> Zero
  size(Tree(v, l, r)) -> S(plus(size(l), size(r)))
)
"""


def test_parse_size(size_trs) -> None:
    assert isinstance(size_trs, Trs)
    assert len(size_trs) == 4
    assert str(size_trs.rules[3]) == "size(Tree(v, l, r)) -> S(plus(size(l), size(r)))"


def test_serialize_size(size_trs) -> None:
    assert serialize(size_trs) == SIZE_TEXT


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_roundtrip(name: str) -> None:
    system = load_system(name)
    assert parse(serialize(system)) == system


def test_relative(size_relative) -> None:
    assert isinstance(size_relative, RelativeTrs)
    text = serialize(size_relative)
    assert "  plus(S(x), y) ->= S(plus(x, y))\n" in text
    assert parse(text) == size_relative


@pytest.mark.parametrize("name", ["size", "mod", "doubles"])
def test_delta_roundtrip(load_trs, name: str) -> None:
    relative = delta(canonical_parallel_problem(load_trs(name)))
    text = serialize(relative)
    assert "#" in text and "Com_" in text
    assert parse(text) == relative


def test_sharp_and_compound_symbols() -> None:
    trs = parse("(VAR x)\n(RULES\n  f#(s(x)) -> Com_2(f#(x), g#(x))\n)\n")
    rule = trs.rules[0]
    assert rule.lhs.symbol == Symbol("f", 1, SymbolKind.SHARP)
    assert rule.rhs.symbol == Symbol.compound(2)


def test_signature_section() -> None:
    trs = parse("(VAR x)\n(RULES\n  f(x) -> x\n)\n(SIG (g 2) (c 0))\n")
    assert [str(s) for s in trs.symbols] == ["f", "g", "c"]
    assert [str(s) for s in trs.constructors] == ["g", "c"]
    text = serialize(trs)
    assert text.endswith("(SIG (g 2) (c 0))\n")
    assert parse(text) == trs


def test_empty() -> None:
    assert parse("(RULES )") == Trs()
    assert serialize(Trs()) == "(RULES )"


def test_comments_and_strategy(caplog) -> None:
    trs = parse("(COMMENT a (nested) comment)\n(STRATEGY FULL)\n(RULES a -> b)")
    assert len(trs) == 1
    assert "Strategy FULL is not supported" in caplog.text


def test_tokenize_minus_and_arrows() -> None:
    values = [t.value for t in tokenize("-(s(x), y) ->= -(x,y)")]
    assert " ".join(values) == "- ( s ( x ) , y ) ->= - ( x , y )"


@pytest.mark.parametrize(
    "text,error,line",
    [
        ("(RULES\n  f(a) -> f(a, a)\n)", ArityMismatchError, 2),
        ("(VAR x)\n(RULES\n  f(x(a)) -> a\n)", AmbiguousSymbolError, 3),
        ("(VAR x y)\n(RULES\n  f(x) -> y\n)", TpdbSyntaxError, 3),
        ("(VAR x)\n(RULES\n  x -> a\n)", TpdbSyntaxError, 3),
        ("(THEORY (AC f))", TpdbSyntaxError, 1),
        ("(RULES\n  f(a) -> a\n", TpdbSyntaxError, 3),
        ("(COMMENT never closed", TpdbSyntaxError, 1),
        ("(RULES f(a) => a)", TpdbSyntaxError, 1),
        ("(RULES Com_2(a) -> a)", ArityMismatchError, 1),
    ],
)
def test_syntax_errors(text: str, error, line: int) -> None:
    with pytest.raises(error) as excinfo:
        parse(text)
    assert excinfo.value.line == line


def test_parse_term(size_trs) -> None:
    t = parse_term("plus(S(x), Zero)", size_trs.signature, ["x"])
    assert str(t) == "plus(S(x), Zero)"
    with pytest.raises(TpdbSyntaxError, match="unknown function symbol"):
        parse_term("minus(Zero, Zero)", size_trs.signature)
    with pytest.raises(ArityMismatchError):
        parse_term("plus(Zero)", size_trs.signature)
    with pytest.raises(TpdbSyntaxError, match="after term"):
        parse_term("Zero Zero", size_trs.signature)


def test_load_fixture() -> None:
    assert load("fixture:size") == load_system("size")
    assert load(str(fixture_path("mod"))) == load_system("mod")


DEFINED = [Symbol("f", 1), Symbol("g", 2), Symbol("h", 1)]
CONSTRUCTORS = [Symbol("a", 0), Symbol("b", 0), Symbol("s", 1), Symbol("c", 2)]


def random_term(
    rng: random.Random, symbols: Sequence[Symbol], names: Sequence[str], depth: int
) -> Term:
    if depth == 0 or rng.random() < 0.35:
        leaves = [App(s) for s in symbols if not s.arity]
        return rng.choice(leaves + [Var(n) for n in names])
    f = rng.choice([s for s in symbols if s.arity])
    return App(
        f, tuple(random_term(rng, symbols, names, depth - 1) for _ in range(f.arity))
    )


def random_rule(rng: random.Random) -> Rule:
    root = rng.choice(DEFINED)
    lhs = App(
        root,
        tuple(random_term(rng, CONSTRUCTORS, "xyz", 2) for _ in range(root.arity)),
    )
    rhs = random_term(rng, DEFINED + CONSTRUCTORS, sorted(variables(lhs)), 3)
    return Rule(lhs, rhs)


@pytest.mark.parametrize("seed", range(200))
def test_random_roundtrip(seed: int) -> None:
    rng = random.Random(seed)
    rules = tuple(random_rule(rng) for _ in range(rng.randint(1, 5)))
    system = Trs(rules)
    if len(rules) > 1 and rng.random() < 0.3:
        k = rng.randint(1, len(rules) - 1)
        system = RelativeTrs(Trs(rules[:k]), Trs(rules[k:]))
    assert parse(serialize(system)) == system


def test_deep_terms() -> None:
    depth = 5000
    text = "s(" * depth + "a" + ")" * depth
    signature = [Symbol("s", 1), Symbol("a", 0)]
    t = parse_term(text, signature)
    assert term_size(t) == depth + 1
    assert str(t) == text
    assert parse_term(str(t), signature) == t
    trs = parse(f"(RULES f({text}) -> a)")
    assert parse(serialize(trs)) == trs
