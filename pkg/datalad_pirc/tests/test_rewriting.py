from __future__ import annotations

import pytest

from datalad_pirc.consts import MAX_TERM_SIZE
from datalad_pirc.errors import NotSupportedError
from datalad_pirc.rewriting import (
    INNERMOST,
    PARALLEL_INNERMOST,
    AtLeast,
    Finite,
    LongestPath,
    Omega,
    RelativeInnermost,
    all_rewrite_traces,
    argument_normalize,
    derivation_height,
    empirical_complexity,
    fit_growth_degree,
    format_redexes,
    innermost_redexes,
    innermost_successors,
    is_normal_form,
    normal_forms,
    parallel_innermost_successors,
    relative_innermost_successors,
    rewrite_trace,
    successor_function,
    sup,
)
from datalad_pirc.tpdb import parse, parse_term

from .conftest import load_system

RUNNING = "size(Tree(Zero, Nil, Tree(Zero, Nil, Nil)))"


def peano(n: int) -> str:
    return "S(" * n + "Zero" + ")" * n


@pytest.fixture
def term(size_trs):
    def parse(text, trs=size_trs):
        return parse_term(text, trs.signature, ["x", "y"])

    return parse


def test_innermost_redexes(size_trs, term) -> None:
    t = term("S(plus(size(Nil), size(Tree(Zero, Nil, Nil))))")
    assert innermost_redexes(t, size_trs) == {(1, 1), (1, 2)}
    assert innermost_redexes(term("S(Zero)"), size_trs) == set()
    assert is_normal_form(term("size(Zero)"), size_trs)
    assert not is_normal_form(t, size_trs)


def test_successors(size_trs, term) -> None:
    t = term("S(plus(size(Nil), size(Tree(Zero, Nil, Nil))))")
    assert innermost_successors(t, size_trs) == {
        term("S(plus(Zero, size(Tree(Zero, Nil, Nil))))"),
        term("S(plus(size(Nil), S(plus(size(Nil), size(Nil)))))"),
    }
    assert parallel_innermost_successors(t, size_trs) == {
        term("S(plus(Zero, S(plus(size(Nil), size(Nil)))))")
    }
    assert parallel_innermost_successors(term("S(Zero)"), size_trs) == set()


def test_parallel_successors_choose_rule_per_redex() -> None:
    trs = load_system("nonconfluent")
    t = parse_term("a", trs.signature)
    assert {str(u) for u in parallel_innermost_successors(t, trs)} == {
        "f(b, b)",
        "f(b, c)",
    }
    u = parse_term("f(b, c)", trs.signature)
    assert {str(v) for v in parallel_innermost_successors(u, trs)} == {"f(c, b)"}


def test_running_example_heights(size_trs, term) -> None:
    t = term(RUNNING)
    assert derivation_height(t, INNERMOST, size_trs) == Finite(7)
    assert derivation_height(t, PARALLEL_INNERMOST, size_trs) == Finite(5)
    assert derivation_height(term("size(Zero)"), INNERMOST, size_trs) == Finite(0)


def test_parallel_trace(size_trs, term) -> None:
    trace = rewrite_trace(term(RUNNING), PARALLEL_INNERMOST, size_trs)
    assert trace.length == 5
    assert not trace.exhausted and not trace.cycle
    assert [s.positions for s in trace.steps] == [
        ((),),
        ((1, 1), (1, 2)),
        ((1, 2, 1, 1), (1, 2, 1, 2)),
        ((1, 2, 1),),
        ((1,),),
    ]
    assert str(trace.steps[1].result) == "S(plus(Zero, S(plus(size(Nil), size(Nil)))))"
    assert str(trace.final) == "S(S(Zero))"


def test_innermost_trace(size_trs, term) -> None:
    trace = rewrite_trace(term(RUNNING), INNERMOST, size_trs)
    assert trace.length == 7
    assert str(trace.final) == "S(S(Zero))"
    assert all(len(s.positions) == 1 for s in trace.steps)


def test_trace_fuel(size_trs, term) -> None:
    trace = rewrite_trace(term(RUNNING), INNERMOST, size_trs, fuel=3)
    assert trace.exhausted
    assert trace.length == 3


def test_all_traces(size_trs, term) -> None:
    traces = all_rewrite_traces(
        term("S(plus(size(Nil), size(Nil)))"), INNERMOST, size_trs
    )
    # size(Nil) twice in either order, then plus
    assert len(traces) == 2
    assert {str(tr.final) for tr in traces} == {"S(Zero)"}
    assert all(tr.length == 3 for tr in traces)


def test_format_redexes(size_trs, term) -> None:
    t = term("S(plus(size(Nil), size(Zero)))")
    assert (
        format_redexes(t, sorted(innermost_redexes(t, size_trs)))
        == "S(plus([size(Nil)], size(Zero)))"
    )


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("m", range(6))
def test_relative_heights(size_relative, n: int, m: int) -> None:
    union = size_relative.union
    t = parse_term(f"plus({peano(n)}, {peano(m)})", union.signature)
    relative = RelativeInnermost(size_relative)
    assert derivation_height(t, relative) == Finite(1)
    assert derivation_height(t, INNERMOST, union) == Finite(n + 1)


def test_relative_successors(size_relative) -> None:
    union = size_relative.union
    t = parse_term(f"plus({peano(2)}, Zero)", union.signature)
    assert relative_innermost_successors(t, size_relative) == {
        (parse_term(peano(2), union.signature), 1)
    }


def test_omega_on_cycle() -> None:
    trs = load_system("nonconfluent")
    h = derivation_height(parse_term("a", trs.signature), PARALLEL_INNERMOST, trs)
    assert isinstance(h, Omega)
    assert str(h) == "ω"
    assert normal_forms(parse_term("a", trs.signature), INNERMOST, trs) == set()


def test_fuel_gives_lower_bound(size_trs, term) -> None:
    engine = LongestPath(lambda t: [], 1)
    assert engine.height(term("Zero")) == Finite(0)
    h = derivation_height(term(RUNNING), INNERMOST, size_trs, fuel=2)
    assert isinstance(h, AtLeast)
    assert not h.is_exact
    with pytest.raises(ValueError):
        LongestPath(lambda t: [], 0)


def test_height_algebra() -> None:
    assert Finite(2) + AtLeast(3) == AtLeast(5)
    assert isinstance(Finite(2) + Omega(), Omega)
    assert Finite(2).join(Finite(5)) == Finite(5)
    assert Finite(7).join(AtLeast(5)) == AtLeast(7)
    assert sup([]) == Finite(0)
    assert sup([Finite(1), Omega(), Finite(3)]) == Omega()
    assert [h.to_json() for h in (Finite(3), AtLeast(2), Omega())] == [
        3,
        {"at_least": 2},
        "omega",
    ]


def test_argument_normalize(size_trs, term) -> None:
    t = term("plus(size(Nil), S(size(Tree(Zero, Nil, Nil))))")
    assert argument_normalize(t, size_trs) == term("plus(Zero, S(S(Zero)))")
    assert argument_normalize(term("size(Nil)"), size_trs) == term("size(Nil)")
    trs = load_system("nonconfluent")
    with pytest.raises(NotSupportedError):
        argument_normalize(parse_term("f(a, b)", trs.signature), trs)


def test_empirical_size_rows(size_trs) -> None:
    rows = empirical_complexity(size_trs, INNERMOST, 2)
    assert [(r.n, r.value, r.truncated) for r in rows] == [
        (1, Finite(0), False),
        (2, Finite(1), False),
    ]


def test_empirical_truncation(size_trs) -> None:
    rows = empirical_complexity(size_trs, INNERMOST, 4, cap=3)
    assert rows[-1].truncated
    assert isinstance(rows[-1].value, AtLeast)


def sequential_steps(n: int) -> int:
    return n * (n + 1) // 2 + 2 * n + 1


def test_doubles_heights(doubles_trs) -> None:
    for n in range(1, 13):
        t = parse_term(f"doubles({peano(n)})", doubles_trs.signature)
        assert derivation_height(t, PARALLEL_INNERMOST, doubles_trs) == Finite(n + 2)
        assert rewrite_trace(t, INNERMOST, doubles_trs).length == sequential_steps(n)
        if n <= 4:
            assert derivation_height(t, INNERMOST, doubles_trs) == Finite(
                sequential_steps(n)
            )


def test_fit_growth_degree_doubles(doubles_trs) -> None:
    irc = empirical_complexity(doubles_trs, INNERMOST, 12)
    pirc = empirical_complexity(doubles_trs, PARALLEL_INNERMOST, 12)
    assert [r.n for r in irc] == list(range(1, 13))
    assert fit_growth_degree([(r.n, r.value) for r in irc]) == 2
    assert fit_growth_degree([(r.n, r.value) for r in pirc]) == 1


@pytest.mark.parametrize(
    "values,degree",
    [
        ([5] * 12, 0),
        ([n for n in range(1, 13)], 1),
        ([n * n + 3 for n in range(1, 13)], 2),
        ([n**3 for n in range(1, 13)], 3),
    ],
)
def test_fit_growth_degree(values, degree: int) -> None:
    samples = [(n, Finite(v)) for n, v in enumerate(values, start=1)]
    assert fit_growth_degree(samples) == degree


def test_fit_growth_degree_too_few_samples() -> None:
    assert fit_growth_degree([(1, Finite(1)), (2, Finite(2))]) is None
    assert fit_growth_degree([(n, AtLeast(n)) for n in range(1, 10)]) is None
    assert fit_growth_degree([(n, Finite(2**n)) for n in range(1, 30)]) is None


def test_partial_heights_are_not_memoized() -> None:
    # a ->= b closes a free cycle while b is still being measured
    relative = parse("(RULES b -> c a ->= b b ->= a)")
    engine = LongestPath(successor_function(RelativeInnermost(relative), None), 100)
    b, a = (parse_term(name, relative.union.signature) for name in "ba")
    assert engine.height(b) == Finite(1)
    assert a not in engine.memo
    assert engine.height(a) == Finite(1)


def test_deep_reductions() -> None:
    trs = parse("(VAR x)(RULES f(x) -> s(f(x)) h(a) -> a)")
    t = parse_term("f(a)", trs.signature)
    for strategy in (INNERMOST, PARALLEL_INNERMOST):
        h = derivation_height(t, strategy, trs, fuel=1500)
        assert isinstance(h, AtLeast)
        assert h.n == 1500
    trace = rewrite_trace(t, INNERMOST, trs, fuel=1500)
    assert trace.exhausted
    assert "s(s(s(" in str(trace.steps[-1].result)


def test_deep_relative_reductions() -> None:
    relative = parse("(VAR x)(RULES h(s(x)) -> h(x) g(x) ->= a)")
    depth = 1200
    t = parse_term(f"h({'s(' * depth}a{')' * depth})", relative.union.signature)
    assert derivation_height(t, RelativeInnermost(relative)) == Finite(depth)


def test_term_size_cap(doubles_trs) -> None:
    t = parse_term(f"doubles({peano(MAX_TERM_SIZE)})", doubles_trs.signature)
    h = derivation_height(t, PARALLEL_INNERMOST, doubles_trs)
    assert isinstance(h, AtLeast)
