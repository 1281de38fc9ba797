"""
Exhaustive comparisons of the dependency tuple machinery against brute-force
rewriting.  Run with ``pytest --slow``.
"""

from __future__ import annotations

import pytest

from datalad_pirc.dependency_tuples import (
    canonical_parallel_problem,
    canonical_sequential_problem,
    cplx_bruteforce,
    msdc,
    problem_complexity,
    sharp,
)
from datalad_pirc.interpretation import interpretations_from_json, sharp_term_value
from datalad_pirc.rewriting import (
    INNERMOST,
    PARALLEL_INNERMOST,
    Finite,
    RelativeInnermost,
    argument_normalize,
    derivation_height,
    empirical_complexity,
)
from datalad_pirc.terms import subterm_at
from datalad_pirc.tpdb import parse_term
from datalad_pirc.transform import delta
from datalad_pirc.trs import _ground_terms_by_size, enumerate_ground_basic

from .conftest import load_system
from .test_interpretation import DOUBLES_CERTIFICATE, SIZE_CERTIFICATE

pytestmark = pytest.mark.slow

CAP = 100_000


@pytest.mark.parametrize("name,max_size", [("size", 7), ("mod", 7), ("doubles", 7)])
def test_chain_complexity_is_parallel_height(load_trs, name: str, max_size) -> None:
    trs = load_trs(name)
    assert problem_complexity(
        canonical_parallel_problem(trs), max_size, cap=CAP
    ) == empirical_complexity(trs, PARALLEL_INNERMOST, max_size, cap=CAP)


@pytest.mark.parametrize("name", ["size", "doubles"])
def test_sequential_chain_complexity_is_innermost_height(load_trs, name) -> None:
    trs = load_trs(name)
    assert problem_complexity(
        canonical_sequential_problem(trs), 6, cap=CAP
    ) == empirical_complexity(trs, INNERMOST, 6, cap=CAP)


@pytest.mark.parametrize("name", ["size", "mod"])
def test_relative_system_preserves_complexity(load_trs, name: str) -> None:
    trs = load_trs(name)
    problem = canonical_parallel_problem(trs)
    strategy = RelativeInnermost(delta(problem))
    for t in enumerate_ground_basic(trs, 6, CAP).terms:
        t_sharp = sharp(t, trs)
        assert derivation_height(t_sharp, strategy) == cplx_bruteforce(
            t_sharp, problem
        ), str(t)


def test_relative_system_counts_strict_only(size_trs) -> None:
    problem = canonical_parallel_problem(size_trs)
    reduced = problem.with_strict(problem.dts[:2])
    strategy = RelativeInnermost(delta(reduced))
    for t in enumerate_ground_basic(size_trs, 6, CAP).terms:
        t_sharp = sharp(t, size_trs)
        assert derivation_height(t_sharp, strategy) == cplx_bruteforce(
            t_sharp, reduced
        )


def test_heights_along_maximal_chains(size_trs) -> None:
    # dh(t) is the largest sum, over a maximal chain of nested calls, of the
    # heights of those calls once their arguments are normal
    for batch in _ground_terms_by_size(size_trs.symbols, 6):
        for t in batch:
            chains = msdc(t, size_trs)
            best = max(
                sum(
                    derivation_height(
                        argument_normalize(subterm_at(t, p), size_trs),
                        PARALLEL_INNERMOST,
                        size_trs,
                    ).n
                    for p in chain
                )
                for chain in chains
            )
            assert derivation_height(t, PARALLEL_INNERMOST, size_trs) == Finite(
                best
            ), str(t)


@pytest.mark.parametrize("name", ["size", "mod", "doubles", "recursion_3"])
def test_parallel_never_slower(load_trs, name: str) -> None:
    trs = load_trs(name)
    for t in enumerate_ground_basic(trs, 6, CAP).terms:
        parallel = derivation_height(t, PARALLEL_INNERMOST, trs)
        sequential = derivation_height(t, INNERMOST, trs)
        assert parallel.n <= sequential.n, str(t)


def test_no_parallelism_same_heights() -> None:
    trs = load_system("plus_only")
    irc = empirical_complexity(trs, INNERMOST, 8, cap=CAP)
    assert irc == empirical_complexity(trs, PARALLEL_INNERMOST, 8, cap=CAP)
    assert irc[-1].value == Finite(6)


def test_nested_recursion_speedup(load_trs) -> None:
    trs = load_trs("recursion_3")
    t = parse_term("f3(s(s(s(a))))", trs.signature)
    parallel = derivation_height(t, PARALLEL_INNERMOST, trs)
    sequential = derivation_height(t, INNERMOST, trs)
    assert parallel.n < sequential.n


@pytest.mark.parametrize(
    "name,certificate", [("size", SIZE_CERTIFICATE), ("doubles", DOUBLES_CERTIFICATE)]
)
def test_certified_bound_is_sound(load_trs, name: str, certificate) -> None:
    trs = load_trs(name)
    problem = canonical_parallel_problem(trs)
    [interpretation] = interpretations_from_json(certificate, problem)
    for t in enumerate_ground_basic(trs, 8, CAP).terms:
        height = derivation_height(t, PARALLEL_INNERMOST, trs)
        assert height.n <= sharp_term_value(sharp(t, trs), interpretation), str(t)
