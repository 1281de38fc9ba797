from __future__ import annotations

import random

import pytest

from datalad_pirc.polynomials import (
    Polynomial,
    monomials,
    parse_polynomial,
    poly_ge,
    poly_gt,
)


def p(text: str, nvars: int) -> Polynomial:
    return parse_polynomial(text, nvars)


@pytest.mark.parametrize(
    "text,nvars,point,value",
    [
        ("x1 + x2", 2, [2, 5], 7),
        ("2*x1 + x1^2", 1, [3], 15),
        ("1 + x2 + x3", 3, [9, 1, 1], 3),
        ("2*(x1 + 1)", 1, [4], 10),
        ("7", 0, [], 7),
    ],
)
def test_evaluate(text: str, nvars: int, point, value: int) -> None:
    assert p(text, nvars).evaluate(point) == value


def test_str() -> None:
    assert str(p("x1^2 + 2*x1", 1)) == "2*x1 + x1^2"
    assert str(p("x3 + 1 + x2", 3)) == "1 + x2 + x3"
    assert str(p("x1 + x2", 2) - p("2*x2 + 1", 2)) == "-1 + x1 - x2"
    assert str(Polynomial(2)) == "0"


def test_degree_and_constant() -> None:
    q = p("3 + x1*x2 + x1", 2)
    assert q.degree == 2
    assert q.constant_term == 3
    assert Polynomial.constant(4, 2).degree == 0
    assert Polynomial.sum_of_variables(3) == p("x1 + x2 + x3", 3)


def test_compose() -> None:
    outer = p("2*x1 + x1^2", 1)
    inner = p("1 + x1 + x2", 2)
    assert outer.compose([inner]) == p("2*(1 + x1 + x2) + (1 + x1 + x2)^2", 2)
    assert Polynomial.constant(1, 2).compose_into([inner, inner], 2) == (
        Polynomial.constant(1, 2)
    )
    with pytest.raises(ValueError):
        outer.compose([inner, inner])


def test_compose_agrees_with_evaluation() -> None:
    rng = random.Random(5)
    mons = monomials(2, 2)
    for _ in range(50):
        outer = Polynomial.from_dict(2, {m: rng.randint(0, 3) for m in mons})
        args = [
            Polynomial.from_dict(2, {m: rng.randint(0, 2) for m in mons})
            for _ in range(2)
        ]
        point = [rng.randint(0, 4), rng.randint(0, 4)]
        assert outer.compose(args).evaluate(point) == outer.evaluate(
            [a.evaluate(point) for a in args]
        )


def test_monomials() -> None:
    assert monomials(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(monomials(2, 2)) == 6
    assert monomials(0, 3) == [()]


def test_orientation() -> None:
    assert poly_ge(p("x1 + 1", 1), p("x1", 1))
    assert poly_gt(p("x1 + 1", 1), p("x1", 1))
    assert poly_ge(p("x1", 1), p("x1", 1))
    assert not poly_gt(p("x1", 1), p("x1", 1))
    assert not poly_ge(p("2*x1", 1), p("x1^2", 1))
    # sound but incomplete: x1^2 >= x1 on naturals, not absolutely positive
    assert not poly_ge(p("x1^2", 1), p("x1", 1))


def test_natural() -> None:
    assert p("x1 + 2", 1).is_natural
    assert not (p("x1", 1) - p("2", 1)).is_natural
    assert (p("x1", 1) - p("x1", 1)).is_zero


@pytest.mark.parametrize(
    "text,nvars",
    [("x2", 1), ("x1 +", 1), ("(x1", 1), ("x1^x1", 1), ("x1 ) 1", 1), ("y", 1)],
)
def test_parse_errors(text: str, nvars: int) -> None:
    with pytest.raises(ValueError):
        parse_polynomial(text, nvars)


def test_invalid_construction() -> None:
    with pytest.raises(ValueError):
        Polynomial.from_dict(1, {(1, 0): 1})
    with pytest.raises(ValueError):
        Polynomial.variable(2, 2)
    with pytest.raises(ValueError):
        p("x1", 1) + p("x1", 2)


def random_polynomial(rng: random.Random, nvars: int) -> Polynomial:
    return Polynomial.from_dict(
        nvars, {m: rng.randint(0, 3) for m in monomials(nvars, 2) if rng.random() < 0.5}
    )


def test_orientation_is_sound_on_random_points() -> None:
    rng = random.Random(11)
    checked = 0
    while checked < 1000:
        nvars = rng.randint(0, 3)
        left = random_polynomial(rng, nvars)
        if rng.random() < 0.8:
            right = Polynomial.from_dict(
                nvars, {m: rng.randint(0, c) for m, c in left.terms}
            )
        else:
            right = random_polynomial(rng, nvars)
        if not poly_ge(left, right):
            continue
        point = [rng.randint(0, 50) for _ in range(nvars)]
        assert left.evaluate(point) >= right.evaluate(point)
        if poly_gt(left, right):
            assert left.evaluate(point) > right.evaluate(point)
        checked += 1
