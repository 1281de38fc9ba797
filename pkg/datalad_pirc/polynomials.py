"""
Multivariate polynomials with integer coefficients over variables
``x1, ..., xn`` (stored 0-based).

Interpretations only use natural coefficients; differences of polynomials
may have negative ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
import re
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    nvars: int
    #: ``(exponents, coefficient)`` pairs, sorted, without zero coefficients
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, coefficients: Mapping[Monomial, int]) -> Polynomial:
        for m in coefficients:
            if len(m) != nvars or any(e < 0 for e in m):
                raise ValueError(f"invalid monomial {m} for {nvars} variables")
        return cls(nvars, tuple(sorted((m, c) for m, c in coefficients.items() if c)))

    @classmethod
    def constant(cls, value: int, nvars: int = 0) -> Polynomial:
        return cls.from_dict(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars}")
        return cls(nvars, (((0,) * index + (1,) + (0,) * (nvars - index - 1), 1),))

    @classmethod
    def linear(cls, coefficients: Sequence[int], constant: int = 0) -> Polynomial:
        """``constant + c1*x1 + ... + cn*xn``"""
        n = len(coefficients)
        mapping = {(0,) * n: constant}
        for i, c in enumerate(coefficients):
            mapping[_unit(i, n)] = c
        return cls.from_dict(n, mapping)

    @classmethod
    def sum_of_variables(cls, nvars: int) -> Polynomial:
        return cls.linear([1] * nvars)

    @cached_property
    def coefficients(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, monomial: Monomial) -> int:
        return self.coefficients.get(monomial, 0)

    @property
    def constant_term(self) -> int:
        return self.coefficient((0,) * self.nvars)

    @property
    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_natural(self) -> bool:
        return all(c >= 0 for _, c in self.terms)

    def _check_compatible(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"polynomials over {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_compatible(other)
        total = dict(self.terms)
        for m, c in other.terms:
            total[m] = total.get(m, 0) + c
        return Polynomial.from_dict(self.nvars, total)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check_compatible(other)
        total = dict(self.terms)
        for m, c in other.terms:
            total[m] = total.get(m, 0) - c
        return Polynomial.from_dict(self.nvars, total)

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check_compatible(other)
        total: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                total[m] = total.get(m, 0) + c1 * c2
        return Polynomial.from_dict(self.nvars, total)

    def scale(self, factor: int) -> Polynomial:
        return Polynomial.from_dict(self.nvars, {m: c * factor for m, c in self.terms})

    def __pow__(self, exponent: int) -> Polynomial:
        result = Polynomial.constant(1, self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def compose(self, args: Sequence[Polynomial]) -> Polynomial:
        """Substitute ``args[i]`` for ``x(i+1)``; all ``args`` share one arity"""
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(args)}")
        if not args:
            raise ValueError("composing a constant needs the target arity")
        return self.compose_into(args, args[0].nvars)

    def compose_into(self, args: Sequence[Polynomial], nvars: int) -> Polynomial:
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            try:
                return powers[i, e]
            except KeyError:
                p = powers[i, e] = args[i] if e == 1 else power(i, e - 1) * args[i]
                return p

        result = Polynomial(nvars)
        for m, c in self.terms:
            term = Polynomial.constant(c, nvars)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        total = 0
        for m, c in self.terms:
            value = c
            for v, e in zip(point, m):
                value *= v**e
            total += value
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda mc: (sum(mc[0]), _reversed(mc[0])))
        out = ""
        for m, c in ordered:
            text = _render_monomial(m, abs(c))
            if not out:
                out = text if c > 0 else f"-{text}"
            else:
                out += f" {'+' if c > 0 else '-'} {text}"
        return out


def _unit(i: int, n: int) -> Monomial:
    return (0,) * i + (1,) + (0,) * (n - i - 1)


def _reversed(m: Monomial) -> Tuple[int, ...]:
    return tuple(-e for e in m)


def _render_monomial(m: Monomial, c: int) -> str:
    factors = [
        f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m, start=1) if e
    ]
    if not factors:
        return str(c)
    if c != 1:
        factors.insert(0, str(c))
    return "*".join(factors)


def monomials(nvars: int, max_degree: int) -> List[Monomial]:
    """All monomials of total degree at most ``max_degree``, graded order"""
    found = [
        m for m in product(range(max_degree + 1), repeat=nvars) if sum(m) <= max_degree
    ]
    return sorted(found, key=lambda m: (sum(m), _reversed(m)))


def poly_ge(p: Polynomial, q: Polynomial) -> bool:
    """
    Sufficient criterion for ``p >= q`` at all natural points: no coefficient
    of ``p - q`` is negative
    """
    return (p - q).is_natural


def poly_gt(p: Polynomial, q: Polynomial) -> bool:
    diff = p - q
    return diff.is_natural and diff.constant_term >= 1


TOKEN_RX = re.compile(r"\s*(?:(\d+)|x(\d+)|(\S))")


def _tokens(text: str) -> Iterator[Tuple[str, str]]:
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = TOKEN_RX.match(text, pos)
        assert m is not None
        number, var, other = m.groups()
        if number is not None:
            yield ("num", number)
        elif var is not None:
            yield ("var", var)
        else:
            yield ("op", other)
        pos = m.end()
    yield ("end", "")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """
    Parse sums of products such as ``"2*x1 + x1^2 + 1"`` or ``"2*(x1 + 1)"``
    over ``x1, ..., x<nvars>``
    """
    tokens = list(_tokens(text))
    pos = 0

    def peek() -> Tuple[str, str]:
        return tokens[pos]

    def take() -> Tuple[str, str]:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> Polynomial:
        result = product_()
        while peek() == ("op", "+"):
            take()
            result = result + product_()
        return result

    def product_() -> Polynomial:
        result = factor()
        while peek() == ("op", "*"):
            take()
            result = result * factor()
        return result

    def factor() -> Polynomial:
        kind, value = take()
        if kind == "num":
            base = Polynomial.constant(int(value), nvars)
        elif kind == "var":
            i = int(value)
            if not 1 <= i <= nvars:
                raise ValueError(f"x{i} out of range in {text!r} ({nvars} variables)")
            base = Polynomial.variable(i - 1, nvars)
        elif (kind, value) == ("op", "("):
            base = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
        else:
            raise ValueError(f"unexpected {value or 'end of input'!r} in {text!r}")
        if peek() == ("op", "^"):
            take()
            kind, value = take()
            if kind != "num":
                raise ValueError(f"exponent must be a natural number in {text!r}")
            base = base ** int(value)
        return base

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input {peek()[1]!r} in {text!r}")
    return result
