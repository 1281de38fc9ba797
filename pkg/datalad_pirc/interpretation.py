"""
Complexity polynomial interpretations (CPIs), the reduction pair processor
and the search for interpretations that remove dependency tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
import logging
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from .consts import DEFAULT_COEFF, DEFAULT_DEGREE, DEFAULT_SEARCH_BUDGET
from .dependency_tuples import DtProblem, DtRule
from .errors import CertificateError, MissingSymbolError, NotApplicableError
from .polynomials import Polynomial, monomials, parse_polynomial, poly_ge, poly_gt
from .terms import App, Symbol, SymbolKind, Term, Var, symbols_of, variables_in_order
from .trs import Rule, Trs
from .utils import Deadline, check_deadline

lgr = logging.getLogger("datalad.pirc.interpretation")


@dataclass(frozen=True)
class Interpretation:
    """Polynomials per symbol; ``Com_k`` defaults to ``x1 + ... + xk``"""

    assignment: Mapping[Symbol, Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for symbol, p in self.assignment.items():
            if p.nvars != symbol.arity:
                raise ValueError(
                    f"{symbol} has arity {symbol.arity} but its polynomial"
                    f" uses {p.nvars} variables"
                )
            if not p.is_natural:
                raise ValueError(f"negative coefficient for {symbol}: {p}")

    def polynomial(self, symbol: Symbol) -> Polynomial:
        try:
            return self.assignment[symbol]
        except KeyError:
            if symbol.is_compound:
                return Polynomial.sum_of_variables(symbol.arity)
            raise MissingSymbolError(f"no polynomial for symbol {symbol}")

    def __contains__(self, symbol: Symbol) -> bool:
        return symbol in self.assignment or symbol.is_compound

    def __str__(self) -> str:
        return "\n".join(
            f"{symbol_template(s)} = {p}" for s, p in self.assignment.items()
        )


def symbol_template(symbol: Symbol) -> str:
    if not symbol.arity:
        return str(symbol)
    args = ", ".join(f"x{i}" for i in range(1, symbol.arity + 1))
    return f"{symbol}({args})"


def _interpret(
    t: Term,
    lookup: Callable[[Symbol], Polynomial],
    index: Mapping[str, int],
    nvars: int,
) -> Polynomial:
    cache: Dict[Term, Polynomial] = {}
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        s, expanded = stack.pop()
        if s in cache:
            continue
        if isinstance(s, Var):
            cache[s] = Polynomial.variable(index[s.name], nvars)
        elif expanded or not s.args:
            args = [cache[a] for a in s.args]
            cache[s] = lookup(s.symbol).compose_into(args, nvars)
        else:
            stack.append((s, True))
            stack.extend((a, False) for a in s.args if a not in cache)
    return cache[t]


def interpret_term(
    t: Term, interpretation: Interpretation, variables: Optional[Sequence[str]] = None
) -> Polynomial:
    """
    ``Pol(t)`` as a polynomial whose ``i``-th variable is ``variables[i]``
    (default: the variables of ``t`` in order of occurrence)
    """
    names = list(variables) if variables is not None else variables_in_order(t)
    index = {name: i for i, name in enumerate(names)}
    missing = set(variables_in_order(t)) - set(index)
    if missing:
        raise ValueError(f"variables {sorted(missing)} not among {names}")
    return _interpret(t, interpretation.polynomial, index, len(names))


def interpret_rule(
    rule: Rule, interpretation: Interpretation
) -> Tuple[Polynomial, Polynomial]:
    names = variables_in_order(rule.lhs)
    return (
        interpret_term(rule.lhs, interpretation, names),
        interpret_term(rule.rhs, interpretation, names),
    )


def is_cpi_constructor_shape(p: Polynomial) -> bool:
    """``a1*x1 + ... + an*xn + b`` with every ``ai`` in {0, 1}"""
    return p.is_natural and all(
        sum(m) == 0 or (sum(m) == 1 and c == 1) for m, c in p.terms
    )


def check_cpi(interpretation: Interpretation, trs: Trs) -> bool:
    for symbol, p in interpretation.assignment.items():
        if symbol.is_compound and p != Polynomial.sum_of_variables(symbol.arity):
            lgr.debug("%s is not interpreted as the sum of its arguments", symbol)
            return False
    for c in trs.constructors:
        if c not in interpretation.assignment:
            lgr.debug("No polynomial for constructor %s", c)
            return False
        if not is_cpi_constructor_shape(interpretation.assignment[c]):
            lgr.debug("Constructor %s does not have a CPI shape", c)
            return False
    return True


class OrientationResult(NamedTuple):
    weak_ok: bool
    strict: Tuple[DtRule, ...]
    #: rules and DTs of ``D ∪ R`` that are not weakly decreasing
    not_weak: Tuple[str, ...] = ()


def orient(problem: DtProblem, interpretation: Interpretation) -> OrientationResult:
    not_weak = []
    for rule in problem.trs.rules + tuple(dt.as_rule() for dt in problem.dts):
        left, right = interpret_rule(rule, interpretation)
        if not poly_ge(left, right):
            not_weak.append(str(rule))
    strict_set = set(problem.strict)
    strict = tuple(
        dt
        for dt in problem.dts
        if dt in strict_set and poly_gt(*interpret_rule(dt.as_rule(), interpretation))
    )
    return OrientationResult(not not_weak, strict, tuple(not_weak))


def sharp_symbols(problem: DtProblem) -> List[Symbol]:
    seen: Dict[Symbol, None] = {}
    for dt in problem.dts:
        for part in (dt.lhs,) + dt.rhs_parts:
            seen.setdefault(part.symbol, None)
    return list(seen)


def sharp_degree(problem: DtProblem, interpretation: Interpretation) -> int:
    """Maximal degree of the polynomials of the problem's sharp symbols"""
    return max(
        (interpretation.polynomial(s).degree for s in sharp_symbols(problem)),
        default=0,
    )


def reduction_pair_step(
    problem: DtProblem, interpretation: Interpretation
) -> Tuple[DtProblem, int]:
    if problem.is_solved:
        raise NotApplicableError("no strict dependency tuples left to remove")
    if not check_cpi(interpretation, problem.trs):
        raise NotApplicableError("not a complexity polynomial interpretation")
    result = orient(problem, interpretation)
    if not result.weak_ok:
        raise NotApplicableError(
            "not weakly decreasing: " + "; ".join(result.not_weak)
        )
    if not result.strict:
        raise NotApplicableError("no dependency tuple is strictly decreasing")
    removed = set(result.strict)
    return (
        problem.with_strict(d for d in problem.strict if d not in removed),
        sharp_degree(problem, interpretation),
    )


class ProofStep(NamedTuple):
    interpretation: Interpretation
    removed: Tuple[DtRule, ...]
    degree: int


class ComplexityBound:
    witness: Tuple[ProofStep, ...]

    @property
    def degree(self) -> Optional[int]:
        return None


@dataclass(frozen=True)
class PolyDegree(ComplexityBound):
    k: int
    witness: Tuple[ProofStep, ...] = ()

    @property
    def degree(self) -> Optional[int]:
        return self.k

    def __str__(self) -> str:
        if self.k == 0:
            return "O(1)"
        elif self.k == 1:
            return "O(n)"
        else:
            return f"O(n^{self.k})"


@dataclass(frozen=True)
class Unbounded(ComplexityBound):
    witness: Tuple[ProofStep, ...] = ()
    #: start term of a non-terminating derivation
    witness_term: Optional[Term] = None

    def __str__(self) -> str:
        return "unbounded"


@dataclass(frozen=True)
class Unknown(ComplexityBound):
    witness: Tuple[ProofStep, ...] = ()
    reason: str = ""

    def __str__(self) -> str:
        return "unknown"


class _Constraint(NamedTuple):
    #: position among the rules and DTs of the problem
    key: int
    lhs: Term
    rhs: Term
    index: Dict[str, int]
    strict: bool
    #: symbols whose polynomial is searched for
    symbols: FrozenSet[Symbol]
    #: ``symbols`` in a fixed order, for cache keys
    ordered: Tuple[Symbol, ...]
    dt: Optional[DtRule]


class _BudgetExhausted(Exception):
    pass


@lru_cache(maxsize=None)
def _free_templates(
    arity: int, degree: int, coeff_bound: int
) -> Tuple[Polynomial, ...]:
    mons = monomials(arity, degree)
    vectors = sorted(
        product(range(coeff_bound + 1), repeat=len(mons)),
        key=lambda v: (
            sum(1 for c in v if c),
            sum(v),
            max((sum(m) for m, c in zip(mons, v) if c), default=0),
            tuple(-c for c in v),
        ),
    )
    return tuple(Polynomial.from_dict(arity, dict(zip(mons, v))) for v in vectors)


@lru_cache(maxsize=None)
def _constructor_templates(arity: int, coeff_bound: int) -> Tuple[Polynomial, ...]:
    def simplicity(shape: Tuple[Tuple[int, ...], int]) -> Tuple:
        a, b = shape
        return (sum(a) + (b > 0), sum(a) + b, tuple(-c for c in a), b)

    shapes = sorted(
        product(product((0, 1), repeat=arity), range(coeff_bound + 1)),
        key=simplicity,
    )
    return tuple(Polynomial.linear(a, b) for a, b in shapes)


#: (degree of sharp symbols, degree of defined symbols), tried in order
DEGREE_LEVELS = ((0, 1), (1, 1), (2, 1), (2, 2))

_Assignment = Dict[Symbol, Polynomial]
_Hook = Callable[[_Assignment], bool]


class InterpretationSearch:
    """
    Depth-first instantiation of per-symbol templates.  A constraint is
    checked as soon as all of its symbols are assigned; symbols are ordered so
    that constraints complete as early as possible.

    Symbols that occur only in rules of ``R`` are left to a side search: once
    the symbols they share constraints with are fixed, it looks for any weakly
    decreasing completion.  Its answers and all verdicts on single constraints
    are cached for the lifetime of the search object, and only fresh
    orientation checks count against ``budget``.
    """

    def __init__(
        self,
        problem: DtProblem,
        budget: int,
        deadline: Optional[Deadline] = None,
    ) -> None:
        self.problem = problem
        self.budget = budget
        self.deadline = deadline
        self.checks = 0
        self.lookups = 0
        self.constructors = set(problem.trs.constructors)
        self.sharps = sharp_symbols(problem)
        scope: Dict[Symbol, None] = dict.fromkeys(problem.trs.symbols)
        scope.update(dict.fromkeys(self.sharps))
        self.symbols = [s for s in scope if not s.is_compound]
        in_dts = {
            s
            for dt in problem.dts
            for t in (dt.lhs,) + dt.rhs_parts
            for s in symbols_of(t)
        }
        self.rest = [s for s in self.symbols if s not in in_dts]
        self.core = [s for s in self.symbols if s in in_dts]
        self._items: List[Tuple[Rule, Optional[DtRule]]] = [
            (r, None) for r in problem.trs.rules
        ]
        self._items.extend((dt.as_rule(), dt) for dt in problem.dts)
        self._verdicts: Dict[Tuple, bool] = {}
        self._completions: Dict[Tuple, Optional[_Assignment]] = {}

        rest = set(self.rest)
        self.side = [c for c in self._constraints(frozenset()) if c.symbols & rest]
        self.interface = [
            s for s in self.core if any(s in c.symbols for c in self.side)
        ]
        self.side_order = self._order(self.rest, self.side, frozenset(self.interface))

    def _constraints(self, strict: FrozenSet[DtRule]) -> List[_Constraint]:
        found = []
        for key, (rule, dt) in enumerate(self._items):
            names = variables_in_order(rule.lhs)
            symbols = frozenset(
                s
                for t in (rule.lhs, rule.rhs)
                for s in symbols_of(t)
                if not s.is_compound
            )
            found.append(
                _Constraint(
                    key,
                    rule.lhs,
                    rule.rhs,
                    {n: i for i, n in enumerate(names)},
                    dt is not None and dt in strict,
                    symbols,
                    tuple(sorted(symbols, key=str)),
                    dt,
                )
            )
        return found

    @staticmethod
    def _order(
        symbols: Sequence[Symbol],
        constraints: Sequence[_Constraint],
        fixed: FrozenSet[Symbol] = frozenset(),
    ) -> List[Symbol]:
        frequency = {s: sum(1 for c in constraints if s in c.symbols) for s in symbols}
        assigned: Set[Symbol] = set(fixed)
        order = []
        remaining = list(symbols)
        while remaining:
            best = min(
                remaining,
                key=lambda s: (
                    -sum(
                        1
                        for c in constraints
                        if s in c.symbols and c.symbols <= assigned | {s}
                    ),
                    -frequency[s],
                    str(s),
                ),
            )
            remaining.remove(best)
            assigned.add(best)
            order.append(best)
        return order

    @staticmethod
    def _completes(
        order: Sequence[Symbol], constraints: Sequence[_Constraint]
    ) -> List[List[_Constraint]]:
        position = {s: i for i, s in enumerate(order)}
        completes: List[List[_Constraint]] = [[] for _ in order]
        for c in constraints:
            completes[max(position[s] for s in c.symbols if s in position)].append(c)
        return completes

    def _templates(
        self, s: Symbol, level: Tuple[int, int], bound: int
    ) -> Tuple[Polynomial, ...]:
        if s in self.constructors:
            return _constructor_templates(s.arity, bound)
        degree = level[0] if s.kind is SymbolKind.SHARP else level[1]
        return _free_templates(s.arity, degree, bound)

    def _holds(self, c: _Constraint, assignment: _Assignment) -> bool:
        self.lookups += 1
        if self.lookups % 1000 == 0:
            check_deadline(self.deadline)
        key = (c.key, c.strict, tuple(assignment[s] for s in c.ordered))
        verdict = self._verdicts.get(key)
        if verdict is not None:
            return verdict
        if self.checks >= self.budget:
            raise _BudgetExhausted()
        self.checks += 1

        def lookup(s: Symbol) -> Polynomial:
            if s.is_compound:
                return Polynomial.sum_of_variables(s.arity)
            return assignment[s]

        left = _interpret(c.lhs, lookup, c.index, len(c.index))
        right = _interpret(c.rhs, lookup, c.index, len(c.index))
        verdict = poly_gt(left, right) if c.strict else poly_ge(left, right)
        self._verdicts[key] = verdict
        return verdict

    def _assign(
        self,
        order: Sequence[Symbol],
        completes: Sequence[Sequence[_Constraint]],
        templates: Callable[[Symbol], Tuple[Polynomial, ...]],
        assignment: _Assignment,
        hooks: Mapping[int, _Hook],
        i: int = 0,
    ) -> bool:
        if i == len(order):
            return True
        s = order[i]
        hook = hooks.get(i)
        for p in templates(s):
            assignment[s] = p
            if not all(self._holds(c, assignment) for c in completes[i]):
                continue
            if hook is not None and not hook(assignment):
                continue
            if self._assign(order, completes, templates, assignment, hooks, i + 1):
                return True
        del assignment[s]
        return False

    def _complete(
        self, degree: int, bound: int, assignment: _Assignment
    ) -> Optional[_Assignment]:
        """Weakly decreasing polynomials for the symbols only ``R`` uses"""
        key = (degree, bound, tuple(assignment[s] for s in self.interface))
        if key in self._completions:
            return self._completions[key]
        partial = {s: assignment[s] for s in self.interface}
        found = self._assign(
            self.side_order,
            self._completes(self.side_order, self.side),
            lambda s: self._templates(s, (degree, degree), bound),
            partial,
            {},
        )
        result = {s: partial[s] for s in self.rest} if found else None
        self._completions[key] = result
        return result

    def run(
        self, level: Tuple[int, int], strict: FrozenSet[DtRule], bound: int
    ) -> Optional[Interpretation]:
        """
        Search with sharp and defined symbols of the degrees in ``level`` and
        coefficients up to ``bound``, for an interpretation orienting all of
        ``strict`` strictly
        """
        side = {c.key for c in self.side}
        constraints = [c for c in self._constraints(strict) if c.key not in side]
        order = self._order(self.core, constraints)
        assignment: _Assignment = {}

        def complete(partial: _Assignment) -> bool:
            return self._complete(level[1], bound, partial) is not None

        hooks: Dict[int, _Hook] = {}
        if self.rest:
            if self.interface:
                hooks[max(order.index(s) for s in self.interface)] = complete
            elif not complete(assignment):
                return None
        found = self._assign(
            order,
            self._completes(order, constraints),
            lambda s: self._templates(s, level, bound),
            assignment,
            hooks,
        )
        if not found:
            return None
        if self.rest:
            completion = self._complete(level[1], bound, assignment)
            assert completion is not None
            assignment.update(completion)
        return Interpretation({s: assignment[s] for s in self.symbols})


def _preference(
    problem: DtProblem, interpretation: Interpretation
) -> Tuple[int, int, Tuple]:
    removed = orient(problem, interpretation).strict
    return (
        -len(removed),
        sharp_degree(problem, interpretation),
        tuple(p.terms for p in interpretation.assignment.values()),
    )


def search_interpretation(
    problem: DtProblem,
    degree_bound: int = DEFAULT_DEGREE,
    coeff_bound: int = DEFAULT_COEFF,
    budget: int = DEFAULT_SEARCH_BUDGET,
    deadline: Optional[Deadline] = None,
) -> Optional[Interpretation]:
    """
    Find a CPI that weakly orients ``D ∪ R`` and strictly orients at least
    one strict DT.

    Coefficients up to 1 are tried before coefficients up to
    ``coeff_bound``.  Within each coefficient bound, every degree level first
    tries to remove all strict DTs at once; failing that, each strict DT is
    targeted on its own and the candidate removing most DTs (then of least
    degree) wins.  Returns `None` when no interpretation exists within the
    bounds or ``budget`` orientation checks run out.
    """
    if coeff_bound < 1:
        raise ValueError("coefficient bound must be at least 1")
    if problem.is_solved:
        return None
    levels = [
        (sharp, plain)
        for sharp, plain in DEGREE_LEVELS
        if sharp <= degree_bound and plain <= max(degree_bound, 1)
    ]
    search = InterpretationSearch(problem, budget, deadline)
    everything = frozenset(problem.strict)
    try:
        for bound in sorted({1, coeff_bound}):
            for level in levels:
                lgr.debug(
                    "Searching at degree level %s, coefficients up to %d,"
                    " for all strict DTs",
                    level,
                    bound,
                )
                found = search.run(level, everything, bound)
                if found is not None:
                    return found
            if len(problem.strict) == 1:
                continue
            for level in levels:
                candidates = []
                for dt in problem.strict:
                    lgr.debug("Searching at degree level %s for %s", level, dt)
                    found = search.run(level, frozenset([dt]), bound)
                    if found is not None:
                        candidates.append(found)
                if candidates:
                    return min(candidates, key=lambda i: _preference(problem, i))
    except _BudgetExhausted:
        lgr.warning(
            "Interpretation search gave up after %d orientation checks", search.checks
        )
        return None
    finally:
        lgr.debug("Interpretation search used %d orientation checks", search.checks)
    return None


def prove_upper_bound(
    problem: DtProblem,
    degree_bound: int = DEFAULT_DEGREE,
    coeff_bound: int = DEFAULT_COEFF,
    budget: int = DEFAULT_SEARCH_BUDGET,
    deadline: Optional[Deadline] = None,
) -> ComplexityBound:
    """
    Apply the reduction pair processor until no strict DTs remain; the bound
    is the maximal degree over all steps
    """
    steps: List[ProofStep] = []
    current = problem
    while not current.is_solved:
        found = search_interpretation(
            current, degree_bound, coeff_bound, budget, deadline
        )
        if found is None:
            return Unknown(
                tuple(steps),
                f"no interpretation found for {len(current.strict)} remaining DTs",
            )
        following, degree = reduction_pair_step(current, found)
        removed = tuple(d for d in current.strict if d not in set(following.strict))
        lgr.info("Removed %d DTs with a degree %d interpretation", len(removed), degree)
        steps.append(ProofStep(found, removed, degree))
        current = following
    return PolyDegree(max((s.degree for s in steps), default=0), tuple(steps))


def replay_witness(
    problem: DtProblem, interpretations: Sequence[Interpretation]
) -> ComplexityBound:
    """Apply the given interpretations in order as reduction pair steps"""
    steps: List[ProofStep] = []
    current = problem
    for i, interpretation in enumerate(interpretations, start=1):
        if current.is_solved:
            lgr.warning(
                "Ignoring %d superfluous interpretations", len(interpretations) - i + 1
            )
            break
        try:
            following, degree = reduction_pair_step(current, interpretation)
        except NotApplicableError as e:
            raise NotApplicableError(f"step {i}: {e}") from e
        removed = tuple(d for d in current.strict if d not in set(following.strict))
        steps.append(ProofStep(interpretation, removed, degree))
        current = following
    if not current.is_solved:
        return Unknown(tuple(steps), f"{len(current.strict)} DTs were not removed")
    return PolyDegree(max((s.degree for s in steps), default=0), tuple(steps))


def polynomial_to_json(p: Polynomial) -> List[List[Any]]:
    return [[c, list(m)] for m, c in p.terms]


def interpretation_to_json(interpretation: Interpretation) -> Dict[str, Any]:
    return {
        str(s): polynomial_to_json(p)
        for s, p in sorted(interpretation.assignment.items(), key=lambda sp: str(sp[0]))
    }


def witness_to_json(steps: Sequence[ProofStep]) -> List[Dict[str, Any]]:
    return [
        {
            "interpretation": interpretation_to_json(s.interpretation),
            "removed": [str(d) for d in s.removed],
            "degree": s.degree,
        }
        for s in steps
    ]


def bound_to_json(bound: ComplexityBound) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "bound": str(bound),
        "degree": bound.degree,
        "witness": witness_to_json(bound.witness),
    }
    if isinstance(bound, Unknown):
        data["reason"] = bound.reason
    elif isinstance(bound, Unbounded) and bound.witness_term is not None:
        data["witness_term"] = str(bound.witness_term)
    return data


def _polynomial_from_json(value: Any, symbol: Symbol) -> Polynomial:
    if isinstance(value, str):
        try:
            return parse_polynomial(value, symbol.arity)
        except ValueError as e:
            raise CertificateError(f"{symbol}: {e}") from e
    if not isinstance(value, list):
        raise CertificateError(f"{symbol}: expected a list of monomials or a string")
    coefficients: Dict[Tuple[int, ...], int] = {}
    for entry in value:
        try:
            coeff, exponents = entry
            monomial = tuple(int(e) for e in exponents)
            coeff = int(coeff)
        except (TypeError, ValueError):
            raise CertificateError(
                f"{symbol}: monomials are [coefficient, [exponents...]], got {entry!r}"
            )
        if len(monomial) != symbol.arity or coeff < 0 or min(monomial, default=0) < 0:
            raise CertificateError(f"{symbol}: invalid monomial {entry!r}")
        coefficients[monomial] = coefficients.get(monomial, 0) + coeff
    return Polynomial.from_dict(symbol.arity, coefficients)


def interpretation_from_json(
    data: Mapping[str, Any], scope: Sequence[Symbol]
) -> Interpretation:
    by_name = {str(s): s for s in scope}
    assignment = {}
    for name, value in data.items():
        try:
            symbol = by_name[name]
        except KeyError:
            raise CertificateError(f"unknown symbol {name!r} in certificate")
        assignment[symbol] = _polynomial_from_json(value, symbol)
    return Interpretation(assignment)


def interpretations_from_json(
    data: Union[Mapping[str, Any], Sequence[Any]], problem: DtProblem
) -> List[Interpretation]:
    """
    Accept a single interpretation, a list of them (a witness chain, either
    bare or as recorded proof steps), or an analysis report
    """
    scope: Dict[Symbol, None] = dict.fromkeys(problem.trs.symbols)
    for dt in problem.dts:
        for part in (dt.lhs,) + dt.rhs_parts:
            scope.setdefault(part.symbol, None)
        scope.setdefault(dt.compound, None)
    if isinstance(data, Mapping) and "upper_bound" in data:
        data = data["upper_bound"].get("witness", [])
    if isinstance(data, Mapping):
        return [interpretation_from_json(data, list(scope))]
    if not isinstance(data, list):
        raise CertificateError("a certificate is a JSON object or list")
    chain = []
    for item in data:
        if isinstance(item, Mapping) and "interpretation" in item:
            item = item["interpretation"]
        if not isinstance(item, Mapping):
            raise CertificateError(f"not an interpretation: {item!r}")
        chain.append(interpretation_from_json(item, list(scope)))
    return chain


def sharp_term_value(t: App, interpretation: Interpretation) -> int:
    """``Pol(t)`` of a ground term"""
    return interpret_term(t, interpretation, []).constant_term
