from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import heapq
from itertools import islice, product
import logging
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Sequence,
    Set,
    Tuple,
)

from .errors import RuleError
from .terms import (
    App,
    Position,
    Symbol,
    Term,
    Var,
    alpha_equivalent,
    fresh_name,
    iter_positions,
    rename_variables,
    subterms,
    symbols_of,
    variables,
    variables_in_order,
)

lgr = logging.getLogger("datalad.pirc.trs")


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if isinstance(self.lhs, Var):
            raise RuleError(f"left-hand side is a variable: {self}")
        extra = variables(self.rhs) - variables(self.lhs)
        if extra:
            raise RuleError(
                f"variables {', '.join(sorted(extra))} of the right-hand side"
                f" do not occur on the left: {self}"
            )

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"

    @property
    def root(self) -> Symbol:
        assert isinstance(self.lhs, App)
        return self.lhs.symbol

    @property
    def variables(self) -> Set[str]:
        return variables(self.lhs)

    def alpha_equivalent(self, other: Rule) -> bool:
        return alpha_equivalent(
            App(_PAIR, (self.lhs, self.rhs)), App(_PAIR, (other.lhs, other.rhs))
        )


_PAIR = Symbol("->", 2)


def rename_apart(rule: Rule, avoid: Iterable[str]) -> Rule:
    """Return ``rule`` with every variable renamed to a name outside ``avoid``"""
    taken = set(avoid) | rule.variables
    renaming: Dict[str, str] = {}
    for name in variables_in_order(rule.lhs):
        renaming[name] = fresh = fresh_name(name, taken)
        taken.add(fresh)
    if not renaming:
        return rule
    return Rule(
        rename_variables(rule.lhs, renaming), rename_variables(rule.rhs, renaming)
    )


@dataclass(frozen=True)
class Trs:
    """
    A term rewrite system.  The signature consists of all symbols of the rules
    plus any explicitly declared ``extra_symbols``; its order is the order of
    first appearance and fixes the enumeration order of ground terms.
    """

    rules: Tuple[Rule, ...] = ()
    extra_symbols: Tuple[Symbol, ...] = field(default=())

    @cached_property
    def symbols(self) -> Tuple[Symbol, ...]:
        seen: Dict[Symbol, None] = {}
        for r in self.rules:
            for t in (r.lhs, r.rhs):
                for s in symbols_of(t):
                    seen.setdefault(s, None)
        for s in self.extra_symbols:
            seen.setdefault(s, None)
        return tuple(seen)

    @property
    def signature(self) -> FrozenSet[Symbol]:
        return frozenset(self.symbols)

    @cached_property
    def defined(self) -> Tuple[Symbol, ...]:
        roots = {r.root for r in self.rules}
        return tuple(s for s in self.symbols if s in roots)

    @cached_property
    def constructors(self) -> Tuple[Symbol, ...]:
        roots = set(self.defined)
        return tuple(s for s in self.symbols if s not in roots)

    def is_defined(self, symbol: Symbol) -> bool:
        return symbol in self._defined_set

    @cached_property
    def _defined_set(self) -> FrozenSet[Symbol]:
        return frozenset(self.defined)

    def rules_for(self, symbol: Symbol) -> Tuple[Rule, ...]:
        return self._rules_by_root.get(symbol, ())

    @cached_property
    def _rules_by_root(self) -> Dict[Symbol, Tuple[Rule, ...]]:
        index: Dict[Symbol, List[Rule]] = {}
        for r in self.rules:
            index.setdefault(r.root, []).append(r)
        return {s: tuple(rs) for s, rs in index.items()}

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class RelativeTrs:
    """``counted/free``: only steps with ``counted`` rules are paid for"""

    counted: Trs
    free: Trs

    @cached_property
    def union(self) -> Trs:
        return Trs(
            self.counted.rules + self.free.rules,
            self.counted.extra_symbols + self.free.extra_symbols,
        )

    def is_counted(self, rule: Rule) -> bool:
        return rule in self._counted_set

    @cached_property
    def _counted_set(self) -> FrozenSet[Rule]:
        return frozenset(self.counted.rules)


def defined_symbols(trs: Trs) -> Set[Symbol]:
    return set(trs.defined)


def constructor_symbols(trs: Trs) -> Set[Symbol]:
    return set(trs.constructors)


def defined_positions(t: Term, trs: Trs) -> Set[Position]:
    return {
        p
        for p, s in iter_positions(t)
        if isinstance(s, App) and trs.is_defined(s.symbol)
    }


def is_constructor_term(t: Term, trs: Trs) -> bool:
    return all(isinstance(s, Var) or not trs.is_defined(s.symbol) for s in subterms(t))


def is_basic(t: Term, trs: Trs) -> bool:
    return (
        isinstance(t, App)
        and trs.is_defined(t.symbol)
        and all(is_constructor_term(a, trs) for a in t.args)
    )


class GroundTerms(NamedTuple):
    terms: List[Term]
    truncated: bool
    #: every basic term of at most this size was enumerated
    complete_up_to: int


def term_order_key(t: Term, order: Dict[Symbol, int]) -> Tuple[int, Tuple[int, ...]]:
    """Size first, then the pre-order sequence of symbol ranks"""
    ranks = tuple(order[s.symbol] if isinstance(s, App) else -1 for s in subterms(t))
    return (len(ranks), ranks)


def _ground_terms_by_size(
    symbols: Iterable[Symbol], max_size: int
) -> List[List[Term]]:
    """``result[n]``: all ground terms of size ``n`` over ``symbols``"""
    symbols = list(symbols)
    by_size: List[List[Term]] = [[] for _ in range(max_size + 1)]
    for n in range(1, max_size + 1):
        for f in symbols:
            for sizes in _compositions(n - 1, f.arity):
                if any(by_size[k] == [] for k in sizes):
                    continue
                for args in product(*(by_size[k] for k in sizes)):
                    by_size[n].append(App(f, args))
    return by_size


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    """Ordered ways to write ``total`` as a sum of ``parts`` positive integers"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _applications(f: Symbol, pools: Sequence[List[Term]]) -> Iterator[Term]:
    for args in product(*pools):
        yield App(f, args)


def _ordered_terms(
    roots: Iterable[Symbol],
    n: int,
    pools: Sequence[List[Term]],
    key: Callable[[Term], Tuple[int, Tuple[int, ...]]],
) -> Iterator[Term]:
    """
    Terms of size ``n`` with a root from ``roots`` and arguments from
    ``pools[k]`` (terms of size ``k``), lazily in ``key`` order.  Every pool
    must itself be sorted by ``key``.
    """
    streams = [
        _applications(f, [pools[k] for k in sizes])
        for f in roots
        for sizes in _compositions(n - 1, f.arity)
    ]
    return heapq.merge(*streams, key=key)


def enumerate_ground_basic(trs: Trs, max_size: int, cap: int) -> GroundTerms:
    """
    All ground basic terms of size at most ``max_size`` in size-then-signature
    order, truncated after ``cap`` terms.  Terms are generated lazily: no more
    than ``cap`` constructor terms of any size are built.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    order = {s: i for i, s in enumerate(trs.symbols)}

    def key(t: Term) -> Tuple[int, Tuple[int, ...]]:
        return term_order_key(t, order)

    # pools[k]: the first ``cap`` constructor terms of size k, in order; later
    # ones never occur in the first ``cap`` basic terms of any size
    pools: List[List[Term]] = [[]]
    found: List[Term] = []
    for n in range(1, max_size + 1):
        while len(pools) < n:
            terms = _ordered_terms(trs.constructors, len(pools), pools, key)
            pools.append(list(islice(terms, cap)))
        room = cap - len(found)
        batch = list(islice(_ordered_terms(trs.defined, n, pools, key), room + 1))
        if len(batch) > room:
            found.extend(batch[:room])
            lgr.warning(
                "Enumeration of basic terms truncated at %d terms (size %d)", cap, n
            )
            return GroundTerms(found, True, n - 1)
        found.extend(batch)
    return GroundTerms(found, False, max_size)
