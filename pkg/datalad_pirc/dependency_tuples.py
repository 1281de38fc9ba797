"""
Dependency tuples (DTs), Parallel Dependency Tuples (PDTs) and DT problems.

A DT ``s# -> Com_k(t1#, ..., tk#)`` is kept as its left-hand side plus the
sequence of right-hand side parts; ``Com_0`` is the empty sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .consts import DEFAULT_ENUMERATION_CAP, DEFAULT_FUEL, MAX_CHAIN_DEPTH
from .rewriting import (
    INNERMOST,
    AtLeast,
    DerivationHeight,
    EmpiricalRow,
    Finite,
    Omega,
    cumulative_rows,
    normal_forms,
)
from .terms import (
    ROOT,
    App,
    Position,
    Symbol,
    Term,
    apply_substitution,
    iter_positions,
    match_term,
    strictly_above,
    subterm_at,
    term_size,
)
from .trs import Rule, Trs, defined_positions, enumerate_ground_basic
from .utils import Deadline, check_deadline

lgr = logging.getLogger("datalad.pirc.dependency_tuples")

Chain = Tuple[Position, ...]


def sharp(t: Term, trs: Trs) -> Term:
    if isinstance(t, App) and trs.is_defined(t.symbol):
        return App(t.symbol.sharpened(), t.args)
    return t


def is_sharp_term(t: Term) -> bool:
    """Sharp root, and no sharp or compound symbol below it"""
    if not isinstance(t, App) or not t.symbol.is_sharp:
        return False
    return all(
        not (s.symbol.is_sharp or s.symbol.is_compound)
        for a in t.args
        for _, s in iter_positions(a)
        if isinstance(s, App)
    )


@dataclass(frozen=True)
class DtRule:
    lhs: App
    rhs_parts: Tuple[App, ...] = ()

    def __post_init__(self) -> None:
        for t in (self.lhs,) + self.rhs_parts:
            if not is_sharp_term(t):
                raise ValueError(f"not a sharp term: {t}")

    @property
    def compound(self) -> Symbol:
        return Symbol.compound(len(self.rhs_parts))

    def as_rule(self) -> Rule:
        return Rule(self.lhs, App(self.compound, self.rhs_parts))

    def __str__(self) -> str:
        return str(self.as_rule())


@dataclass(frozen=True)
class DtProblem:
    """``<D, S, R>``: all DTs, the strict DTs still to be counted, the base TRS"""

    dts: Tuple[DtRule, ...]
    strict: Tuple[DtRule, ...]
    trs: Trs

    def __post_init__(self) -> None:
        extra = set(self.strict) - set(self.dts)
        if extra:
            raise ValueError(
                "strict DTs must be among the problem's DTs: "
                + "; ".join(sorted(map(str, extra)))
            )

    @property
    def is_solved(self) -> bool:
        return not self.strict

    def with_strict(self, strict: Iterable[DtRule]) -> DtProblem:
        keep = set(strict)
        return DtProblem(self.dts, tuple(d for d in self.dts if d in keep), self.trs)

    def __str__(self) -> str:
        strict = set(self.strict)
        return "\n".join(f"{'*' if d in strict else ' '} {d}" for d in self.dts)


def position_order_key(pos: Position) -> Tuple[int, Position]:
    """Sort key of the total order on positions (use with ``reverse=True``)"""
    return (len(pos), pos)


def _sharp_at(t: Term, pos: Position, trs: Trs) -> App:
    s = sharp(subterm_at(t, pos), trs)
    assert isinstance(s, App)
    return s


def sequential_dt(rule: Rule, trs: Trs) -> DtRule:
    order = sorted(
        defined_positions(rule.rhs, trs), key=position_order_key, reverse=True
    )
    return DtRule(
        _sharp_at(rule.lhs, ROOT, trs),
        tuple(_sharp_at(rule.rhs, p, trs) for p in order),
    )


def _chains(t: Term, trs: Trs) -> List[Chain]:
    """Maximal structural dependency chains, sorted by their deepest position"""
    dpos = defined_positions(t, trs)
    if not dpos:
        return [()]
    leaves = sorted(p for p in dpos if not any(strictly_above(q, p) for q in dpos))
    return [
        (leaf,)
        + tuple(
            sorted(
                (q for q in dpos if strictly_above(leaf, q)), key=len, reverse=True
            )
        )
        for leaf in leaves
    ]


def msdc(t: Term, trs: Trs) -> Set[Chain]:
    return set(_chains(t, trs))


def is_maximal_chain(chain: Chain, t: Term, trs: Trs) -> bool:
    """Check the defining formula of a maximal structural dependency chain"""
    dpos = defined_positions(t, trs)
    if not chain:
        return not dpos
    if not all(p in dpos for p in chain):
        return False
    if not all(strictly_above(a, b) for a, b in zip(chain, chain[1:])):
        return False
    first, rest = chain[0], set(chain[1:])
    return all(
        not strictly_above(p, first) and (not strictly_above(first, p) or p in rest)
        for p in dpos
    )


def parallel_dts(rule: Rule, trs: Trs) -> Tuple[DtRule, ...]:
    """One PDT per maximal structural dependency chain of the right-hand side"""
    lhs = _sharp_at(rule.lhs, ROOT, trs)
    return tuple(
        DtRule(lhs, tuple(_sharp_at(rule.rhs, p, trs) for p in chain))
        for chain in _chains(rule.rhs, trs)
    )


def _unique(dts: Iterable[DtRule]) -> Tuple[DtRule, ...]:
    return tuple(dict.fromkeys(dts))


def canonical_parallel_problem(trs: Trs) -> DtProblem:
    dts = _unique(d for r in trs.rules for d in parallel_dts(r, trs))
    return DtProblem(dts, dts, trs)


def canonical_sequential_problem(trs: Trs) -> DtProblem:
    dts = _unique(sequential_dt(r, trs) for r in trs.rules)
    return DtProblem(dts, dts, trs)


def has_no_parallelism(trs: Trs) -> bool:
    return all(len(_chains(r.rhs, trs)) == 1 for r in trs.rules)


class ChainTreeSearch:
    """
    Supremum of the counted size over all chain trees, computed per sharp
    term with memoization.  A chain tree node ``(dt | nu)`` contributes 1 when
    ``dt`` is strict; each right-hand side part may continue with a chain tree
    for any argument normal form of its instance.
    """

    def __init__(
        self, problem: DtProblem, fuel: int, deadline: Optional[Deadline] = None
    ) -> None:
        self.problem = problem
        self.fuel = fuel
        self.deadline = deadline
        self.explored = 0
        self.exhausted = False
        self.strict: FrozenSet[DtRule] = frozenset(problem.strict)
        self.by_root: Dict[Symbol, List[DtRule]] = {}
        for dt in problem.dts:
            self.by_root.setdefault(dt.lhs.symbol, []).append(dt)
        self.memo: Dict[Term, DerivationHeight] = {}
        self.active: Dict[Term, int] = {}
        self._nfs: Dict[Term, Optional[List[Term]]] = {}

    def refuel(self) -> None:
        self.explored = 0

    def _normal_forms(self, t: Term) -> Optional[List[Term]]:
        try:
            return self._nfs[t]
        except KeyError:
            pass
        found = normal_forms(t, INNERMOST, self.problem.trs, self.fuel)
        self._nfs[t] = nfs = None if found is None else sorted(found, key=str)
        return nfs

    def _instances(self, part: App) -> Tuple[List[App], bool]:
        pools = []
        complete = True
        for a in part.args:
            nfs = self._normal_forms(a)
            if nfs is None:
                lgr.warning("Normal forms of %s not found within fuel", a)
                complete = False
                nfs = []
            pools.append(nfs)
        return [App(part.symbol, args) for args in product(*pools)], complete

    def cplx(self, t: App, depth: int = 0) -> DerivationHeight:
        return self._cplx(t, depth)[0]

    def _cplx(self, t: App, depth: int) -> Tuple[DerivationHeight, Dict[Term, bool]]:
        """
        The height of ``t`` together with the terms still on the path that a
        cycle through non-strict DTs returned to.  Each of them maps to whether
        a sibling along that cycle counts a strict DT: unrolling such a cycle
        again and again makes chain trees with unboundedly many strict nodes.
        """
        if t in self.memo:
            return self.memo[t], {}
        if t in self.active:
            if depth > self.active[t]:
                return Omega(witness=t), {}
            return Finite(0), {t: False}
        if self.explored >= self.fuel or len(self.active) >= MAX_CHAIN_DEPTH:
            if not self.exhausted:
                lgr.warning("Chain tree exploration stopped at %s", t)
            self.exhausted = True
            return AtLeast(0), {}
        self.explored += 1
        if self.explored % 1000 == 0:
            check_deadline(self.deadline)
        self.active[t] = depth
        best: DerivationHeight = Finite(0)
        cycles: Dict[Term, bool] = {}
        for dt in self.by_root.get(t.symbol, ()):
            nu = match_term(dt.lhs, t)
            if nu is None:
                continue
            counted = int(dt in self.strict)
            values: List[DerivationHeight] = []
            returns: List[Dict[Term, bool]] = []
            for part in dt.rhs_parts:
                instance = apply_substitution(nu, part)
                assert isinstance(instance, App)
                candidates, complete = self._instances(instance)
                sub: DerivationHeight = Finite(0)
                back: Dict[Term, bool] = {}
                for w in candidates:
                    value, reached = self._cplx(w, depth + counted)
                    sub = sub.join(value)
                    for u, gain in reached.items():
                        back[u] = back.get(u, False) or gain
                if not complete and isinstance(sub, Finite):
                    sub = AtLeast(sub.n)
                values.append(sub)
                returns.append(back)
            total: DerivationHeight = Finite(counted)
            for sub in values:
                total = total + sub
            for i, back in enumerate(returns):
                siblings = counted > 0 or any(
                    _counts(v) for j, v in enumerate(values) if j != i
                )
                for u, gain in back.items():
                    cycles[u] = cycles.get(u, False) or gain or siblings
            best = best.join(total)
            if isinstance(best, Omega):
                break
        del self.active[t]
        if cycles.pop(t, False):
            lgr.debug("Cycle through %s repeats strict DTs", t)
            best = Omega(witness=t)
        if not cycles and best.is_exact:
            self.memo[t] = best
        return best, cycles


def _counts(h: DerivationHeight) -> bool:
    if isinstance(h, Omega):
        return True
    assert isinstance(h, (Finite, AtLeast))
    return h.n > 0


def cplx_bruteforce(
    t_sharp: Term,
    problem: DtProblem,
    fuel: int = DEFAULT_FUEL,
    deadline: Optional[Deadline] = None,
) -> DerivationHeight:
    if not isinstance(t_sharp, App) or not t_sharp.symbol.is_sharp:
        return Finite(0)
    return ChainTreeSearch(problem, fuel, deadline).cplx(t_sharp)


def problem_complexity(
    problem: DtProblem,
    max_size: int,
    fuel: int = DEFAULT_FUEL,
    cap: int = DEFAULT_ENUMERATION_CAP,
    deadline: Optional[Deadline] = None,
) -> List[EmpiricalRow]:
    """Supremum of ``Cplx(t#)`` over ground basic ``t`` with ``|t| <= n``"""
    enumerated = enumerate_ground_basic(problem.trs, max_size, cap)
    search = ChainTreeSearch(problem, fuel, deadline)
    by_size: Dict[int, DerivationHeight] = {}
    for t in enumerated.terms:
        search.refuel()
        t_sharp = sharp(t, problem.trs)
        assert isinstance(t_sharp, App)
        n = term_size(t)
        by_size[n] = by_size.get(n, Finite(0)).join(search.cplx(t_sharp))
    return cumulative_rows(by_size, max_size, enumerated.complete_up_to)
