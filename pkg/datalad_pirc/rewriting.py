"""
Executable rewrite relations and the derivation-height oracle.

`derivation_height` explores the whole reduction graph of a term (memoized
depth-first search for the longest path); ``fuel`` bounds the number of
distinct terms that get expanded.  For systems without overlaps all maximal
innermost and parallel-innermost reductions of a term have the same length,
and a single trace is followed instead.  Terms larger than ``MAX_TERM_SIZE``
are not rewritten any further; heights through them are lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
import logging
from typing import (
    Any,
    Callable,
    ClassVar,
    Dict,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import numpy as np

from .consts import (
    CACHE_SIZE,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_FUEL,
    MAX_FIT_DEGREE,
    MAX_TERM_SIZE,
    MIN_FIT_SAMPLES,
)
from .errors import NotSupportedError
from .terms import (
    ROOT,
    Position,
    Term,
    Var,
    apply_substitution,
    format_position,
    match_term,
    render_term,
    replace_at,
    subterm_at,
    term_size,
)
from .trs import RelativeTrs, Rule, Trs, enumerate_ground_basic
from .utils import Deadline, check_deadline

lgr = logging.getLogger("datalad.pirc.rewriting")


class DerivationHeight:
    """``Finite(n)``, ``AtLeast(n)`` (fuel ran out) or ``Omega``"""

    def __add__(self, other: DerivationHeight) -> DerivationHeight:
        if isinstance(self, Omega):
            return self
        if isinstance(other, Omega):
            return other
        assert isinstance(self, (Finite, AtLeast))
        assert isinstance(other, (Finite, AtLeast))
        total = self.n + other.n
        if isinstance(self, AtLeast) or isinstance(other, AtLeast):
            return AtLeast(total)
        return Finite(total)

    def join(self, other: DerivationHeight) -> DerivationHeight:
        """Least upper bound of two heights"""
        if isinstance(self, Omega):
            return self
        if isinstance(other, Omega):
            return other
        assert isinstance(self, (Finite, AtLeast))
        assert isinstance(other, (Finite, AtLeast))
        top = max(self.n, other.n)
        if isinstance(self, AtLeast) or isinstance(other, AtLeast):
            return AtLeast(top)
        return Finite(top)

    def shift(self, steps: int) -> DerivationHeight:
        return Finite(steps) + self

    @property
    def is_exact(self) -> bool:
        return not isinstance(self, AtLeast)

    def to_json(self) -> Union[int, str, Dict[str, int]]:
        if isinstance(self, Finite):
            return self.n
        elif isinstance(self, AtLeast):
            return {"at_least": self.n}
        else:
            return "omega"


@dataclass(frozen=True)
class Finite(DerivationHeight):
    n: int

    def __str__(self) -> str:
        return str(self.n)


@dataclass(frozen=True)
class AtLeast(DerivationHeight):
    n: int

    def __str__(self) -> str:
        return f">={self.n}"


@dataclass(frozen=True)
class Omega(DerivationHeight):
    # a term that was revisited along one reduction path
    witness: Optional[Term] = field(default=None, compare=False)

    def __str__(self) -> str:
        return "ω"


def sup(heights: Sequence[DerivationHeight]) -> DerivationHeight:
    best: DerivationHeight = Finite(0)
    for h in heights:
        best = best.join(h)
    return best


class Strategy:
    name: ClassVar[str]


@dataclass(frozen=True)
class Innermost(Strategy):
    name: ClassVar[str] = "innermost"


@dataclass(frozen=True)
class ParallelInnermost(Strategy):
    name: ClassVar[str] = "parallel-innermost"


@dataclass(frozen=True)
class RelativeInnermost(Strategy):
    name: ClassVar[str] = "relative-innermost"
    relative: RelativeTrs


INNERMOST = Innermost()
PARALLEL_INNERMOST = ParallelInnermost()


class Step(NamedTuple):
    positions: Tuple[Position, ...]
    rules: Tuple[Rule, ...]
    result: Term
    weight: int


def _contractions(t: Term, trs: Trs) -> List[Tuple[Rule, Term]]:
    if isinstance(t, Var):
        return []
    found = []
    for rule in trs.rules_for(t.symbol):
        sigma = match_term(rule.lhs, t)
        if sigma is not None:
            found.append((rule, apply_substitution(sigma, rule.rhs)))
    return found


def is_redex(t: Term, trs: Trs) -> bool:
    if isinstance(t, Var):
        return False
    return any(match_term(r.lhs, t) is not None for r in trs.rules_for(t.symbol))


# a position as a linked list from the leaf up: (parent link, argument index)
_Link = Optional[Tuple[Any, int]]


def _position(link: _Link) -> Position:
    indices = []
    while link is not None:
        link, i = link
        indices.append(i)
    return tuple(reversed(indices))


def _innermost_positions(t: Term, trs: Trs) -> List[Position]:
    """Innermost redex positions, leftmost first"""
    found: List[Position] = []
    # on the way down ``mark`` is None; on the way up it is the number of
    # redexes found before the subterm was entered
    stack: List[Tuple[Term, _Link, Optional[int]]] = [(t, None, None)]
    while stack:
        s, link, mark = stack.pop()
        if isinstance(s, Var):
            continue
        if mark is None:
            stack.append((s, link, len(found)))
            for i in range(len(s.args), 0, -1):
                stack.append((s.args[i - 1], (link, i), None))
        elif len(found) == mark and is_redex(s, trs):
            found.append(_position(link))
    return found


def innermost_redexes(t: Term, trs: Trs) -> Set[Position]:
    return set(_innermost_positions(t, trs))


def is_normal_form(t: Term, trs: Trs) -> bool:
    return not _innermost_positions(t, trs)


def _innermost_steps(t: Term, trs: Trs) -> Iterator[Step]:
    for pos in _innermost_positions(t, trs):
        for rule, contractum in _contractions(subterm_at(t, pos), trs):
            yield Step((pos,), (rule,), replace_at(t, pos, contractum), 1)


def _parallel_steps(t: Term, trs: Trs) -> Iterator[Step]:
    redexes = _innermost_positions(t, trs)
    if not redexes:
        return
    choices = [_contractions(subterm_at(t, pos), trs) for pos in redexes]
    # innermost redexes are pairwise parallel, so replacement order is irrelevant
    for combo in product(*choices):
        result = t
        for pos, (_, contractum) in zip(redexes, combo):
            result = replace_at(result, pos, contractum)
        yield Step(tuple(redexes), tuple(r for r, _ in combo), result, 1)


def _relative_steps(t: Term, relative: RelativeTrs) -> Iterator[Step]:
    for step in _innermost_steps(t, relative.union):
        yield step._replace(weight=int(relative.is_counted(step.rules[0])))


def steps(t: Term, strategy: Strategy, trs: Optional[Trs]) -> Iterator[Step]:
    if isinstance(strategy, RelativeInnermost):
        return _relative_steps(t, strategy.relative)
    assert trs is not None, f"{strategy.name} rewriting needs a TRS"
    if isinstance(strategy, ParallelInnermost):
        return _parallel_steps(t, trs)
    return _innermost_steps(t, trs)


def innermost_successors(t: Term, trs: Trs) -> Set[Term]:
    return {s.result for s in _innermost_steps(t, trs)}


def parallel_innermost_successors(t: Term, trs: Trs) -> Set[Term]:
    return {s.result for s in _parallel_steps(t, trs)}


def relative_innermost_successors(
    t: Term, relative: RelativeTrs, fuel: int = DEFAULT_FUEL
) -> Set[Tuple[Term, int]]:
    """
    Successors under one relative step: free steps, one counted step, free
    steps.  Every successor accounts for exactly one counted step.
    """
    budget = [fuel]

    def free_closure(start: Set[Term]) -> Set[Term]:
        seen = set(start)
        todo = list(start)
        while todo:
            if budget[0] <= 0:
                lgr.warning("Relative successors of %s: fuel exhausted", t)
                break
            budget[0] -= 1
            u = todo.pop()
            if term_size(u) > MAX_TERM_SIZE:
                continue
            for s in _relative_steps(u, relative):
                if s.weight == 0 and s.result not in seen:
                    seen.add(s.result)
                    todo.append(s.result)
        return seen

    before = free_closure({t})
    middle = {
        s.result for u in before for s in _relative_steps(u, relative) if s.weight
    }
    return {(u, 1) for u in free_closure(middle)}


def successor_function(
    strategy: Strategy, trs: Optional[Trs]
) -> Callable[[Term], List[Tuple[Term, int]]]:
    def successors(t: Term) -> List[Tuple[Term, int]]:
        best: Dict[Term, int] = {}
        for s in steps(t, strategy, trs):
            best[s.result] = max(best.get(s.result, 0), s.weight)
        return list(best.items())

    return successors


@dataclass
class _Frame:
    term: Term
    pending: List[Tuple[Term, int]]
    depth: int
    weight: int
    best: DerivationHeight
    index: int
    # lowest stack index a skipped weightless cycle below this frame returns to
    low: int


class LongestPath:
    """
    Longest weighted path search over a finitely branching reduction graph.

    A revisit along the current path closes a cycle: if the cycle carries a
    positive weight the height is ``Omega``; weightless cycles are skipped.
    Values that were computed while skipping a cycle back to a term still on
    the path are partial and are not memoized; neither are lower bounds.
    The memo table is shared between calls of `height` on one instance.
    """

    def __init__(
        self,
        successors: Callable[[Term], List[Tuple[Term, int]]],
        fuel: int,
        deadline: Optional[Deadline] = None,
    ) -> None:
        if fuel <= 0:
            raise ValueError("fuel must be positive")
        self.successors = successors
        self.fuel = fuel
        self.deadline = deadline
        self.explored = 0
        self.exhausted = False
        self.memo: Dict[Term, DerivationHeight] = {}

    def refuel(self) -> None:
        self.explored = 0

    def _frame(self, term: Term, depth: int, weight: int, index: int) -> _Frame:
        if self.explored >= self.fuel or term_size(term) > MAX_TERM_SIZE:
            if not self.exhausted:
                lgr.warning(
                    "Fuel of %d states or term size %d exhausted",
                    self.fuel,
                    MAX_TERM_SIZE,
                )
            self.exhausted = True
            return _Frame(term, [], depth, weight, AtLeast(0), index, index)
        self.explored += 1
        if self.explored % 1000 == 0:
            check_deadline(self.deadline)
        successors = self.successors(term)
        return _Frame(term, successors, depth, weight, Finite(0), index, index)

    def height(self, start: Term) -> DerivationHeight:
        if start in self.memo:
            return self.memo[start]
        # term -> index of its frame on the stack
        on_path: Dict[Term, int] = {start: 0}
        stack = [self._frame(start, 0, 0, 0)]
        while stack:
            frame = stack[-1]
            if frame.pending:
                succ, weight = frame.pending.pop()
                if succ in self.memo:
                    frame.best = frame.best.join(self.memo[succ].shift(weight))
                elif succ in on_path:
                    index = on_path[succ]
                    if frame.depth + weight > stack[index].depth:
                        lgr.debug("Cycle through %s", succ)
                        return Omega(witness=succ)
                    frame.low = min(frame.low, index)
                else:
                    index = len(stack)
                    on_path[succ] = index
                    depth = frame.depth + weight
                    stack.append(self._frame(succ, depth, weight, index))
            else:
                stack.pop()
                del on_path[frame.term]
                if frame.low >= frame.index and frame.best.is_exact:
                    self.memo[frame.term] = frame.best
                if stack:
                    parent = stack[-1]
                    parent.best = parent.best.join(frame.best.shift(frame.weight))
                    parent.low = min(parent.low, frame.low)
        return frame.best


@lru_cache(maxsize=CACHE_SIZE)
def has_random_descent(trs: Trs) -> bool:
    """Whether all maximal innermost reductions of a term have equal length"""
    from .transform import is_non_overlapping

    return is_non_overlapping(trs) is None


def height_function(
    strategy: Strategy,
    trs: Optional[Trs],
    fuel: int = DEFAULT_FUEL,
    deadline: Optional[Deadline] = None,
) -> Callable[[Term], DerivationHeight]:
    """
    A function measuring derivation heights under ``strategy``.  Every call
    gets the full ``fuel``; memoized heights are shared between calls.
    """
    if (
        not isinstance(strategy, RelativeInnermost)
        and trs is not None
        and has_random_descent(trs)
    ):
        return lambda t: rewrite_trace(t, strategy, trs, fuel, deadline).height
    engine = LongestPath(successor_function(strategy, trs), fuel, deadline)

    def height(t: Term) -> DerivationHeight:
        engine.refuel()
        return engine.height(t)

    return height


def derivation_height(
    t: Term,
    strategy: Strategy,
    trs: Optional[Trs] = None,
    fuel: int = DEFAULT_FUEL,
    deadline: Optional[Deadline] = None,
) -> DerivationHeight:
    """
    Length of the longest reduction from ``t``.  For `RelativeInnermost` only
    the counted steps are measured and ``trs`` is not consulted.
    """
    h = height_function(strategy, trs, fuel, deadline)(t)
    lgr.debug("dh(%s, %s) = %s", t, strategy.name, h)
    return h


def reachable_terms(
    t: Term, strategy: Strategy, trs: Optional[Trs], fuel: int = DEFAULT_FUEL
) -> Optional[Set[Term]]:
    """
    All terms reachable from ``t``, or `None` if ``fuel`` runs out or a term
    grows past ``MAX_TERM_SIZE``
    """
    successors = successor_function(strategy, trs)
    seen = {t}
    todo = [t]
    while todo:
        if len(seen) > fuel:
            return None
        u = todo.pop()
        if term_size(u) > MAX_TERM_SIZE:
            return None
        for v, _ in successors(u):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def normal_forms(
    t: Term, strategy: Strategy, trs: Optional[Trs], fuel: int = DEFAULT_FUEL
) -> Optional[Set[Term]]:
    reachable = reachable_terms(t, strategy, trs, fuel)
    if reachable is None:
        return None
    base = strategy.relative.union if isinstance(strategy, RelativeInnermost) else trs
    assert base is not None
    return {u for u in reachable if is_normal_form(u, base)}


def argument_normalize(t: Term, trs: Trs, fuel: int = DEFAULT_FUEL) -> Optional[Term]:
    """
    Rewrite the arguments of ``t`` to normal form with parallel-innermost
    steps strictly below the root.  Returns `None` when ``fuel`` steps do not
    suffice.
    """
    from .transform import is_non_overlapping

    overlap = is_non_overlapping(trs)
    if overlap is not None:
        raise NotSupportedError(
            "argument normal forms are only computed for non-overlapping"
            f" systems; overlap: {overlap}"
        )
    current = t
    for _ in range(fuel):
        if isinstance(current, Var):
            return current
        if term_size(current) > MAX_TERM_SIZE:
            break
        redexes = _innermost_positions(current, trs)
        if not redexes or redexes == [ROOT]:
            return current
        # non-overlapping: exactly one parallel successor
        current = next(_parallel_steps(current, trs)).result
    lgr.warning("Argument normalization of %s ran out of fuel", t)
    return None


class Trace(NamedTuple):
    start: Term
    steps: List[Step]
    final: Term
    exhausted: bool
    cycle: bool

    @property
    def length(self) -> int:
        return sum(s.weight for s in self.steps)

    @property
    def height(self) -> DerivationHeight:
        if self.cycle:
            return Omega(witness=self.final)
        if self.exhausted:
            return AtLeast(self.length)
        return Finite(self.length)


def rewrite_trace(
    t: Term,
    strategy: Strategy,
    trs: Optional[Trs],
    fuel: int = DEFAULT_FUEL,
    deadline: Optional[Deadline] = None,
) -> Trace:
    """
    Follow one reduction: the leftmost innermost redex with the first matching
    rule, or (parallel) every innermost redex with its first matching rule
    """
    taken: List[Step] = []
    seen = {t}
    current = t
    while True:
        step = next(steps(current, strategy, trs), None)
        if step is None:
            return Trace(t, taken, current, False, False)
        if len(taken) >= fuel or term_size(current) > MAX_TERM_SIZE:
            lgr.warning("Trace from %s stopped after %d steps", t, len(taken))
            return Trace(t, taken, current, True, False)
        taken.append(step)
        if len(taken) % 1000 == 0:
            check_deadline(deadline)
        current = step.result
        if current in seen:
            return Trace(t, taken, current, False, True)
        seen.add(current)


def all_rewrite_traces(
    t: Term, strategy: Strategy, trs: Optional[Trs], fuel: int = DEFAULT_FUEL
) -> List[Trace]:
    """Every maximal reduction from ``t``, cut at revisits and at ``fuel`` steps"""
    traces: List[Trace] = []
    budget = fuel
    todo: List[Tuple[Term, List[Step]]] = [(t, [])]
    while todo:
        current, path = todo.pop()
        options = list(steps(current, strategy, trs))
        if not options:
            traces.append(Trace(t, path, current, False, False))
            continue
        visited = {t} | {s.result for s in path[:-1]}
        if path and path[-1].result in visited:
            traces.append(Trace(t, path, current, False, True))
            continue
        if budget <= 0 or term_size(current) > MAX_TERM_SIZE:
            traces.append(Trace(t, path, current, True, False))
            continue
        budget -= 1
        for step in reversed(options):
            todo.append((step.result, path + [step]))
    return traces


def format_redexes(t: Term, redexes: Sequence[Position]) -> str:
    """Render ``t`` with every redex wrapped in brackets"""
    marked = set(redexes)
    return render_term(t, lambda pos, text: f"[{text}]" if pos in marked else text)


def format_step(step: Step) -> str:
    where = ", ".join(format_position(p) for p in step.positions)
    return f"at {where} by {'; '.join(map(str, step.rules))}"


class EmpiricalRow(NamedTuple):
    n: int
    value: DerivationHeight
    truncated: bool


def cumulative_rows(
    by_size: Dict[int, DerivationHeight], max_size: int, complete_up_to: int
) -> List[EmpiricalRow]:
    """Turn per-size maxima into the running supremum for sizes 1..max_size"""
    rows = []
    running: DerivationHeight = Finite(0)
    for n in range(1, max_size + 1):
        running = running.join(by_size.get(n, Finite(0)))
        partial = n > complete_up_to
        if partial and isinstance(running, Finite):
            rows.append(EmpiricalRow(n, AtLeast(running.n), True))
        else:
            rows.append(EmpiricalRow(n, running, partial))
    return rows


def empirical_complexity(
    trs: Optional[Trs],
    strategy: Strategy,
    max_size: int,
    fuel: int = DEFAULT_FUEL,
    cap: int = DEFAULT_ENUMERATION_CAP,
    deadline: Optional[Deadline] = None,
) -> List[EmpiricalRow]:
    """
    For each ``n <= max_size``, the supremum of derivation heights over the
    enumerated ground basic terms of size at most ``n``.  Rows past the last
    completely enumerated size are lower bounds only and reported as
    `AtLeast`.
    """
    if isinstance(strategy, RelativeInnermost):
        basis = strategy.relative.union
    else:
        assert trs is not None
        basis = trs
    enumerated = enumerate_ground_basic(basis, max_size, cap)
    height = height_function(strategy, trs, fuel, deadline)
    by_size: Dict[int, DerivationHeight] = {}
    for t in enumerated.terms:
        check_deadline(deadline)
        n = term_size(t)
        by_size[n] = by_size.get(n, Finite(0)).join(height(t))
    rows = cumulative_rows(by_size, max_size, enumerated.complete_up_to)
    lgr.info(
        "Sampled %s over %d basic terms up to size %d",
        strategy.name,
        len(enumerated.terms),
        max_size,
    )
    return rows


def fit_growth_degree(
    samples: Sequence[Tuple[int, DerivationHeight]]
) -> Optional[int]:
    """
    Smallest ``d <= MAX_FIT_DEGREE`` for which ``value(n) / n**d`` is stable
    over the upper half of the samples: the ratios stay within a factor of 2
    and show no polynomial growth (log-log slope at most 1/2).  Only `Finite`
    samples are used; `None` with fewer than ``MIN_FIT_SAMPLES`` of them.
    """
    finite = sorted((s[0], s[1].n) for s in samples if isinstance(s[1], Finite))
    if len(finite) < MIN_FIT_SAMPLES:
        return None
    top = finite[len(finite) // 2 :]
    ns = np.array([n for n, v in top if v > 0 and n > 0], dtype=float)
    values = np.array([v for n, v in top if v > 0 and n > 0], dtype=float)
    if len(values) < 2:
        return 0
    for d in range(MAX_FIT_DEGREE + 1):
        ratios = values / ns**d
        if ratios.max() > 2 * ratios.min():
            continue
        slope = np.polyfit(np.log(ns), np.log(ratios), 1)[0]
        if slope <= 0.5:
            return d
    return None
