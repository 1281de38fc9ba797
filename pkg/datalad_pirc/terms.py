"""
First-order terms, positions, substitutions, matching and unification.

Positions are tuples of 1-based argument indices; the root position is the
empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Set,
    Tuple,
    Union,
)

from .errors import InvalidPositionError

SymbolKind = Enum("SymbolKind", "PLAIN SHARP COMPOUND")

COMPOUND_PREFIX = "Com_"
SHARP_SUFFIX = "#"


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    kind: SymbolKind = SymbolKind.PLAIN

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name!r}")
        if self.kind is SymbolKind.COMPOUND and self.name != compound_name(
            self.arity
        ):
            raise ValueError(f"compound symbol {self.name!r} must have arity k")

    def __str__(self) -> str:
        if self.kind is SymbolKind.SHARP:
            return self.name + SHARP_SUFFIX
        return self.name

    @classmethod
    def compound(cls, k: int) -> Symbol:
        return cls(compound_name(k), k, SymbolKind.COMPOUND)

    @property
    def is_sharp(self) -> bool:
        return self.kind is SymbolKind.SHARP

    @property
    def is_compound(self) -> bool:
        return self.kind is SymbolKind.COMPOUND

    def sharpened(self) -> Symbol:
        if self.kind is not SymbolKind.PLAIN:
            raise ValueError(f"only plain symbols have a sharp twin: {self}")
        return Symbol(self.name, self.arity, SymbolKind.SHARP)

    def unsharpened(self) -> Symbol:
        if self.kind is not SymbolKind.SHARP:
            raise ValueError(f"not a sharp symbol: {self}")
        return Symbol(self.name, self.arity, SymbolKind.PLAIN)


def compound_name(k: int) -> str:
    return f"{COMPOUND_PREFIX}{k}"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class App:
    symbol: Symbol
    args: Tuple[Term, ...] = ()
    # Terms are hashed heavily as memo keys; both fields are computed once.
    _hash: int = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol} has arity {self.symbol.arity},"
                f" got {len(self.args)} arguments"
            )
        object.__setattr__(self, "_hash", hash((self.symbol, self.args)))
        object.__setattr__(self, "size", 1 + sum(term_size(a) for a in self.args))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, App):
            return NotImplemented
        pending: List[Tuple[Term, Term]] = [(self, other)]
        while pending:
            a, b = pending.pop()
            if a is b:
                continue
            if isinstance(a, Var) or isinstance(b, Var):
                if a != b:
                    return False
            elif a._hash != b._hash or a.size != b.size or a.symbol != b.symbol:
                return False
            else:
                pending.extend(zip(a.args, b.args))
        return True

    def __str__(self) -> str:
        return render_term(self)


Term = Union[Var, App]
Position = Tuple[int, ...]
Substitution = Mapping[str, Term]

ROOT: Position = ()


def app(symbol: Symbol, *args: Term) -> App:
    return App(symbol, tuple(args))


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return t.size


def root(t: Term) -> Optional[Symbol]:
    return t.symbol if isinstance(t, App) else None


def iter_positions(t: Term, prefix: Position = ROOT) -> Iterator[Tuple[Position, Term]]:
    """Yield ``(position, subterm)`` pairs in pre-order, left to right"""
    stack = [(prefix, t)]
    while stack:
        pos, s = stack.pop()
        yield pos, s
        if isinstance(s, App):
            for i in range(len(s.args), 0, -1):
                stack.append((pos + (i,), s.args[i - 1]))


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order, left to right, without materializing positions"""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, App):
            stack.extend(reversed(s.args))


def positions(t: Term) -> Set[Position]:
    return {p for p, _ in iter_positions(t)}


def subterm_at(t: Term, pos: Position) -> Term:
    s = t
    for depth, i in enumerate(pos):
        if not isinstance(s, App) or not 1 <= i <= len(s.args):
            raise InvalidPositionError(
                f"{format_position(pos)} is not a position of {t}"
                f" (fails at depth {depth + 1})"
            )
        s = s.args[i - 1]
    return s


def replace_at(t: Term, pos: Position, s: Term) -> Term:
    spine: List[App] = []
    current = t
    for i in pos:
        if not isinstance(current, App) or not 1 <= i <= len(current.args):
            raise InvalidPositionError(
                f"{format_position(pos)} is not a position of {t}"
            )
        spine.append(current)
        current = current.args[i - 1]
    result = s
    for parent, i in zip(reversed(spine), reversed(pos)):
        args = list(parent.args)
        args[i - 1] = result
        result = App(parent.symbol, tuple(args))
    return result


def strictly_above(tau: Position, pi: Position) -> bool:
    """``tau > pi``: ``pi`` is a strict prefix of ``tau``"""
    return len(pi) < len(tau) and tau[: len(pi)] == pi


def parallel_positions(pi: Position, tau: Position) -> bool:
    return not (pi == tau or strictly_above(pi, tau) or strictly_above(tau, pi))


def format_position(pos: Position) -> str:
    if not pos:
        return "ε"
    if all(i < 10 for i in pos):
        return "".join(map(str, pos))
    return ".".join(map(str, pos))


def render_term(
    t: Term, decorate: Optional[Callable[[Position, str], str]] = None
) -> str:
    """
    Render ``t`` in the usual ``f(a, b)`` notation.  ``decorate`` may rewrite
    the text of the subterm at every position.
    """
    done: List[str] = []
    stack: List[Tuple[Term, Position, bool]] = [(t, ROOT, False)]
    while stack:
        s, pos, expanded = stack.pop()
        if isinstance(s, Var):
            text = s.name
        elif not s.args:
            text = str(s.symbol)
        elif not expanded:
            stack.append((s, pos, True))
            for i in range(len(s.args), 0, -1):
                child = pos + (i,) if decorate is not None else pos
                stack.append((s.args[i - 1], child, False))
            continue
        else:
            k = len(s.args)
            text = f"{s.symbol}({', '.join(done[-k:])})"
            del done[-k:]
        done.append(decorate(pos, text) if decorate is not None else text)
    return done[0]


def variables(t: Term) -> Set[str]:
    return set(variables_in_order(t))


def variables_in_order(t: Term) -> List[str]:
    """Variable names in order of first (pre-order) occurrence"""
    seen: Dict[str, None] = {}
    for s in subterms(t):
        if isinstance(s, Var):
            seen.setdefault(s.name, None)
    return list(seen)


def is_ground(t: Term) -> bool:
    return not any(isinstance(s, Var) for s in subterms(t))


def symbols_of(t: Term) -> Iterator[Symbol]:
    for s in subterms(t):
        if isinstance(s, App):
            yield s.symbol


def map_variables(t: Term, leaf: Callable[[Var], Term]) -> Term:
    """Rebuild ``t`` bottom-up with every variable ``v`` replaced by ``leaf(v)``"""
    done: List[Term] = []
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        s, expanded = stack.pop()
        if isinstance(s, Var):
            done.append(leaf(s))
        elif not s.args:
            done.append(s)
        elif not expanded:
            stack.append((s, True))
            stack.extend((a, False) for a in reversed(s.args))
        else:
            k = len(s.args)
            args = tuple(done[-k:])
            del done[-k:]
            same = all(x is y for x, y in zip(args, s.args))
            done.append(s if same else App(s.symbol, args))
    return done[0]


def apply_substitution(sigma: Substitution, t: Term) -> Term:
    if not sigma:
        return t
    return map_variables(t, lambda v: sigma.get(v.name, v))


def match_term(pattern: Term, subject: Term) -> Optional[Dict[str, Term]]:
    """
    Return the matcher ``σ`` with ``pattern·σ = subject`` whose domain is the
    set of variables of ``pattern``, or `None`
    """
    sigma: Dict[str, Term] = {}
    pending = [(pattern, subject)]
    while pending:
        p, s = pending.pop()
        if isinstance(p, Var):
            bound = sigma.setdefault(p.name, s)
            if bound != s:
                return None
        elif isinstance(s, Var) or p.symbol != s.symbol:
            return None
        else:
            pending.extend(zip(p.args, s.args))
    return sigma


def _occurs(name: str, t: Term, sigma: Dict[str, Term]) -> bool:
    pending = [t]
    while pending:
        s = _walk(pending.pop(), sigma)
        if isinstance(s, Var):
            if s.name == name:
                return True
        else:
            pending.extend(s.args)
    return False


def _walk(t: Term, sigma: Dict[str, Term]) -> Term:
    while isinstance(t, Var) and t.name in sigma:
        t = sigma[t.name]
    return t


def _resolve(t: Term, sigma: Dict[str, Term]) -> Term:
    def bound(v: Var) -> Term:
        s = _walk(v, sigma)
        return s if isinstance(s, Var) else _resolve(s, sigma)

    return map_variables(t, bound)


def unify(s: Term, t: Term) -> Optional[Dict[str, Term]]:
    """Syntactic most general unifier (with occurs check), or `None`"""
    sigma: Dict[str, Term] = {}
    pending = [(s, t)]
    while pending:
        a, b = pending.pop()
        a = _walk(a, sigma)
        b = _walk(b, sigma)
        if a == b:
            continue
        if isinstance(a, Var):
            if _occurs(a.name, b, sigma):
                return None
            sigma[a.name] = b
        elif isinstance(b, Var):
            if _occurs(b.name, a, sigma):
                return None
            sigma[b.name] = a
        elif a.symbol != b.symbol:
            return None
        else:
            pending.extend(zip(a.args, b.args))
    return {name: _resolve(v, sigma) for name, v in sigma.items()}


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    stem = base.rstrip("0123456789") or "x"
    i = 0
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def rename_variables(t: Term, renaming: Mapping[str, str]) -> Term:
    return apply_substitution({old: Var(new) for old, new in renaming.items()}, t)


def alpha_equivalent(s: Term, t: Term) -> bool:
    """Structural equality up to a bijective renaming of variables"""
    forward: Dict[str, str] = {}
    backward: Dict[str, str] = {}
    pending = [(s, t)]
    while pending:
        a, b = pending.pop()
        if isinstance(a, Var) and isinstance(b, Var):
            if forward.setdefault(a.name, b.name) != b.name:
                return False
            if backward.setdefault(b.name, a.name) != a.name:
                return False
        elif isinstance(a, App) and isinstance(b, App) and a.symbol == b.symbol:
            pending.extend(zip(a.args, b.args))
        else:
            return False
    return True
