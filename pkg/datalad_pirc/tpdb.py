"""
Reading and writing term rewrite systems in the TPDB "old" format::

    (VAR x y)
    (STRATEGY INNERMOST)
    (RULES
      plus(Zero, y) -> y
      plus(S(x), y) -> S(plus(x, y))
    )

Rules written with ``->=`` are free (relative) rules.  ``f#`` denotes the
sharp twin of ``f`` and ``Com_k`` the compound symbol of arity ``k``.
"""

from __future__ import annotations

import logging
import re
from typing import (
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Set,
    Tuple,
    Type,
    Union,
)

from .errors import (
    AmbiguousSymbolError,
    ArityMismatchError,
    RuleError,
    TpdbSyntaxError,
)
from .fsspec import SourceReader
from .terms import (
    COMPOUND_PREFIX,
    SHARP_SUFFIX,
    App,
    Symbol,
    SymbolKind,
    Term,
    Var,
    symbols_of,
    variables_in_order,
)
from .trs import RelativeTrs, Rule, Trs

lgr = logging.getLogger("datalad.pirc.tpdb")

System = Union[Trs, RelativeTrs]

TOKEN_RX = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<arrow>->=|->)
    | (?P<punct>[(),])
    | (?P<ident>(?:[A-Za-z0-9_\#]|-(?!>))+)
    """,
    re.X,
)
COMMENT_RX = re.compile(r"\(\s*COMMENT\b")
COMPOUND_RX = re.compile(re.escape(COMPOUND_PREFIX) + r"(\d+)")

KNOWN_STRATEGIES = {"INNERMOST"}


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


def location(text: str, pos: int) -> Tuple[int, int]:
    """1-based line and column of offset ``pos``"""
    line = text.count("\n", 0, pos) + 1
    return line, pos - text.rfind("\n", 0, pos)


def _skip_balanced(text: str, pos: int) -> int:
    depth = 0
    for i in range(pos, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i + 1
    raise TpdbSyntaxError("unterminated COMMENT section", *location(text, pos))


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if COMMENT_RX.match(text, pos):
            pos = _skip_balanced(text, pos)
            continue
        m = TOKEN_RX.match(text, pos)
        if m is None:
            raise TpdbSyntaxError(
                f"unexpected character {text[pos]!r}", *location(text, pos)
            )
        assert m.lastgroup is not None
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, tokens: List[Token]) -> None:
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.variables: Set[str] = set()
        self.arities: Dict[str, Tuple[int, SymbolKind]] = {}

    def error(
        self,
        msg: str,
        token: Optional[Token] = None,
        cls: Type[TpdbSyntaxError] = TpdbSyntaxError,
    ) -> TpdbSyntaxError:
        if token is None:
            token = self.peek()
        if token is None:
            return cls(f"{msg} at end of input", *location(self.text, len(self.text)))
        return cls(msg, *location(self.text, token.pos))

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of input")
        self.i += 1
        return token

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.take()
        if token.kind != kind or (value is not None and token.value != value):
            raise self.error(f"expected {value or kind!r}, got {token.value!r}", token)
        return token

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        token = self.peek()
        return (
            token is not None
            and token.kind == kind
            and (value is None or token.value == value)
        )

    def sections(self) -> List[Tuple[Token, int, int]]:
        """``(name, first token, token after the closing parenthesis)``"""
        found = []
        while self.peek() is not None:
            self.expect("punct", "(")
            name = self.expect("ident")
            start = self.i
            depth = 1
            while depth:
                token = self.take()
                if token.value == "(":
                    depth += 1
                elif token.value == ")":
                    depth -= 1
            found.append((name, start, self.i))
        return found

    def symbol(self, name: str, arity: int, token: Token) -> Symbol:
        m = COMPOUND_RX.fullmatch(name)
        if m:
            if int(m.group(1)) != arity:
                raise self.error(
                    f"{name} must have arity {m.group(1)}, got {arity}",
                    token,
                    ArityMismatchError,
                )
            return Symbol.compound(arity)
        if name.endswith(SHARP_SUFFIX) and len(name) > 1:
            base, kind = name[: -len(SHARP_SUFFIX)], SymbolKind.SHARP
        else:
            base, kind = name, SymbolKind.PLAIN
        known = self.arities.setdefault(base, (arity, kind))
        if known[0] != arity:
            raise self.error(
                f"{name} is used with arity {arity} but elsewhere with {known[0]}",
                token,
                ArityMismatchError,
            )
        return Symbol(base, arity, kind)

    def term(self) -> Term:
        # one entry per open application: its head token and parsed arguments
        open_apps: List[Tuple[Token, List[Term]]] = []
        while True:
            token = self.expect("ident")
            if self.at("punct", "("):
                self.take()
                if not self.at("punct", ")"):
                    open_apps.append((token, []))
                    continue
                self.take()
                t = self.build(token, [], True)
            else:
                t = self.build(token, [], False)
            while open_apps:
                head, args = open_apps[-1]
                args.append(t)
                if self.at("punct", ","):
                    self.take()
                    break
                self.expect("punct", ")")
                open_apps.pop()
                t = self.build(head, args, True)
            else:
                return t

    def build(self, token: Token, args: List[Term], parens: bool) -> Term:
        if token.value in self.variables:
            if parens:
                raise self.error(
                    f"{token.value} is declared as a variable but applied to"
                    " arguments",
                    token,
                    AmbiguousSymbolError,
                )
            return Var(token.value)
        return App(self.symbol(token.value, len(args), token), tuple(args))

    def rules(self, end: int) -> List[Tuple[Rule, bool]]:
        found = []
        while self.i < end - 1:
            start = self.peek()
            lhs = self.term()
            arrow = self.expect("arrow")
            rhs = self.term()
            try:
                rule = Rule(lhs, rhs)
            except RuleError as e:
                raise self.error(str(e), start) from e
            found.append((rule, arrow.value == "->="))
        self.expect("punct", ")")
        return found

    def parse(self) -> System:
        sections = self.sections()
        for name, start, end in sections:
            if name.value == "VAR":
                for token in self.tokens[start : end - 1]:
                    if token.kind != "ident":
                        raise self.error("VAR lists identifiers only", token)
                    self.variables.add(token.value)
        counted: List[Rule] = []
        free: List[Rule] = []
        extra: List[Symbol] = []
        for name, start, end in sections:
            self.i = start
            if name.value == "VAR":
                continue
            elif name.value == "RULES":
                for rule, is_free in self.rules(end):
                    (free if is_free else counted).append(rule)
            elif name.value == "STRATEGY":
                strategy = " ".join(t.value for t in self.tokens[start : end - 1])
                if strategy not in KNOWN_STRATEGIES:
                    lgr.warning(
                        "Strategy %s is not supported; rules are analysed"
                        " under innermost rewriting",
                        strategy,
                    )
            elif name.value == "SIG":
                while not self.at("punct", ")"):
                    self.expect("punct", "(")
                    ident = self.expect("ident")
                    arity = self.expect("ident")
                    if not arity.value.isdigit():
                        raise self.error("arity must be a natural number", arity)
                    self.expect("punct", ")")
                    extra.append(self.symbol(ident.value, int(arity.value), ident))
            else:
                raise self.error(f"unsupported section {name.value}", name)
        if free:
            return RelativeTrs(Trs(tuple(counted), tuple(extra)), Trs(tuple(free)))
        return Trs(tuple(counted), tuple(extra))


def parse(text: str) -> System:
    return _Parser(text, tokenize(text)).parse()


def parse_term(
    text: str, signature: Iterable[Symbol], variables: Iterable[str] = ()
) -> Term:
    """Parse a term whose function symbols must come from ``signature``"""
    parser = _Parser(text, tokenize(text))
    parser.variables = set(variables)
    known = {}
    for s in signature:
        if not s.is_compound:
            parser.arities[s.name] = (s.arity, s.kind)
        known[str(s)] = s
    t = parser.term()
    trailing = parser.peek()
    if trailing is not None:
        raise parser.error(f"unexpected {trailing.value!r} after term", trailing)
    for s in symbols_of(t):
        if str(s) not in known:
            raise TpdbSyntaxError(f"unknown function symbol {s}")
    return t


def serialize(system: System) -> str:
    if isinstance(system, RelativeTrs):
        rules = [(r, "->") for r in system.counted.rules]
        rules.extend((r, "->=") for r in system.free.rules)
        declared = system.union
    else:
        rules = [(r, "->") for r in system.rules]
        declared = system
    if not rules and not declared.extra_symbols:
        return "(RULES )"
    names: Dict[str, None] = {}
    for r, _ in rules:
        names.update(dict.fromkeys(variables_in_order(r.lhs)))
    lines = []
    if names:
        lines.append(f"(VAR {' '.join(names)})")
    lines.append("(STRATEGY INNERMOST)")
    lines.append("(RULES")
    lines.extend(f"  {r.lhs} {arrow} {r.rhs}" for r, arrow in rules)
    lines.append(")")
    used = {s for r, _ in rules for s in symbols_of(r.lhs)} | {
        s for r, _ in rules for s in symbols_of(r.rhs)
    }
    unused = [s for s in declared.extra_symbols if s not in used]
    if unused:
        lines.append("(SIG " + " ".join(f"({s} {s.arity})" for s in unused) + ")")
    return "\n".join(lines) + "\n"


def load(source: str, reader: Optional[SourceReader] = None) -> System:
    """Parse the system stored at ``source`` (a path, URL or ``fixture:NAME``)"""
    if reader is None:
        reader = SourceReader()
    lgr.debug("Loading %s", source)
    return parse(reader.read_text(source))
