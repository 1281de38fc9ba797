"""
From DT problems to relative TRSs, and a sufficient criterion for the
confluence of parallel-innermost rewriting
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Any, Dict, NamedTuple, Optional, Union

from .dependency_tuples import DtProblem
from .terms import ROOT, Position, Var, format_position, iter_positions, unify
from .trs import RelativeTrs, Rule, Trs, rename_apart

lgr = logging.getLogger("datalad.pirc.transform")


def delta(problem: DtProblem) -> RelativeTrs:
    """``S / ((D \\ S) ∪ R)``, DTs taken as rules with ``Com_k`` as constructors"""
    strict = set(problem.strict)
    counted = tuple(d.as_rule() for d in problem.dts if d in strict)
    weak = tuple(d.as_rule() for d in problem.dts if d not in strict)
    return RelativeTrs(
        Trs(counted),
        Trs(weak + problem.trs.rules, problem.trs.extra_symbols),
    )


class Overlap(NamedTuple):
    #: 1-based indices of the rules in the system
    outer_index: int
    inner_index: int
    outer: Rule
    inner: Rule
    #: position in the left-hand side of ``outer``
    position: Position

    def __str__(self) -> str:
        return (
            f"rule {self.inner_index} ({self.inner}) overlaps rule"
            f" {self.outer_index} ({self.outer}) at {format_position(self.position)}"
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "outer": str(self.outer),
            "inner": str(self.inner),
            "position": format_position(self.position),
        }


def is_non_overlapping(trs: Trs, include_self_root: bool = False) -> Optional[Overlap]:
    """
    Return the first overlap between a left-hand side and a non-variable
    subterm of a left-hand side, or `None`.  A rule's overlap with itself at
    the root only counts with ``include_self_root``.
    """
    for i, outer in enumerate(trs.rules, start=1):
        for j, inner in enumerate(trs.rules, start=1):
            renamed = rename_apart(inner, outer.variables)
            for pos, sub in iter_positions(outer.lhs):
                if isinstance(sub, Var):
                    continue
                if i == j and pos == ROOT and not include_self_root:
                    continue
                if unify(sub, renamed.lhs) is not None:
                    overlap = Overlap(i, j, outer, inner, pos)
                    lgr.debug("Found overlap: %s", overlap)
                    return overlap
    return None


@dataclass(frozen=True)
class Confluent:
    reason: str = "non-overlapping"

    def __str__(self) -> str:
        return f"confluent ({self.reason})"

    def to_json(self) -> Dict[str, Any]:
        return {"verdict": "confluent", "reason": self.reason}


@dataclass(frozen=True)
class ConfluenceUnknown:
    overlap: Overlap

    def __str__(self) -> str:
        return f"unknown ({self.overlap})"

    def to_json(self) -> Dict[str, Any]:
        return {"verdict": "unknown", "overlap": self.overlap.to_json()}


ConfluenceVerdict = Union[Confluent, ConfluenceUnknown]


def confluence_parallel_innermost(trs: Trs) -> ConfluenceVerdict:
    overlap = is_non_overlapping(trs)
    if overlap is None:
        return Confluent()
    return ConfluenceUnknown(overlap)
