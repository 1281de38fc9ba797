"""
The per-file analysis pipeline behind ``pirc-analyze``.

Phases run in a fixed order and share one deadline for the whole analysis; a
phase that runs out of time is recorded as ``"timeout"`` and the remaining
phases still run with whatever time is left.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
import hashlib
import logging
from pathlib import Path
import time
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, TypeVar

from .consts import (
    DEFAULT_COEFF,
    DEFAULT_DEGREE,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_FUEL,
    DEFAULT_MAX_SIZE,
    DEFAULT_SEARCH_BUDGET,
    EMPIRICAL_LABEL,
    ESCALATED_COEFF,
    IRC_BUDGET_SHARE,
)
from .dependency_tuples import (
    DtProblem,
    DtRule,
    canonical_parallel_problem,
    canonical_sequential_problem,
    has_no_parallelism,
)
from .errors import InvariantViolation, NotApplicableError, PhaseTimeout, PircError
from .interpretation import (
    ComplexityBound,
    PolyDegree,
    Unbounded,
    Unknown,
    bound_to_json,
    prove_upper_bound,
    replay_witness,
)
from .rewriting import (
    INNERMOST,
    PARALLEL_INNERMOST,
    EmpiricalRow,
    Omega,
    RelativeInnermost,
    empirical_complexity,
    fit_growth_degree,
)
from .tpdb import System, serialize
from .transform import (
    ConfluenceVerdict,
    Confluent,
    confluence_parallel_innermost,
    delta,
)
from .trs import RelativeTrs, Trs
from .utils import Deadline, config_float, config_int

lgr = logging.getLogger("datalad.pirc.analysis")

TIMEOUT = "timeout"

T = TypeVar("T")


@dataclass(frozen=True)
class AnalysisConfig:
    max_size: int = DEFAULT_MAX_SIZE
    fuel: int = DEFAULT_FUEL
    degree: int = DEFAULT_DEGREE
    coeff: int = DEFAULT_COEFF
    search_budget: int = DEFAULT_SEARCH_BUDGET
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    #: seconds for the whole analysis; `None` for no limit
    timeout: Optional[float] = None
    empirical: bool = True

    def __post_init__(self) -> None:
        for name in ("max_size", "fuel", "coeff", "search_budget", "enumeration_cap"):
            if getattr(self, name) < 1:
                raise PircError(f"{name.replace('_', '-')} must be positive")
        if self.degree < 0:
            raise PircError("degree must not be negative")
        if self.timeout is not None and self.timeout <= 0:
            raise PircError("timeout must be positive")

    @classmethod
    def from_config(
        cls,
        max_size: Optional[int] = None,
        fuel: Optional[int] = None,
        degree: Optional[int] = None,
        coeff: Optional[int] = None,
        timeout: Optional[float] = None,
        empirical: bool = True,
    ) -> AnalysisConfig:
        """Explicit values override ``datalad.pirc.*`` settings and defaults"""
        return cls(
            max_size=config_int("max-size", max_size, DEFAULT_MAX_SIZE),
            fuel=config_int("fuel", fuel, DEFAULT_FUEL),
            degree=config_int("degree", degree, DEFAULT_DEGREE),
            coeff=config_int("coeff", coeff, DEFAULT_COEFF),
            search_budget=config_int("search-budget", None, DEFAULT_SEARCH_BUDGET),
            enumeration_cap=config_int(
                "enumeration-cap", None, DEFAULT_ENUMERATION_CAP
            ),
            timeout=config_float("timeout", timeout),
            empirical=empirical,
        )


@dataclass
class EmpiricalTable:
    """Sampled complexities per strategy, all over the same sizes"""

    columns: Dict[str, List[EmpiricalRow]]

    def fitted_degree(self, column: str) -> Optional[int]:
        return fit_growth_degree(self.columns[column])

    @property
    def sizes(self) -> List[int]:
        first = next(iter(self.columns.values()), [])
        return [row.n for row in first]

    def to_json(self) -> Dict[str, Any]:
        rows = []
        for i, n in enumerate(self.sizes):
            row: Dict[str, Any] = {"n": n}
            for name, column in self.columns.items():
                row[name] = column[i].value.to_json()
            row["truncated"] = any(c[i].truncated for c in self.columns.values())
            rows.append(row)
        data: Dict[str, Any] = {"rows": rows, "label": EMPIRICAL_LABEL}
        for name in self.columns:
            data[f"fitted_{name}_degree"] = self.fitted_degree(name)
        return data

    def render(self) -> List[str]:
        names = list(self.columns)
        lines = ["{:>4}".format("n") + "".join(f"{name:>12}" for name in names)]
        for i, n in enumerate(self.sizes):
            cells = "".join(f"{str(self.columns[c][i].value):>12}" for c in names)
            lines.append(f"{n:>4}{cells}")
        fitted = ", ".join(
            f"{name} {_or_none(self.fitted_degree(name))}" for name in names
        )
        lines.append(f"fitted degrees ({EMPIRICAL_LABEL}): {fitted}")
        return lines


def sample_table(
    system: System,
    max_size: int,
    fuel: int = DEFAULT_FUEL,
    cap: int = DEFAULT_ENUMERATION_CAP,
    deadline: Optional[Deadline] = None,
) -> EmpiricalTable:
    """irc and pirc samples, or the relative sample for a relative system"""
    if isinstance(system, RelativeTrs):
        return EmpiricalTable(
            {
                "relative": empirical_complexity(
                    None, RelativeInnermost(system), max_size, fuel, cap, deadline
                )
            }
        )
    return EmpiricalTable(
        {
            "irc": empirical_complexity(
                system, INNERMOST, max_size, fuel, cap, deadline
            ),
            "pirc": empirical_complexity(
                system, PARALLEL_INNERMOST, max_size, fuel, cap, deadline
            ),
        }
    )


@dataclass
class AnalysisReport:
    source: str
    digest: str
    trs: Trs
    no_parallelism: Optional[bool] = None
    confluence: Optional[ConfluenceVerdict] = None
    pdts: Optional[Tuple[DtRule, ...]] = None
    upper_bound: Optional[ComplexityBound] = None
    irc_upper_bound: Optional[ComplexityBound] = None
    delta_path: Optional[str] = None
    empirical: Optional[EmpiricalTable] = None
    timeouts: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def tight(self) -> bool:
        """Proven pirc degree agrees with the fitted one on a confluent system"""
        if not isinstance(self.confluence, Confluent):
            return False
        if not isinstance(self.upper_bound, PolyDegree) or self.empirical is None:
            return False
        return self.upper_bound.k == self.empirical.fitted_degree("pirc")

    def _phase(
        self, name: str, value: Optional[T], render: Callable[[T], Any]
    ) -> Any:
        if name in self.timeouts:
            return TIMEOUT
        return None if value is None else render(value)

    def to_json(self, timings: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "input": {
                "source": self.source,
                "sha256": self.digest,
                "rules": len(self.trs),
            },
            "thm6_no_parallelism": self._phase(
                "parallelism", self.no_parallelism, bool
            ),
            "confluence": self._phase(
                "confluence", self.confluence, lambda v: v.to_json()
            ),
            "pdts": self._phase("pdts", self.pdts, lambda v: [str(d) for d in v]),
            "upper_bound": self._phase("upper_bound", self.upper_bound, bound_to_json),
            "irc_upper_bound": self._phase(
                "irc_upper_bound", self.irc_upper_bound, bound_to_json
            ),
            "delta_path": self._phase("delta", self.delta_path, str),
            "empirical": self._phase(
                "empirical", self.empirical, lambda e: e.to_json()
            ),
            "tight": self.tight,
        }
        if timings:
            data["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return data

    def render(self) -> str:
        lines = [f"{self.source} ({len(self.trs)} rules)"]
        if "parallelism" in self.timeouts:
            lines.append("  parallelism: timeout")
        elif self.no_parallelism:
            lines.append(
                "  parallelism: none (every right-hand side has a single chain"
                " of calls); pirc = irc, analysing DT(R)"
            )
        elif self.no_parallelism is not None:
            lines.append("  parallelism: some right-hand sides call in parallel")
        if self.pdts is not None:
            lines.append(f"  PDTs: {len(self.pdts)}")
            lines.extend(f"    {d}" for d in self.pdts)
        lines.append(f"  pirc upper bound: {self._describe('upper_bound')}")
        lines.append(f"  irc upper bound: {self._describe('irc_upper_bound')}")
        for step in getattr(self.upper_bound, "witness", ()):
            lines.append(
                f"    removed {len(step.removed)} DTs with degree {step.degree}:"
            )
            lines.append(f"      {step.interpretation}")
        lines.append(f"  confluence: {_or_none(self._value('confluence'))}")
        if self.delta_path is not None:
            lines.append(f"  delta written to {self.delta_path}")
        if "empirical" in self.timeouts:
            lines.append("  empirical: timeout")
        elif self.empirical is not None:
            lines.append("  empirical:")
            lines.extend(f"    {line}" for line in self.empirical.render())
        if self.tight:
            lines.append("  tight: proven degree matches the empirical estimate")
        return "\n".join(lines)

    def _value(self, phase: str) -> Any:
        return TIMEOUT if phase in self.timeouts else getattr(self, phase)

    def _describe(self, phase: str) -> str:
        bound = self._value(phase)
        if isinstance(bound, Unknown) and bound.reason:
            return f"unknown ({bound.reason})"
        return _or_none(bound)


def _or_none(value: Any) -> str:
    return "n/a" if value is None else str(value)


class _Phases:
    def __init__(self, report: AnalysisReport, timeout: Optional[float]) -> None:
        self.report = report
        self.expires = None if timeout is None else time.monotonic() + timeout

    def remaining(self) -> Optional[float]:
        if self.expires is None:
            return None
        return max(self.expires - time.monotonic(), 0.0)

    @contextmanager
    def __call__(self, name: str) -> Iterator[Deadline]:
        lgr.info("%s: starting phase %s", self.report.source, name)
        start = time.monotonic()
        try:
            yield Deadline(self.remaining(), name)
        except PhaseTimeout:
            self.report.timeouts.append(name)
        finally:
            self.report.timings[name] = time.monotonic() - start


def prove(
    problem: DtProblem,
    config: AnalysisConfig,
    deadline: Optional[Deadline] = None,
    budget: Optional[int] = None,
    escalate: bool = True,
) -> ComplexityBound:
    """
    Search with the configured coefficients, escalating once on failure
    unless ``escalate`` is off.  ``budget`` overrides the configured search
    budget.
    """
    if budget is None:
        budget = config.search_budget
    bound = prove_upper_bound(problem, config.degree, config.coeff, budget, deadline)
    if escalate and isinstance(bound, Unknown) and config.coeff < ESCALATED_COEFF:
        lgr.warning(
            "No bound with coefficients up to %d; retrying with up to %d",
            config.coeff,
            ESCALATED_COEFF,
        )
        bound = prove_upper_bound(
            problem, config.degree, ESCALATED_COEFF, budget, deadline
        )
    return bound


def certify(problem: DtProblem, bound: ComplexityBound) -> None:
    """Replay the witness of a proven bound as ``pirc-check`` would"""
    if not isinstance(bound, PolyDegree):
        return
    try:
        replayed = replay_witness(problem, [s.interpretation for s in bound.witness])
    except NotApplicableError as e:
        raise InvariantViolation(f"proof witness does not replay: {e}")
    if replayed.degree != bound.degree:
        raise InvariantViolation(
            f"proof witness replays to {replayed}, but {bound} was reported"
        )


def analyze(
    trs: Trs,
    source: str,
    text: str = "",
    config: Optional[AnalysisConfig] = None,
    delta_path: Optional[Path] = None,
) -> AnalysisReport:
    if config is None:
        config = AnalysisConfig()
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    report = AnalysisReport(source, digest, trs)
    phase = _Phases(report, config.timeout)
    parallel = canonical_parallel_problem(trs)
    problem = parallel

    with phase("parallelism"):
        report.no_parallelism = has_no_parallelism(trs)
    with phase("pdts"):
        report.pdts = parallel.dts
        if report.no_parallelism:
            lgr.info("%s: no parallel calls, analysing DT(R)", source)
            problem = canonical_sequential_problem(trs)
    with phase("upper_bound") as deadline:
        report.upper_bound = prove(problem, config, deadline)
        certify(parallel, report.upper_bound)
        lgr.info("%s: pirc upper bound %s", source, report.upper_bound)
    with phase("irc_upper_bound") as deadline:
        if report.no_parallelism and report.upper_bound is not None:
            report.irc_upper_bound = report.upper_bound
        else:
            report.irc_upper_bound = prove(
                canonical_sequential_problem(trs),
                config,
                deadline,
                budget=max(config.search_budget // IRC_BUDGET_SHARE, 1),
                escalate=False,
            )
    with phase("confluence"):
        report.confluence = confluence_parallel_innermost(trs)
    if delta_path is not None:
        with phase("delta"):
            delta_path.write_text(serialize(delta(problem)), encoding="utf-8")
            report.delta_path = str(delta_path)
    if config.empirical:
        with phase("empirical") as deadline:
            report.empirical = sample_table(
                trs, config.max_size, config.fuel, config.enumeration_cap, deadline
            )
    if isinstance(report.upper_bound, Unknown) and report.empirical is not None:
        for row in report.empirical.columns["pirc"]:
            if isinstance(row.value, Omega):
                lgr.info("%s: found a non-terminating start term", source)
                report.upper_bound = Unbounded(
                    report.upper_bound.witness, row.value.witness
                )
                break
    return report
