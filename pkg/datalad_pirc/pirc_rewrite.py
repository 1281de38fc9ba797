from __future__ import annotations

from typing import Any, Dict, Iterator, List, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureInt, EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .consts import DEFAULT_FUEL
from .errors import NotSupportedError, PircError
from .fsspec import reader_for
from .rewriting import (
    INNERMOST,
    PARALLEL_INNERMOST,
    RelativeInnermost,
    Strategy,
    Trace,
    all_rewrite_traces,
    format_redexes,
    format_step,
    rewrite_trace,
)
from .terms import format_position
from .tpdb import parse, parse_term
from .trs import RelativeTrs, Trs
from .utils import config_int, error_result, render_result

STRATEGIES = ["innermost", "parallel-innermost", "relative-innermost"]


def trace_to_json(trace: Trace) -> Dict[str, Any]:
    steps = []
    current = trace.start
    for step in trace.steps:
        steps.append(
            {
                "term": format_redexes(current, step.positions),
                "positions": [format_position(p) for p in step.positions],
                "rules": [str(r) for r in step.rules],
                "result": str(step.result),
                "counted": step.weight,
            }
        )
        current = step.result
    return {
        "start": str(trace.start),
        "steps": steps,
        "final": str(trace.final),
        "length": trace.length,
        "normal_form": not (trace.exhausted or trace.cycle),
        "cycle": trace.cycle,
        "exhausted": trace.exhausted,
    }


def render_trace(trace: Trace) -> List[str]:
    lines = []
    current = trace.start
    for i, step in enumerate(trace.steps, start=1):
        lines.append(f"{i:>4}: {format_redexes(current, step.positions)}")
        lines.append(f"      {format_step(step)}")
        current = step.result
    if trace.exhausted:
        lines.append(f"stopped at {trace.final}")
    elif trace.cycle:
        lines.append(f"{trace.final} was reached before: the reduction does not end")
    else:
        lines.append(f"normal form: {trace.final}")
    lines.append(f"steps: {trace.length}")
    return lines


def choose_strategy(name: str, system: Trs | RelativeTrs) -> tuple[Strategy, Trs]:
    if name == "relative-innermost":
        if not isinstance(system, RelativeTrs):
            raise NotSupportedError(
                "relative-innermost rewriting needs rules written with ->="
            )
        return RelativeInnermost(system), system.union
    trs = system.union if isinstance(system, RelativeTrs) else system
    return (INNERMOST if name == "innermost" else PARALLEL_INNERMOST), trs


@build_doc
class PircRewrite(Interface):
    """
    Show the reduction of a term, with the rewritten redexes in brackets

    Sequential innermost rewriting contracts the leftmost innermost redex;
    every redex is contracted with the first matching rule in file order.
    With --all-paths every maximal reduction is listed instead.
    """

    result_renderer = "tailored"

    _params_ = {
        "dataset": Parameter(
            args=("-d", "--dataset"),
            doc="""dataset to resolve relative input paths against.  No
            dataset is needed to read plain files.""",
            constraints=EnsureDataset() | EnsureNone(),
        ),
        "path": Parameter(
            args=("path",),
            doc="TRS in TPDB format: a path, an http(s) URL or fixture:NAME",
            constraints=EnsureStr(),
        ),
        "term": Parameter(
            args=("term",),
            doc="Ground start term over the signature of the TRS",
            constraints=EnsureStr(),
        ),
        "strategy": Parameter(
            args=("--strategy",),
            choices=STRATEGIES,
            doc="""Rewrite relation; relative-innermost only counts steps with
            rules written ->.  [Default: parallel-innermost, or
            relative-innermost for relative systems]""",
        ),
        "all_paths": Parameter(
            args=("--all-paths",),
            action="store_true",
            doc="List every maximal reduction instead of the deterministic one",
        ),
        "fuel": Parameter(
            args=("--fuel",),
            metavar="N",
            doc="Give up after this many steps",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print the trace as JSON",
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="Whether to cache remote inputs on disk",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_rewrite")
    @eval_results
    def __call__(
        path: str,
        term: str,
        dataset: Optional[Dataset] = None,
        strategy: Optional[str] = None,
        all_paths: bool = False,
        fuel: Optional[int] = None,
        json: bool = False,  # noqa: U100
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        try:
            fuel = config_int("fuel", fuel, DEFAULT_FUEL)
            with reader_for(dataset, caching) as reader:
                system = parse(reader.read_text(path))
            if strategy is None:
                strategy = (
                    "relative-innermost"
                    if isinstance(system, RelativeTrs)
                    else "parallel-innermost"
                )
            chosen, trs = choose_strategy(strategy, system)
            start = parse_term(term, trs.signature)
        except (PircError, OSError) as e:
            yield error_result("pirc-rewrite", path, e)
            return
        if all_paths:
            traces = all_rewrite_traces(start, chosen, trs, fuel)
        else:
            traces = [rewrite_trace(start, chosen, trs, fuel)]
        lines = []
        for i, trace in enumerate(traces, start=1):
            if all_paths:
                lines.append(f"path {i}:")
            lines.extend(render_trace(trace))
        exhausted = any(t.exhausted for t in traces)
        yield get_status_dict(
            action="pirc-rewrite",
            path=path,
            status="impossible" if exhausted else "ok",
            message=f"fuel of {fuel} steps exhausted" if exhausted else None,
            strategy=strategy,
            trace=[trace_to_json(t) for t in traces],
            text="\n".join(lines),
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "trace")
