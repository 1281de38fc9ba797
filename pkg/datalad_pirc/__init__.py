"""DataLad extension for parallel-innermost runtime complexity analysis"""

from __future__ import annotations

__docformat__ = "restructuredtext"

from typing import Any, Dict, Iterator, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureFloat, EnsureInt, EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .errors import NotSupportedError, PircError
from .utils import error_result, render_result

__version__ = "0.1.0"

# Defines a datalad command suite.
# This variable must be bound as a setuptools entrypoint
command_suite = (
    # description of the command suite, displayed in cmdline help
    "DataLad parallel-innermost runtime complexity command suite",
    [
        # (module, class, cmdline name, Python API name)
        ("datalad_pirc", "PircAnalyze", "pirc-analyze", "pirc_analyze"),
        ("datalad_pirc.pirc_rewrite", "PircRewrite", "pirc-rewrite", "pirc_rewrite"),
        ("datalad_pirc.pirc_pdts", "PircPdts", "pirc-pdts", "pirc_pdts"),
        ("datalad_pirc.pirc_delta", "PircDelta", "pirc-delta", "pirc_delta"),
        (
            "datalad_pirc.pirc_empirical",
            "PircEmpirical",
            "pirc-empirical",
            "pirc_empirical",
        ),
        ("datalad_pirc.pirc_check", "PircCheck", "pirc-check", "pirc_check"),
        (
            "datalad_pirc.pirc_cache_clear",
            "PircCacheClear",
            "pirc-cache-clear",
            "pirc_cache_clear",
        ),
    ],
)


@build_doc
class PircAnalyze(Interface):
    """
    Prove an upper bound on the parallel-innermost runtime complexity of a
    term rewrite system

    The system is turned into its canonical parallel dependency tuple
    problem, which is then solved with polynomial interpretations.  The
    report also states whether the system has parallel calls at all, whether
    parallel-innermost rewriting is confluent, an irc bound for comparison
    and (unless disabled) complexities sampled on small start terms.  The
    sampled degrees are estimates only, not proofs.
    """

    result_renderer = "tailored"

    _params_ = {
        "dataset": Parameter(
            args=("-d", "--dataset"),
            doc="""dataset to resolve relative input paths against.  No
            dataset is needed to analyse plain files.""",
            constraints=EnsureDataset() | EnsureNone(),
        ),
        "path": Parameter(
            args=("path",),
            doc="""TRS in TPDB format: a path, an http(s) URL or
            fixture:NAME for a bundled example""",
            constraints=EnsureStr(),
        ),
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print the report as JSON",
        ),
        "max_size": Parameter(
            args=("--max-size",),
            metavar="N",
            doc="Largest start term size for the empirical samples",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "fuel": Parameter(
            args=("--fuel",),
            metavar="N",
            doc="How many terms to explore per derivation-height computation",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "degree": Parameter(
            args=("--degree",),
            metavar="N",
            doc="Maximal degree of interpretations of marked symbols",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "coeff": Parameter(
            args=("--coeff",),
            metavar="N",
            doc="Largest coefficient tried in interpretations",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "timeout": Parameter(
            args=("--timeout",),
            metavar="SECONDS",
            doc="Time limit for the whole analysis of one file",
            constraints=EnsureFloat() | EnsureNone(),
        ),
        "no_empirical": Parameter(
            args=("--no-empirical",),
            action="store_true",
            doc="Skip sampling complexities on small start terms",
        ),
        "delta": Parameter(
            args=("--delta",),
            metavar="PATH",
            doc="""Also write the relative TRS of the dependency tuple problem
            to PATH""",
            constraints=EnsureStr() | EnsureNone(),
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="""Whether to cache remote inputs on disk; defaults to the
            datalad.pirc.cache setting""",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_analyze")
    @eval_results
    def __call__(
        path: str,
        dataset: Optional[Dataset] = None,
        json: bool = False,  # noqa: U100
        max_size: Optional[int] = None,
        fuel: Optional[int] = None,
        degree: Optional[int] = None,
        coeff: Optional[int] = None,
        timeout: Optional[float] = None,
        no_empirical: bool = False,
        delta: Optional[str] = None,
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        from .analysis import AnalysisConfig, analyze
        from .fsspec import reader_for
        from .tpdb import parse
        from .trs import RelativeTrs

        try:
            config = AnalysisConfig.from_config(
                max_size=max_size,
                fuel=fuel,
                degree=degree,
                coeff=coeff,
                timeout=timeout,
                empirical=not no_empirical,
            )
            with reader_for(dataset, caching) as reader:
                text = reader.read_text(path)
                system = parse(text)
                if isinstance(system, RelativeTrs):
                    raise NotSupportedError(
                        "relative systems cannot be analysed; use pirc-empirical"
                        " or pirc-rewrite for them"
                    )
                delta_path = None
                if delta is not None:
                    delta_path = reader.base / delta
                report = analyze(system, path, text, config, delta_path)
        except (PircError, OSError) as e:
            yield error_result("pirc-analyze", path, e)
            return
        yield get_status_dict(
            action="pirc-analyze",
            path=path,
            status="ok",
            report=report.to_json(),
            text=report.render(),
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "report")
