from __future__ import annotations

from typing import Any, Dict, Iterator, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureInt, EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .analysis import sample_table
from .consts import DEFAULT_ENUMERATION_CAP, DEFAULT_FUEL, DEFAULT_MAX_SIZE
from .errors import PircError
from .fsspec import reader_for
from .tpdb import parse
from .utils import config_int, error_result, render_result


@build_doc
class PircEmpirical(Interface):
    """
    Sample the runtime complexity of a TRS on all small basic start terms

    For each size n the table shows the longest innermost and
    parallel-innermost reductions from basic terms of size at most n (for a
    relative TRS: the most counted steps under relative innermost
    rewriting), and the polynomial degree fitted to the samples.  Values
    shown as ">=k" are lower bounds from incomplete enumerations.  These are
    estimates, not proofs.
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
        "max_size": Parameter(
            args=("--max-size",),
            metavar="N",
            doc="Largest start term size",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "fuel": Parameter(
            args=("--fuel",),
            metavar="N",
            doc="How many terms to explore per start term",
            constraints=EnsureInt() | EnsureNone(),
        ),
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print the table as JSON",
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="Whether to cache remote inputs on disk",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_empirical")
    @eval_results
    def __call__(
        path: str,
        dataset: Optional[Dataset] = None,
        max_size: Optional[int] = None,
        fuel: Optional[int] = None,
        json: bool = False,  # noqa: U100
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        try:
            max_size = config_int("max-size", max_size, DEFAULT_MAX_SIZE)
            fuel = config_int("fuel", fuel, DEFAULT_FUEL)
            cap = config_int("enumeration-cap", None, DEFAULT_ENUMERATION_CAP)
            if max_size < 1 or fuel < 1:
                raise PircError("max-size and fuel must be positive")
            with reader_for(dataset, caching) as reader:
                system = parse(reader.read_text(path))
        except (PircError, OSError) as e:
            yield error_result("pirc-empirical", path, e)
            return
        table = sample_table(system, max_size, fuel, cap)
        yield get_status_dict(
            action="pirc-empirical",
            path=path,
            status="ok",
            table=table.to_json(),
            text="\n".join(table.render()),
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "table")
