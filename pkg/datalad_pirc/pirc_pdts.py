from __future__ import annotations

from typing import Any, Dict, Iterator, List, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .dependency_tuples import has_no_parallelism, parallel_dts
from .errors import PircError
from .fsspec import reader_for
from .tpdb import parse
from .trs import RelativeTrs, Trs
from .utils import error_result, render_result


def pdt_listing(trs: Trs) -> List[Dict[str, Any]]:
    """The parallel dependency tuples of every rule, in file order"""
    return [
        {"rule": str(rule), "pdts": [str(d) for d in parallel_dts(rule, trs)]}
        for rule in trs.rules
    ]


@build_doc
class PircPdts(Interface):
    """
    List the parallel dependency tuples of a TRS, grouped by rule
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
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print the listing as JSON",
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="Whether to cache remote inputs on disk",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_pdts")
    @eval_results
    def __call__(
        path: str,
        dataset: Optional[Dataset] = None,
        json: bool = False,  # noqa: U100
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        try:
            with reader_for(dataset, caching) as reader:
                system = parse(reader.read_text(path))
        except (PircError, OSError) as e:
            yield error_result("pirc-pdts", path, e)
            return
        trs = system.union if isinstance(system, RelativeTrs) else system
        groups = pdt_listing(trs)
        listing = {
            "groups": groups,
            "count": len({d for g in groups for d in g["pdts"]}),
            "no_parallelism": has_no_parallelism(trs),
        }
        lines = []
        for g in groups:
            lines.append(g["rule"])
            lines.extend(f"  {d}" for d in g["pdts"])
        lines.append(f"{listing['count']} PDTs")
        if listing["no_parallelism"]:
            lines.append("no parallel calls: the PDTs are the sequential DTs")
        yield get_status_dict(
            action="pirc-pdts",
            path=path,
            status="ok",
            pdts=listing,
            text="\n".join(lines),
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "pdts")
