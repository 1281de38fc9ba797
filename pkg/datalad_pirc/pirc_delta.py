from __future__ import annotations

from typing import Any, Dict, Iterator, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .dependency_tuples import canonical_parallel_problem
from .errors import NotSupportedError, PircError
from .fsspec import reader_for
from .tpdb import parse, serialize
from .transform import delta
from .trs import RelativeTrs
from .utils import error_result, render_result


@build_doc
class PircDelta(Interface):
    """
    Export the canonical parallel dependency tuple problem of a TRS as a
    relative TRS

    The counted rules are the dependency tuples, the free rules the original
    rules.  The result is written in TPDB format for other complexity tools.
    """

    result_renderer = "tailored"

    _params_ = {
        "dataset": Parameter(
            args=("-d", "--dataset"),
            doc="""dataset to resolve relative input and output paths
            against.  No dataset is needed for plain files.""",
            constraints=EnsureDataset() | EnsureNone(),
        ),
        "path": Parameter(
            args=("path",),
            doc="TRS in TPDB format: a path, an http(s) URL or fixture:NAME",
            constraints=EnsureStr(),
        ),
        "output": Parameter(
            args=("-o", "--output"),
            metavar="PATH",
            doc="Where to write the relative TRS; printed if not given",
            constraints=EnsureStr() | EnsureNone(),
        ),
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print a JSON summary instead of the relative TRS",
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="Whether to cache remote inputs on disk",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_delta")
    @eval_results
    def __call__(
        path: str,
        dataset: Optional[Dataset] = None,
        output: Optional[str] = None,
        json: bool = False,  # noqa: U100
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        try:
            with reader_for(dataset, caching) as reader:
                system = parse(reader.read_text(path))
                if isinstance(system, RelativeTrs):
                    raise NotSupportedError("the input is already a relative TRS")
                relative = delta(canonical_parallel_problem(system))
                text = serialize(relative)
                target = None
                if output is not None:
                    target = reader.base / output
                    target.write_text(text, encoding="utf-8")
        except (PircError, OSError) as e:
            yield error_result("pirc-delta", path, e)
            return
        summary = {
            "output": None if target is None else str(target),
            "counted": len(relative.counted),
            "free": len(relative.free),
        }
        yield get_status_dict(
            action="pirc-delta",
            path=path,
            status="ok",
            delta=summary,
            text=text if target is None else f"wrote {target}",
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "delta")
