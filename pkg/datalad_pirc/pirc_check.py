from __future__ import annotations

import json
from typing import Any, Dict, Iterator, Optional

from datalad.distribution.dataset import Dataset, EnsureDataset, datasetmethod
from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict
from datalad.support.constraints import EnsureNone, EnsureStr
from datalad.support.param import Parameter

from .dependency_tuples import canonical_parallel_problem
from .errors import CertificateError, NotSupportedError, PircError
from .fsspec import reader_for
from .interpretation import (
    PolyDegree,
    bound_to_json,
    interpretations_from_json,
    replay_witness,
)
from .tpdb import parse
from .trs import RelativeTrs
from .utils import error_result, render_result


def load_certificate(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateError(f"certificate is not valid JSON: {e}") from e


@build_doc
class PircCheck(Interface):
    """
    Check a polynomial interpretation certificate against a TRS

    The certificate is a JSON object mapping symbol names (f, f#, Com_k) to
    polynomials, either as lists of [coefficient, [exponents...]] monomials
    or as strings like "2*x1 + x1^2".  A list of such objects (or the report
    of pirc-analyze --json) is replayed as a chain of reduction pair steps
    on the canonical parallel dependency tuple problem.  The certificate is
    accepted when the steps remove all dependency tuples.
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
        "certificate": Parameter(
            args=("certificate",),
            doc="JSON certificate: a path or an http(s) URL",
            constraints=EnsureStr(),
        ),
        "json": Parameter(
            args=("--json",),
            action="store_true",
            doc="Print the verdict as JSON",
        ),
        "caching": Parameter(
            args=("--caching",),
            choices=["none", "ondisk"],
            doc="Whether to cache remote inputs on disk",
        ),
    }

    @staticmethod
    @datasetmethod(name="pirc_check")
    @eval_results
    def __call__(
        path: str,
        certificate: str,
        dataset: Optional[Dataset] = None,
        json: bool = False,  # noqa: U100
        caching: Optional[str] = None,
    ) -> Iterator[Dict[str, Any]]:
        try:
            with reader_for(dataset, caching) as reader:
                system = parse(reader.read_text(path))
                data = load_certificate(reader.read_text(certificate))
            if isinstance(system, RelativeTrs):
                raise NotSupportedError("certificates are checked for plain TRSs only")
            problem = canonical_parallel_problem(system)
            bound = replay_witness(problem, interpretations_from_json(data, problem))
        except (PircError, OSError) as e:
            yield error_result("pirc-check", path, e)
            return
        verdict = bound_to_json(bound)
        accepted = isinstance(bound, PolyDegree)
        verdict["accepted"] = accepted
        lines = [
            f"step {i}: removed {len(s.removed)} DTs, degree {s.degree}"
            for i, s in enumerate(bound.witness, start=1)
        ]
        if accepted:
            lines.append(f"accepted: pirc in {bound}")
        else:
            lines.append(f"rejected: {getattr(bound, 'reason', '')}")
        yield get_status_dict(
            action="pirc-check",
            path=path,
            status="ok" if accepted else "error",
            message=None if accepted else "certificate does not remove all DTs",
            verdict=verdict,
            text="\n".join(lines),
        )

    @staticmethod
    def custom_result_renderer(res: Dict[str, Any], **kwargs: Any) -> None:
        render_result(res, kwargs.get("json", False), "verdict")
