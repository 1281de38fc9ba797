from typing import Any, Dict, Iterator

from datalad.interface.base import Interface, build_doc, eval_results
from datalad.interface.results import get_status_dict

from .fsspec import SourceReader, default_cache_storage


@build_doc
class PircCacheClear(Interface):
    """
    Clear the on-disk cache of remote TRS sources and certificates
    """

    _params_: Dict[str, Any] = {}

    @staticmethod
    @eval_results
    def __call__() -> Iterator[Dict[str, Any]]:
        storage = default_cache_storage()
        SourceReader(caching=True, cache_storage=storage).clear()
        yield get_status_dict(action="pirc-cache-clear", path=storage, status="ok")
