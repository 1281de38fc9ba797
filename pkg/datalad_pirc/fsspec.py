from __future__ import annotations

import logging
import os.path
from pathlib import Path
from types import SimpleNamespace, TracebackType
from typing import Any, List, Optional

import aiohttp
from aiohttp_retry import ListRetry, RetryClient
from datalad import cfg
from datalad.distribution.dataset import Dataset, require_dataset
from fsspec.core import url_to_fs
from fsspec.exceptions import BlocksizeMismatchError
from fsspec.implementations.cached import CachingFileSystem
from fsspec.implementations.http import HTTPFileSystem
import methodtools

from .consts import CACHE_SIZE
from .errors import PircError

lgr = logging.getLogger("datalad.pirc.fsspec")

FIXTURE_PREFIX = "fixture:"
FIXTURES_DIR = Path(__file__).with_name("fixtures")


def fixture_names() -> List[str]:
    return sorted(p.stem for p in FIXTURES_DIR.glob("*.trs"))


def fixture_path(name: str) -> Path:
    path = FIXTURES_DIR / f"{name}.trs"
    if not path.exists():
        raise FileNotFoundError(
            f"No bundled fixture {name!r}; known: {', '.join(fixture_names())}"
        )
    return path


def default_cache_storage() -> str:
    return os.path.join(str(cfg.obtain("datalad.locations.cache")), "pirc")


def caching_enabled(caching: Optional[str] = None) -> bool:
    value = caching if caching is not None else cfg.get("datalad.pirc.cache", "none")
    if value not in ("none", "ondisk"):
        raise PircError(f"caching must be 'none' or 'ondisk', got {value!r}")
    return value == "ondisk"


class SourceReader:
    """
    Read TRS sources and certificates given as local paths (relative ones
    resolved against ``base``), ``file://`` or ``http(s)://`` URLs, or
    ``fixture:NAME`` for a bundled fixture
    """

    def __init__(
        self,
        base: str | Path | None = None,
        caching: bool = False,
        cache_storage: Optional[str] = None,
    ) -> None:
        self.base = Path(base) if base is not None else Path.cwd()
        self.caching = caching
        fs = HTTPFileSystem(get_client=get_client)
        if self.caching:
            self.fs = CachingFileSystem(
                fs=fs, cache_storage=cache_storage or default_cache_storage()
            )
        else:
            self.fs = fs

    def __enter__(self) -> SourceReader:
        return self

    def __exit__(
        self,
        _exc_type: Optional[type[BaseException]],
        _exc_val: Optional[BaseException],
        _exc_tb: Optional[TracebackType],
    ) -> None:
        self.read_text.cache_clear()

    def resolve(self, source: str) -> Path:
        if source.startswith(FIXTURE_PREFIX):
            return fixture_path(source[len(FIXTURE_PREFIX) :])
        return self.base / os.path.expanduser(source)

    @methodtools.lru_cache(maxsize=CACHE_SIZE)
    def read_text(self, source: str) -> str:
        if is_http_url(source):
            lgr.debug("%s: reading via fsspec", source)
            try:
                with self.fs.open(source, "rb") as fp:
                    blob = fp.read()
            except BlocksizeMismatchError as e:
                lgr.warning(
                    "%s: Blocksize mismatch: %s; deleting cached file and"
                    " re-reading",
                    source,
                    e,
                )
                self.fs.pop_from_cache(source)
                with self.fs.open(source, "rb") as fp:
                    blob = fp.read()
            return blob.decode("utf-8")
        elif source.startswith("file://"):
            fs, path = url_to_fs(source)
            with fs.open(path, "rb") as fp:
                return fp.read().decode("utf-8")
        else:
            path = self.resolve(source)
            lgr.debug("%s: reading %s", source, path)
            return path.read_text(encoding="utf-8")

    def clear(self) -> None:
        if self.caching:
            self.fs.clear_cache()


def reader_for(
    dataset: Optional[Dataset | str] = None, caching: Optional[str] = None
) -> SourceReader:
    """A reader resolving relative paths against ``dataset`` if one is given"""
    base = None
    if dataset is not None:
        ds = require_dataset(dataset, purpose="read TRS sources", check_installed=True)
        base = ds.path
    return SourceReader(base, caching=caching_enabled(caching))


def is_http_url(s: str) -> bool:
    return s.lower().startswith(("http://", "https://"))


async def on_request_start(
    _session: aiohttp.ClientSession,
    trace_config_ctx: SimpleNamespace,
    params: aiohttp.TraceRequestStartParams,
) -> None:
    if trace_config_ctx.trace_request_ctx["current_attempt"] > 1:
        lgr.warning("Retrying request to %s", params.url)


async def get_client(**kwargs: Any) -> RetryClient:
    trace_config = aiohttp.TraceConfig()
    trace_config.on_request_start.append(on_request_start)
    return RetryClient(
        client_session=aiohttp.ClientSession(
            trace_configs=[trace_config],
            **kwargs,
        ),
        retry_options=ListRetry(timeouts=[1, 2, 6, 15, 36]),
    )
