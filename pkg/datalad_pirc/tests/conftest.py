from contextlib import contextmanager
from http.server import HTTPServer, SimpleHTTPRequestHandler
import logging
import multiprocessing
import os
import time
from typing import Callable

import pytest
import requests

from datalad_pirc.fsspec import FIXTURES_DIR, fixture_path
from datalad_pirc.tpdb import System, parse
from datalad_pirc.trs import Trs

lgr = logging.getLogger("datalad.pirc.tests")


@pytest.fixture(autouse=True)
def capture_all_logs(caplog):
    caplog.set_level(logging.DEBUG, logger="datalad.pirc")


def pytest_addoption(parser) -> None:
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="Run the exhaustive oracle comparisons",
    )


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--slow"):
        skip_slow = pytest.mark.skip(reason="Only run when --slow is given")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)


def load_system(name: str) -> System:
    return parse(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def load_trs() -> Callable[[str], Trs]:
    def load(name: str) -> Trs:
        system = load_system(name)
        assert isinstance(system, Trs)
        return system

    return load


@pytest.fixture(scope="session")
def size_trs(load_trs):
    return load_trs("size")


@pytest.fixture(scope="session")
def doubles_trs(load_trs):
    return load_trs("doubles")


@pytest.fixture(scope="session")
def mod_trs(load_trs):
    return load_trs("mod")


@pytest.fixture(scope="session")
def size_relative():
    return load_system("size_relative")


def serve_path_via_http(hostname, path, queue):
    os.chdir(path)
    httpd = HTTPServer((hostname, 0), SimpleHTTPRequestHandler)
    queue.put(httpd.server_port)
    httpd.serve_forever()


@contextmanager
def local_server(directory):
    hostname = "127.0.0.1"
    queue = multiprocessing.Queue()
    p = multiprocessing.Process(
        target=serve_path_via_http, args=(hostname, directory, queue)
    )
    p.start()
    try:
        port = queue.get(timeout=300)
        url = f"http://{hostname}:{port}"
        lgr.debug("HTTP: serving %s at %s", directory, url)
        with pytest.MonkeyPatch().context() as m:
            m.delenv("http_proxy", raising=False)
            for _ in range(10):
                try:
                    requests.get(url, timeout=1)
                except requests.RequestException:
                    time.sleep(0.1)
                else:
                    break
            else:
                raise RuntimeError("Server did not come up in time")
            yield url
    finally:
        lgr.debug("HTTP: stopping server")
        p.terminate()


@pytest.fixture(scope="session")
def served_fixtures():
    """Base URL under which the bundled ``*.trs`` files are served"""
    with local_server(FIXTURES_DIR) as url:
        yield url
