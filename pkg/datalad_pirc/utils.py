from __future__ import annotations

import json
import logging
import time
from typing import Any, Dict, Optional

from datalad import cfg
from datalad.interface.results import get_status_dict
from datalad.ui import ui

from .errors import PhaseTimeout, PircError

lgr = logging.getLogger("datalad.pirc.utils")


def config_int(name: str, value: Optional[int], default: int) -> int:
    """
    Resolve an integer setting: explicit value first, then the
    ``datalad.pirc.<name>`` configuration item, then ``default``
    """
    if value is not None:
        return int(value)
    raw = cfg.get(f"datalad.pirc.{name}", None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise PircError(f"datalad.pirc.{name}: not an integer: {raw!r}")


def config_float(name: str, value: Optional[float]) -> Optional[float]:
    if value is not None:
        return float(value)
    raw = cfg.get(f"datalad.pirc.{name}", None)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise PircError(f"datalad.pirc.{name}: not a number: {raw!r}")


class Deadline:
    """Cooperative wall-clock limit for one analysis phase"""

    def __init__(self, seconds: Optional[float], phase: str = "") -> None:
        self.phase = phase
        self.seconds = seconds
        self.expires: Optional[float]
        if seconds is None:
            self.expires = None
        else:
            self.expires = time.monotonic() + seconds

    def check(self) -> None:
        if self.expires is not None and time.monotonic() > self.expires:
            lgr.warning("Phase %r ran out of its %ss", self.phase, self.seconds)
            raise PhaseTimeout(self.phase)


def check_deadline(deadline: Optional[Deadline]) -> None:
    if deadline is not None:
        deadline.check()


def error_result(action: str, path: str, exc: Exception) -> Dict[str, Any]:
    """Status record for an input error"""
    lgr.debug("%s on %s failed: %s", action, path, exc)
    return get_status_dict(action=action, path=path, status="error", message=str(exc))


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def render_result(res: Dict[str, Any], as_json: bool, payload: str) -> None:
    """
    Print ``res[payload]`` as JSON or the plain-text rendering in
    ``res["text"]``; failures are reported with their message and any
    partial output
    """
    if res["status"] != "ok":
        ui.message(
            f"{res['action']}({res['status']}): {res['path']}:"
            f" {res.get('message', '')}"
        )
        if res.get("text"):
            ui.message(res["text"])
    elif as_json:
        ui.message(dump_json(res[payload]))
    else:
        ui.message(res["text"])
