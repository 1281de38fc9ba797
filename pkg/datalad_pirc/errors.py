"""Exceptions raised by the PIRC extension"""

from __future__ import annotations

from typing import Optional

from datalad.runner.exception import CommandError


class PircError(ValueError):
    """Base class for errors caused by invalid input"""


class InvalidPositionError(PircError):
    pass


class MissingSymbolError(PircError):
    pass


class NotSupportedError(PircError):
    pass


class NotApplicableError(PircError):
    pass


class RuleError(PircError):
    pass


class CertificateError(PircError):
    pass


class TpdbSyntaxError(PircError):
    def __init__(
        self, msg: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> None:
        self.line = line
        self.column = column
        if line is not None:
            msg = f"line {line}, column {column}: {msg}"
        super().__init__(msg)


class ArityMismatchError(TpdbSyntaxError):
    pass


class AmbiguousSymbolError(TpdbSyntaxError):
    pass


class PhaseTimeout(Exception):
    """Raised when an analysis phase runs past its deadline"""


class InvariantViolation(CommandError):
    """An internal consistency check failed; reported with exit code 2"""

    def __init__(self, msg: str) -> None:
        super().__init__(cmd="pirc", msg=msg, code=2)
