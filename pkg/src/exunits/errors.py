"""Exception hierarchy shared by the library and the CLI exit-code protocol."""

import os

DEFAULT_ENUM_LIMIT = 10**7
DEFAULT_FIELD_LIMIT = 2**20


class ExUnitsError(Exception):
    """Base class for all library errors."""


class SizeLimitError(ExUnitsError):
    """An enumeration or construction would exceed the configured size cap."""


class UnsupportedError(ExUnitsError):
    """The requested combination of ring, element and method is not supported."""


class ParseError(ExUnitsError, ValueError):
    """Syntax error in a ring or element expression.

    ``position`` is the 0-based character offset into ``text`` where the
    problem was detected.
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return self.message
        caret = " " * self.position + "^"
        return f"{self.message} at position {self.position}\n  {self.text}\n  {caret}"


def enum_limit() -> int:
    """Enumeration cap, overridable through ``EXUNITS_SIZE_LIMIT``."""
    raw = os.environ.get("EXUNITS_SIZE_LIMIT")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ENUM_LIMIT
