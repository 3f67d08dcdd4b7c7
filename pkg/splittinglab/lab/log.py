"""Console log formatting."""

import logging
from typing import ClassVar


class ExtraFormatter(logging.Formatter):
    """Standard format followed by the ``extra=`` fields as ``key=value`` pairs."""

    RESERVED: ClassVar[frozenset[str]] = frozenset(
        vars(logging.LogRecord("", 0, "", 0, "", None, None)).keys() | {"message", "asctime"},
    )

    def format(self: "ExtraFormatter", record: logging.LogRecord) -> str:
        """Append the fields that are not part of every record."""
        line = super().format(record)
        extras = {k: v for k, v in vars(record).items() if k not in self.RESERVED and not k.startswith("_")}
        if not extras:
            return line
        return line + " " + " ".join(f"{k}={v}" for k, v in sorted(extras.items()))
