"""Logging setup for the hyptree command line."""

import logging
import sys
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "hyptree"
FILE_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


def setup_logging(debug: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    """Route hyptree's log records to stderr, and optionally to a file.

    Handlers are attached to the package logger rather than the root, so numba
    and the other libraries keep their own levels. Calling this again replaces
    the handlers of the previous call.

    Args:
        debug: Show DEBUG records on the console, with source paths
        log_file: Path of a log file that receives every record at DEBUG

    Returns:
        The package logger
    """
    package = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(package.handlers):
        package.removeHandler(handler)
        handler.close()

    console_handler = RichHandler(
        console=Console(file=sys.stderr),
        show_time=True,
        show_path=debug,
        rich_tracebacks=True,
        log_time_format="[%X]",
    )
    console_handler.setLevel(logging.DEBUG if debug else logging.INFO)
    package.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        package.addHandler(file_handler)

    package.setLevel(logging.DEBUG if debug or log_file else logging.INFO)
    # numba's compiler logs at DEBUG once the root is lowered elsewhere
    logging.getLogger("numba").setLevel(logging.WARNING)
    return package
