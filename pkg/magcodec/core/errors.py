"""Exception hierarchy shared by the library and the command line."""
from __future__ import annotations

from typing import Dict, Type


class MagcodecError(Exception):
    """Base class for every error raised by magcodec."""


class MagValidationError(MagcodecError, ValueError):
    """An input violates a structural invariant (tuple, vertex, index, length)."""


class SelfLoopError(MagValidationError):
    """A composite edge joins a composite vertex to itself."""


class SizeCapExceededError(MagcodecError):
    """The space of possible composite edges is larger than the configured cap."""

    def __init__(self, n_possible_edges: int, cap: int) -> None:
        super().__init__(
            f"|E_c| = {n_possible_edges} exceeds the size cap of {cap} bits "
            "(set MAGCODEC_SIZE_CAP_BITS to override)"
        )
        self.n_possible_edges = n_possible_edges
        self.cap = cap


class DecodeError(MagValidationError):
    """A bit stream is malformed, truncated or carries trailing data."""


class DegenerateSpaceError(MagValidationError):
    """The multidimensional space has a single composite vertex, so E_c is empty."""


class CompressorError(MagcodecError):
    """Unknown compressor name or corrupt compressed payload."""


class ExperimentError(MagcodecError):
    """An experiment could not be set up or one of its row invariants broke."""


class ReportIOError(MagcodecError, OSError):
    """Writing or reading a report or encoded file failed."""


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SIZE_CAP = 3
EXIT_IO = 4

EXIT_CODES: Dict[Type[BaseException], int] = {
    SizeCapExceededError: EXIT_SIZE_CAP,
    ReportIOError: EXIT_IO,
    MagValidationError: EXIT_VALIDATION,
    CompressorError: EXIT_VALIDATION,
    ExperimentError: EXIT_VALIDATION,
    OSError: EXIT_IO,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for *exc*, matching the most specific class."""

    for klass in type(exc).__mro__:
        if klass in EXIT_CODES:
            return EXIT_CODES[klass]
    return 1
