"""Exception types shared across the package.

Every error carries a short ``category`` string; the command line tool
prints failures as one line on stderr with the stable prefix
``ERROR:<category>:`` so callers can match on it.
"""


class QumemError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"


class InvalidDimensionError(QumemError):
    """Bad or mismatched dimensions (cutoffs, image sizes)."""

    category = "dimension"


class TruncationError(QumemError):
    """Base for errors caused by a too-small Fock cutoff."""

    category = "truncation"


class CutoffInsufficientError(TruncationError):
    """The requested state or channel output does not fit below the cutoff."""


class TruncationLeakageError(TruncationError):
    """An operation pushed more probability past the cutoff than allowed."""


class InvalidParameterError(QumemError):
    """Physical parameter outside its allowed range (eta, nbar, kappa, alpha)."""

    category = "parameter"


class InvalidArgumentError(QumemError):
    """Malformed, empty, or inconsistent argument."""

    category = "argument"


class FrameRangeError(QumemError):
    """Frame index outside the ledger's 0..N range."""

    category = "range"


class DuplicateEntryError(QumemError):
    """(ledger, frame) pair registered twice in an entropy index."""

    category = "duplicate"


class ImageFormatError(QumemError):
    """Unreadable or malformed PGM/PPM input."""

    category = "parse"
