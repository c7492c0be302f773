"""Exception types shared across the package.

Grouped here so the CLI can map error classes onto exit codes uniformly.
"""


class ColoredKhError(Exception):
    """Base class for all package-specific errors."""


# --- diagram ingestion ---

class MalformedPD(ColoredKhError):
    """PD-code text or JSON could not be parsed."""


class InconsistentIncidence(ColoredKhError):
    """An edge identifier is not used exactly twice, or orientations cannot
    be traced consistently."""


class MultiComponent(ColoredKhError):
    """The diagram has more than one link component."""


# --- cube / resolution ---

class StateLengthMismatch(ColoredKhError):
    """Resolution state length differs from the crossing count."""


class BitAlreadyOne(ColoredKhError):
    """Saddle classification requested at a crossing whose bit is already 1."""


class CubeTooLarge(ColoredKhError):
    """Crossing count exceeds the configured cube bound."""


class InconsistentSaddle(ColoredKhError):
    """Saddle data contradicts the component counts of its endpoints."""


class ZeroSaddleViolation(ColoredKhError):
    """A component-preserving saddle where neither side backtracks.

    This cannot happen for planar diagrams; it signals corrupted input.
    """


# --- linear algebra ---

class DimensionMismatch(ColoredKhError):
    """Matrix shapes are incompatible."""


class ComposeNonzero(ColoredKhError):
    """A pair of boundary maps does not compose to zero."""


# --- oracle ---

class TooManyCrossings(ColoredKhError):
    """Diagram exceeds the oracle bound."""


# --- spectral ---

class InvalidFiltration(ColoredKhError):
    """A differential block does not raise filtration by its declared step."""


# --- cli / cache ---

class CacheCorrupt(ColoredKhError):
    """A cache entry failed its content-hash check."""
