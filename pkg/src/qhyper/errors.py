"""Exception types shared across the engine."""


class QHyperError(Exception):
    """Base class for engine errors."""


class UnsupportedRegimeError(QHyperError):
    """Raised for (N, k) outside the general-type window k > N.

    The truncation step divides by k - N, so the Calabi-Yau case k = N and
    the borderline Fano case k = N - 1 are rejected loudly instead of
    producing silently wrong numbers.
    """


class TruncationError(QHyperError):
    """A requested degree exceeds the truncation order of upstream data."""


class EliminationError(QHyperError):
    """The flat-section elimination met a malformed system."""


class ReductionError(QHyperError):
    """The correlator reduction could not make progress on a key."""


class SectorError(QHyperError):
    """The commuting-matrix family violates its defining conditions."""


class IntegrationError(QHyperError):
    """A coordinate-change row is not a total derivative at this truncation."""


class CacheFormatError(QHyperError):
    """A cache file does not match the documented JSON schema."""


class CacheVersionError(CacheFormatError):
    """A cache file declares an unsupported schema version."""
