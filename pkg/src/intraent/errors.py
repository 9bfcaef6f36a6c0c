"""Exception types raised by the public API."""


class IntraentError(ValueError):
    """Base class for all validation and domain errors in this package."""


class NotHermitian(IntraentError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotPSD(IntraentError):
    """Matrix has an eigenvalue below the negative-rounding tolerance."""


class NotNormalized(IntraentError):
    """State amplitudes (or polar magnitudes) do not have unit norm."""


class ZeroVector(IntraentError):
    """All four amplitudes are zero; no state can be constructed."""


class TraceNotOne(IntraentError):
    """Density matrix trace differs from one beyond tolerance."""


class ParamOutOfRange(IntraentError):
    """Channel or grid parameter outside its admissible interval."""


class IndexOutOfRange(IntraentError):
    """Operator index outside the 0..3 range."""


class ComplexStateUnsupported(IntraentError):
    """Closed form only covers real amplitudes; use the numeric path."""


class InvalidParams(IntraentError):
    """Non-Markovian rate parameters violate their admissibility condition."""


class GridTooCoarse(IntraentError):
    """Parameter grid has too few points for the requested operation."""
