"""Exception and warning classes raised by stabproj."""


class StabprojError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGrid(StabprojError, ValueError):
    """Frequency grid is unsorted, non-finite, negative or too short."""


class NonMonotonic(InvalidGrid):
    """Frequencies read from a file are not strictly increasing."""


class NonRealDc(StabprojError, ValueError):
    """The 0 Hz sample of a Hermitian response has an imaginary part."""


class GridMismatch(StabprojError, ValueError):
    """Two responses that must share a frequency grid do not."""


class InvalidSpec(StabprojError, ValueError):
    """A filter specification violates its invariants."""


class InfeasibleSpec(StabprojError, ValueError):
    """The requested filter cannot be realized at the given order."""

    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


class BandTooNarrow(StabprojError, ValueError):
    """Bandpass edges are too close to fit two elliptic sections."""


class InsufficientGrid(StabprojError, ValueError):
    """Too few samples, or an FFT grid that is too coarse for the data."""


class CoefficientMismatch(StabprojError, ValueError):
    """Fourier coefficients were computed with a different Moebius map."""


class OrderCapReached(StabprojError, RuntimeError):
    """No singular-value gap was found below the maximum model order."""

    def __init__(self, message, singular_values=None):
        super().__init__(message)
        self.singular_values = singular_values


class IllConditioned(StabprojError, RuntimeError):
    """Least-squares system too ill-conditioned for a reliable fit."""


class BadSpec(StabprojError, ValueError):
    """Invalid parameters for a synthetic system generator."""


class MultiplePole(StabprojError, ValueError):
    """Residue calculus for a repeated pole is not supported in this path."""


class ParseError(StabprojError, ValueError):
    """Malformed line in an FRF CSV file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DiscPoleOutside(UserWarning):
    """Realized disc pole on or outside the unit circle; it was dropped."""
