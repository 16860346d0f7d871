"""Exception types shared across the library."""


class InstantonZetaError(Exception):
    """Base class for all library errors."""


class RingMismatchError(InstantonZetaError):
    """Two series with different coefficient rings were combined."""


class TruncationError(InstantonZetaError):
    """A coefficient beyond the known truncation was requested."""


class NotInvertibleError(InstantonZetaError):
    """Series inversion failed (zero series or non-invertible lead)."""


class FractionalExponentError(InstantonZetaError):
    """Half-period shift applied to a series with non-integer exponents."""


class PoleAtOneError(InstantonZetaError):
    """Rational function in t has a pole at t = 1."""

    def __init__(self, order: int):
        self.order = order
        super().__init__(f"pole of order {order} at t = 1")


class IntegrityError(InstantonZetaError):
    """A structural guarantee failed (non-polynomial smooth coefficient,
    pole in a t -> 1 limit, non-integer Euler characteristic)."""


class ConfigurationError(InstantonZetaError):
    """Inconsistent lattice / coset / surface configuration."""


class PrecisionError(InstantonZetaError):
    """Requested numeric precision is unreachable within the truncation cap."""
