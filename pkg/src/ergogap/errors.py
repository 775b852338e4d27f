"""Exception hierarchy shared by every ergogap module."""


class ErgogapError(ValueError):
    """Base class for all errors raised by ergogap."""


class NotHermitian(ErgogapError):
    def __init__(self, deviation):
        self.deviation = float(deviation)
        super().__init__(f"matrix is not Hermitian (max deviation {self.deviation:.3e})")


class NoConvergence(ErgogapError):
    def __init__(self, iterations):
        self.iterations = iterations
        super().__init__(f"Jacobi iteration did not converge after {iterations} sweeps")


class SizeOverflow(ErgogapError):
    pass


class DimensionMismatch(ErgogapError):
    pass


class NotNormalized(ErgogapError):
    pass


class BadLength(ErgogapError):
    pass


class WeightSum(ErgogapError):
    pass


class LengthMismatch(ErgogapError):
    pass


class OutOfRange(ErgogapError):
    pass


class InvalidState(ErgogapError):
    pass


class InternalInconsistency(ErgogapError):
    pass


class TooLarge(ErgogapError):
    pass


class UnsupportedDimension(ErgogapError):
    pass
