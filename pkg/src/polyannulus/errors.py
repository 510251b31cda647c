"""Exception hierarchy shared by every module."""


class PolyAnnulusError(Exception):
    """Base class for all errors raised by this package."""


class AllZero(PolyAnnulusError, ValueError):
    """Every coefficient of the polynomial is zero."""


class ZeroConstantTerm(PolyAnnulusError, ValueError):
    """The constant coefficient is zero, so the reversal does not exist."""


class NotMonic(PolyAnnulusError, ValueError):
    """The leading coefficient is not exactly one."""


class NonSquare(PolyAnnulusError, ValueError):
    pass


class TooLarge(PolyAnnulusError, ValueError):
    pass


class DidNotConverge(PolyAnnulusError, RuntimeError):
    """Root iteration hit its iteration cap.

    The partially converged :class:`~polyannulus.poly.RootSet` is kept on
    ``self.partial`` so callers can still inspect it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
