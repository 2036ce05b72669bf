"""Exception hierarchy shared by every module."""


class LatticeError(ValueError):
    """Base class for structural errors. ``witness`` carries the offending data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPosetError(LatticeError):
    pass


class NotALatticeError(LatticeError):
    pass


class NotASemilatticeError(LatticeError):
    pass


class NotDistributiveError(LatticeError):
    pass


class NotAMorphismError(LatticeError):
    pass


class SizeCapExceededError(LatticeError):
    pass


class SpecTooLargeError(LatticeError):
    pass


class FormatError(LatticeError):
    pass


class NotLocallyClosedError(LatticeError):
    pass


class NoMeetError(LatticeError):
    pass


class NotAdmissibleError(LatticeError):
    """Raised by ``lift_AU``; ``mode`` is one of
    ``meet-missing``, ``meet-not-admissible``, ``meet-not-preserved``."""

    def __init__(self, message, witness=None, mode=None):
        super().__init__(message, witness)
        self.mode = mode


class NoLiftError(LatticeError):
    pass


class IsoFailure(LatticeError):
    pass


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
