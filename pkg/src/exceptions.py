"""Exception hierarchy for the photon gate simulator"""


class PhotonGateError(Exception):
    """Base class for all simulator errors"""


class InvalidParameterError(PhotonGateError, ValueError):
    """A physical or numerical parameter is outside its allowed range"""


class GridMismatchError(PhotonGateError):
    """Two amplitudes live on incompatible wavenumber grids"""


class ResolutionInsufficientError(PhotonGateError):
    """A grid or time window is too coarse or too small for the requested accuracy"""


class InvalidStateError(PhotonGateError):
    """A density matrix or channel violates its invariants"""
