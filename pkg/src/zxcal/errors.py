"""Exception types raised across the package."""


class ZXError(Exception):
    pass


class IllegalArity(ZXError):
    pass


class ArityMismatch(ZXError):
    pass


class InexactParameter(ZXError):
    pass


class CapacityExceeded(ZXError):
    pass


class ShapeMismatch(ZXError):
    pass


class ZeroReference(ZXError):
    pass


class SideConditionViolated(ZXError):
    pass


class MissingParameter(ZXError):
    pass


class StaleEmbedding(ZXError):
    pass


class Degenerate(ZXError):
    pass


class NotZH(ZXError):
    """A diagram uses a kind outside the ZH fragment."""
