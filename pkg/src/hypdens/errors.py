"""Exception types raised by hypdens."""


class HypdensError(ValueError):
    """Base class for every precondition failure raised by the library."""


class EmptyEdge(HypdensError):
    pass


class TooLarge(HypdensError):
    pass


class NegativeX(HypdensError):
    pass


class OverlappingConstraints(HypdensError):
    pass


class TooShort(HypdensError):
    pass


class ROutOfRange(HypdensError):
    pass


class EmbeddingViolation(HypdensError):
    pass


class NTooSmall(HypdensError):
    pass


class OutOfRange(HypdensError):
    pass


class BadOrder(HypdensError):
    pass


class DisconnectedFamilyMember(HypdensError):
    pass


class ParseError(HypdensError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
