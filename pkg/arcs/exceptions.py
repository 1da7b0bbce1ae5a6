class ArcforgeError(Exception):
    """Base class for every error raised by the arcs app."""


class FieldMismatchError(ArcforgeError, TypeError):
    pass


class FieldDomainError(ArcforgeError, ZeroDivisionError):
    pass


class NotPrimeError(ArcforgeError, ValueError):
    pass


class InvalidModulusError(ArcforgeError, ValueError):
    pass


class DimensionError(ArcforgeError, ValueError):
    pass


class NotAnArcError(ArcforgeError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateProjectionError(ArcforgeError, ValueError):
    pass


class ContextError(ArcforgeError, ValueError):
    pass


class AlphaSolveError(ArcforgeError):
    def __init__(self, message, nullspace_dim=None):
        super().__init__(message)
        self.nullspace_dim = nullspace_dim


class EvenCharacteristicError(ArcforgeError, ValueError):
    pass
