"""Exception hierarchy shared by the engine and the command line."""


class EngineError(Exception):
    """Base class for every error raised deliberately by the engine."""


class InputError(EngineError, ValueError):
    """Malformed or inconsistent user input (documents, parameters)."""


class NotAdmissible(InputError):
    pass


class NotFiniteDimensional(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class NotAComplex(InputError):
    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"differentials do not square to zero at degree {degree}")


class NotCommutative(EngineError):
    pass


class UndeterminedIsomorphism(EngineError):
    """The invertible-element search could neither find nor rule out an iso."""


class ExtensionObstructed(EngineError):
    pass


class NotDingProjective(EngineError):
    pass


class ThresholdViolated(EngineError):
    pass


class FailedHypothesis(EngineError):
    pass


class CertificateError(EngineError):
    """A certificate failed to replay."""
