"""Exception hierarchy shared by every module of the package."""


class KMCError(Exception):
    """Base class for all package errors."""


class MatrixSyntaxError(KMCError, ValueError):
    """Matrix literal could not be parsed."""


class AxiomViolation(KMCError, ValueError):
    """Input violates one of the generalized Cartan matrix conditions."""


class NotRank3(KMCError, ValueError):
    pass


class DecomposableInput(KMCError, ValueError):
    pass


class FiniteTypeInput(KMCError, ValueError):
    pass


class NotPrime(KMCError, ValueError):
    pass


class FieldMismatch(KMCError, ValueError):
    pass


class TruncationMismatch(KMCError, ValueError):
    pass


class NotASubspace(KMCError, ValueError):
    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"containment fails at degree {degree}")


class InfiniteGroup(KMCError, ValueError):
    pass


class ModularNotSupported(KMCError, ValueError):
    pass


class UnexpectedDimension(KMCError, RuntimeError):
    pass


class PairNotInfinite(KMCError, ValueError):
    pass


class ClassIVUnverifiedConjecture(KMCError, RuntimeError):
    pass


class PreconditionError(KMCError, ValueError):
    pass
