"""Exception hierarchy shared by every module of the package."""


class LieSpectraError(Exception):
    """Base class for all library errors."""


class BackendMismatch(LieSpectraError, TypeError):
    """Exact and floating scalars were combined in one operation."""


class IrrationalSpectrum(LieSpectraError):
    """A characteristic polynomial has a factor with no Gaussian-rational root."""


class NotSolvable(LieSpectraError):
    pass


class NotNilpotent(LieSpectraError):
    pass


class AdaptationFailed(LieSpectraError):
    """No Gaussian-rational common eigenvector while refining the ideal flag."""


class BasisNotAdapted(LieSpectraError):
    pass


class NotAnIdeal(LieSpectraError):
    pass


class NotACharacter(LieSpectraError):
    """The functional does not vanish on the derived algebra."""


class ChainConditionFailed(LieSpectraError):
    """d_{p-1} d_p != 0; only possible through a convention bug or a non-representation."""


class InvalidRepresentation(LieSpectraError):
    pass


class InvalidAlgebra(LieSpectraError):
    pass


class NoCommonEigenvector(LieSpectraError):
    pass


class NotCommuting(LieSpectraError):
    pass


class EmptySpectrum(LieSpectraError):
    """Raised when a spectrum comes out empty; always a candidate-generation defect."""


class ParseError(LieSpectraError, ValueError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class CandidateGridIncomplete(LieSpectraError):
    """A numerically computed weight lies outside the exact candidate grid."""
