"""Exception types shared across the package."""


class CoreInvError(Exception):
    pass


class MixedFieldError(CoreInvError, TypeError):
    """Two operands come from different scalar fields."""


class DimensionMismatchError(CoreInvError, ValueError):
    pass


class NotSquareError(DimensionMismatchError):
    pass


class ObjectMismatchError(DimensionMismatchError):
    """Codomain of the first morphism is not the domain of the second."""


class ShapeMismatchError(DimensionMismatchError):
    pass


class SingularMatrixError(CoreInvError, ArithmeticError):
    """Raised by :func:`coreinv.linalg.inverse`.

    ``witness`` is a nonzero row vector ``x`` with ``x @ matrix == 0``.
    """

    def __init__(self, matrix, witness):
        super().__init__(f"singular {matrix.rows}x{matrix.cols} matrix")
        self.matrix = matrix
        self.witness = witness


class NotInnerInverseError(CoreInvError, ValueError):
    pass


class NotAnnihilatorError(CoreInvError, ValueError):
    pass


class BadExponentError(CoreInvError, ValueError):
    pass


class NotCoreInvertibleError(CoreInvError, ValueError):
    pass


class InconsistencyError(CoreInvError, RuntimeError):
    """An identity that must hold exactly did not. Always a bug."""


class InfeasibleSpecError(CoreInvError, ValueError):
    pass


class ParseError(CoreInvError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
        self.line = line
        self.column = column
