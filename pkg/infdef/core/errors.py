from typing import Any, Dict, Optional


class InfdefError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1
    status_code = 409

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = detail

    def as_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.detail}


# Input errors: the session or the command line is wrong.

class InputError(InfdefError):
    exit_code = 2
    status_code = 422


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, **detail: Any):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where, line=line, column=column, **detail)
        self.line = line
        self.column = column


class SessionError(InputError):
    pass


class NonParallelRelation(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class DegreeMismatch(InputError):
    pass


# Mathematical failures: the input is well formed but a check did not pass.

class MathematicalFailure(InfdefError):
    pass


class FinitenessNotCertified(MathematicalFailure):
    pass


class AmbiguousPattern(MathematicalFailure):
    pass


class NotACocycle(MathematicalFailure):
    pass


class FrameNotPreserved(MathematicalFailure):
    pass


class NotAModule(MathematicalFailure):
    pass


class NotAMorphism(MathematicalFailure):
    pass


class LiftFailed(MathematicalFailure):
    pass


class NoSolution(MathematicalFailure):
    pass


class ConditionFailed(MathematicalFailure):
    pass


class VerificationFailed(MathematicalFailure):
    pass


class Mismatch(MathematicalFailure):
    pass


class EquationFailed(MathematicalFailure):
    pass


class NotALinearRepresentative(MathematicalFailure):
    pass


class StarNotCertified(MathematicalFailure):
    pass
