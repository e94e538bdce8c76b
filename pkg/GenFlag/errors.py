"""Exception hierarchy shared by every GenFlag module.

Every domain error derives from ``GenFlagError``. Errors deriving from
``SemanticRefusal`` mean the input was well formed but the requested object does
not exist (two flags are not commensurable, a flag lies outside a cell); the CLI
reports them with exit code 2, everything else with exit code 1.
"""


class GenFlagError(ValueError):
    """Base class for all GenFlag errors."""


class SemanticRefusal(GenFlagError):
    """The question is well posed but its answer is a refusal."""


# exactlin

class NonSquareError(GenFlagError):
    pass


class NotIndependentError(GenFlagError):
    pass


# flagcore

class SingularBasisError(GenFlagError):
    pass


class LabelCollisionError(GenFlagError):
    pass


class NotAChainError(GenFlagError):
    pass


class UnrepresentableChainError(GenFlagError):
    pass


class ZeroVectorError(GenFlagError):
    pass


class NontrivialBasisError(GenFlagError):
    pass


class LevelTooSmallError(GenFlagError):
    def __init__(self, level, minimum):
        super().__init__(f"level {level} is below the spec level {minimum}")
        self.level = level
        self.minimum = minimum


# tower and cells

class TypeMismatchError(GenFlagError):
    pass


class IncompatibleBasisError(GenFlagError):
    pass


class IncommensurableError(SemanticRefusal):
    def __init__(self, reason, detail=""):
        message = reason if not detail else f"{reason}: {detail}"
        super().__init__(message)
        self.reason = reason
        self.detail = detail


class NotInCellError(SemanticRefusal):
    pass


class DeterminantObstructionError(SemanticRefusal):
    pass


# isotropic

class NonIsotropicBasisError(GenFlagError):
    pass


class DegeneratePrefixError(GenFlagError):
    pass


class FieldObstructionError(GenFlagError):
    pass


# picard

class PositionInvisibleError(GenFlagError):
    pass


class InvalidWeightsError(GenFlagError):
    pass


# dsl

class SpecSyntaxError(GenFlagError):
    def __init__(self, message, line, column, expected=()):
        where = f"line {line}, column {column}"
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{where}: {message}{hint}")
        self.line = line
        self.column = column
        self.expected = tuple(expected)


class SpecSemanticError(GenFlagError):
    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


# cli

class UsageError(GenFlagError):
    pass
