class MsrError(Exception):
    """Base exception for MSR code construction, verification and simulation"""


class FieldError(MsrError):
    pass


class InvalidFieldSpecError(FieldError):
    pass


class FieldMismatchError(FieldError):
    pass


class FieldDivisionByZeroError(FieldError, ZeroDivisionError):
    pass


class NotPrimitiveDomainError(FieldError):
    pass


class NotNormalElementError(FieldError):
    pass


class FactorizationInfeasibleError(FieldError):
    pass


class MatrixError(MsrError):
    pass


class DimensionError(MatrixError):
    pass


class PreconditionError(MatrixError):
    pass


class CodeError(MsrError):
    pass


class InvalidCodeError(CodeError):
    pass


class ConstructionError(CodeError):
    pass


class LinearDependenceError(CodeError):
    pass


class BudgetExceededError(CodeError):
    pass


class ChannelError(MsrError):
    pass


class ChannelConfigError(ChannelError):
    pass


class ConfigError(MsrError):
    pass


class ArtifactError(MsrError):
    pass
