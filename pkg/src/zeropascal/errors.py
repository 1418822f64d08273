"""Exception types shared across the package."""


class ZeroPascalError(ValueError):
    """Base class for every domain error raised by this package."""


class ZeroConstantTerm(ZeroPascalError):
    pass


class NonzeroConstantInner(ZeroPascalError):
    pass


class ConstantTermNotOne(ZeroPascalError):
    pass


class NonzeroConstantTerm(ZeroPascalError):
    pass


class DimMismatch(ZeroPascalError):
    pass


class SingularDiagonal(ZeroPascalError):
    pass


class NonUnitDiagonal(ZeroPascalError):
    pass


class IndexOutOfRange(ZeroPascalError, IndexError):
    pass


class InvalidSpec(ZeroPascalError):
    pass


class InvalidSequence(ZeroPascalError):
    pass


class ParameterMismatch(ZeroPascalError):
    pass


class ConstraintViolation(ZeroPascalError):
    pass


class SpecMismatch(ZeroPascalError):
    pass


class SupportViolation(ZeroPascalError):
    pass


class ClosureViolation(ZeroPascalError, AssertionError):
    """A product that must stay inside a subgroup left it (an internal bug)."""


class NotInvolution(ZeroPascalError):
    pass


class ZeroConstant(ZeroPascalError):
    pass
