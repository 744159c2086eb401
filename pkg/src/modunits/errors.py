"""Exception types shared across the package."""


class ModunitsError(Exception):
    """Base class for all package errors."""


class ConfigError(ModunitsError, ValueError):
    """A parameter lies outside the supported configuration."""


class DomainError(ModunitsError, ArithmeticError):
    """An operation was applied outside its mathematical domain."""


class CapacityError(ModunitsError):
    """A computation would exceed a size or work budget."""


class UnsupportedError(ModunitsError):
    """The requested computation is not implemented for this input."""


class SpecSyntaxError(ModunitsError, ValueError):
    """A group spec string could not be parsed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class SpecRangeError(ModunitsError, ValueError):
    """A group spec atom has parameters outside its legal range."""


class NoRuleError(UnsupportedError):
    """No closed-form Theta rule matches the group; use a computed method."""

    def __init__(self, message: str = "no-rule"):
        super().__init__(message)
