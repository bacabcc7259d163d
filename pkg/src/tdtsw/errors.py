"""Exception hierarchy shared by every tdtsw module."""


class TdtswError(Exception):
    """Base class for all library errors."""


class DomainError(TdtswError, ValueError):
    """An input lies outside the domain an operation accepts."""


class DegenerateOutputError(DomainError):
    """The aggregated output has zero area, so no crisp value exists."""


class ConfigurationError(TdtswError, ValueError):
    """A model, distribution or grid was configured inconsistently."""


class CapacityError(TdtswError):
    """Exhaustive enumeration was requested over too many atoms."""


class MissingEntryError(TdtswError, KeyError):
    """A variable, label or atom needed for evaluation is absent."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""
