"""Shared exception types."""


class TracelabError(Exception):
    pass


class MalformedMatrixError(TracelabError):
    pass


class IncompatibleFieldError(TracelabError):
    pass


class InvalidComplexError(TracelabError):
    """d^2 != 0 somewhere; carries the failing degree."""

    def __init__(self, degree, msg=None):
        self.degree = degree
        super().__init__(msg or "d^2 != 0 at degree %s" % (degree,))


class IndeterminateTruncationError(TracelabError):
    pass


class BudgetError(TracelabError):
    """A size or depth budget was exhausted; may carry partial results."""

    def __init__(self, msg, partial=None):
        self.partial = partial
        super().__init__(msg)


class InvalidProjectionError(TracelabError):
    pass


class MissingCyclicStructureError(TracelabError):
    pass


class UnsupportedGroupError(TracelabError):
    pass


class InadmissibleFamilyError(TracelabError):
    pass


class InvalidCoverError(TracelabError):
    pass


class InvalidActionError(TracelabError):
    pass


class UnsupportedCharacteristicError(TracelabError):
    pass


class DomainError(TracelabError):
    pass


class SchemaError(TracelabError):
    pass
