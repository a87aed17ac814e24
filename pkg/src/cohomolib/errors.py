"""Exception types raised across the library.

Every error that reports a witness (a triple breaking associativity, a
non-commuting pair, a missing coset) stores it on the exception so callers
and tests can inspect it.
"""


class CohomolibError(Exception):
    """Base class for all library errors."""


class NotAssociative(CohomolibError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"product table is not associative at triple {triple}")


class NoIdentity(CohomolibError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"index 0 is not a two-sided identity (witness element {element})")


class NoInverse(CohomolibError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no inverse")


class NOutOfRange(CohomolibError):
    pass


class DegreeMismatch(CohomolibError):
    pass


class BoundExceeded(CohomolibError):
    def __init__(self, message, bound=None):
        self.bound = bound
        super().__init__(message)


class NotAbelian(CohomolibError):
    def __init__(self, witness_pair):
        self.witness_pair = witness_pair
        super().__init__("generators do not commute (witness pair attached)")


class NotInGroup(CohomolibError):
    pass


class NotCentral(CohomolibError):
    pass


class BudgetExhausted(CohomolibError):
    def __init__(self, message, missing=None):
        self.missing = missing or []
        super().__init__(message)


class InstanceMismatch(CohomolibError):
    pass


class NotACocycle(CohomolibError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"2-cochain fails the cocycle identity at triple {triple}")


class NotAUnit(CohomolibError):
    pass


class ValueOutsideA(CohomolibError):
    pass


class ProjectionIncomplete(CohomolibError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"projection has no preimage for {missing}")


class TooLarge(CohomolibError):
    """An enumeration or materialization cap was exceeded."""


class NonDivisible(CohomolibError):
    """An exact division in the counting identities left a remainder.

    Mathematically impossible for correct inputs; signals an implementation bug.
    """


class ParseError(CohomolibError):
    pass
