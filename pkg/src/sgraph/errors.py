"""Exception types shared across the package."""


class SGraphError(Exception):
    """Base class for all errors raised by sgraph."""


class PermutationError(SGraphError, ValueError):
    """Malformed permutation text or an invalid image table."""


class DegreeMismatch(SGraphError, ValueError):
    def __init__(self, a, b):
        super().__init__(f"degree mismatch: {a} != {b}")
        self.degrees = (a, b)


class CapExceeded(SGraphError):
    """The group is too large for element enumeration under the current cap."""

    def __init__(self, order, cap):
        super().__init__(f"group order {order} exceeds the exhaustive cap {cap}")
        self.order = order
        self.cap = cap


class QuotientCapExceeded(SGraphError):
    def __init__(self, index, cap):
        super().__init__(f"quotient order {index} exceeds the quotient cap {cap}")
        self.index = index
        self.cap = cap


class NotNormal(SGraphError, ValueError):
    """A subgroup required to be normal is not."""


class NotSubgroup(SGraphError, ValueError):
    """A containment precondition between subgroups fails."""


class FieldError(SGraphError, ValueError):
    pass


class GroupExprError(SGraphError, ValueError):
    """Syntax or semantic error in a group expression."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ResourceError(SGraphError):
    """Shipped generator data failed its self-check."""


class SpecError(SGraphError, ValueError):
    """Invalid covering or local-definition description."""
