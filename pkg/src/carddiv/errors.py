"""Exception types shared across the package."""


class CarddivError(Exception):
    """Base class for all errors raised by this package."""


class MalformedWitnessError(CarddivError):
    """A witness is structurally broken (not total, or image outside codomain)."""


class InvalidWitnessError(CarddivError):
    """A witness fails the property it is supposed to certify."""


class LayoutError(CarddivError):
    """A layout violates its construction contract."""


class SwapConflictError(CarddivError):
    """Two simultaneous swaps touch the same location."""


class ContractViolationError(CarddivError):
    """A round was asked to act on a state its precondition forbids."""


class RenderError(CarddivError):
    """A trace cannot be rendered in the fixed-width card format."""


class ScheduleError(CarddivError):
    """A pass schedule does not reduce the suit count to one."""


class ChainError(CarddivError):
    """A chain or chain family is malformed or not disjoint."""


class IllegalMoveError(CarddivError):
    """A solitaire move is not permitted in the current state."""
