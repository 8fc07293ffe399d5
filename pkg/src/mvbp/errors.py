"""Exceptions raised by the solvers."""


class MvbpError(Exception):
    """Base class for every error raised by this package."""


class InfeasibleItem(MvbpError):
    """An item has no incarnation that fits alone in any bin type."""

    def __init__(self, item):
        self.item = item
        super().__init__(f"item {item} does not fit alone in any bin type")


class ItemTooLarge(MvbpError):
    def __init__(self, index, size):
        self.index = index
        self.size = size
        super().__init__(f"size {size!r} at position {index} exceeds the unit capacity")


class NumericalInstability(MvbpError):
    """The simplex engine met a pivot below the minimum magnitude."""


class IterationLimit(MvbpError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"column generation exceeded {limit} column additions")


class EmptySupport(MvbpError):
    """The greedy phase must pick but the LP support is empty."""


class BudgetExceeded(MvbpError):
    """An exact oracle refused an instance larger than its budget."""
