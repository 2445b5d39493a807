"""Exception types shared across the library."""


class LatinTabError(Exception):
    """Base class for all library-specific errors."""


class WeightMismatchError(LatinTabError):
    """Two partitions that must have equal weight do not."""


class NotComparableError(LatinTabError):
    """A dominance-order relation required by an operation does not hold."""


class DiagramTooLargeError(LatinTabError):
    """A brute-force oracle was asked to handle a diagram above its cap."""


class TableauInvalidError(LatinTabError):
    """A tableau violates the no-repeat-in-row/column or coverage rules.

    The message names the first offending box.
    """


class SearchBudgetExceeded(LatinTabError):
    """An exact search ran out of its node budget; the outcome is inconclusive."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


class UnreachablePrefixError(LatinTabError):
    """A normalized-CDS prefix outside the 13 realizable ones was dispatched."""


class PatternGapError(LatinTabError):
    """A direct construction could not place all required boxes.

    Raised instead of ever emitting an invalid coloring; carries a full
    diagnostic of the partition, case and class sizes reached.
    """


class AlternatingPathError(LatinTabError):
    """No flippable alternating path was found during recoloring.

    This indicates a defect: the path is guaranteed to exist whenever the
    donor class is strictly larger than the receiver class.
    """
