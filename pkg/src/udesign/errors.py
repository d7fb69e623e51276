"""Exception types shared across the package."""


class UDesignError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(UDesignError):
    """Operands have incompatible matrix or tensor dimensions."""


class BranchCut(UDesignError):
    """Principal matrix logarithm undefined: an eigenvalue is too close to -1."""


class OutOfRange(UDesignError):
    """A coordinate lies outside its admissible interval."""


class SingularCoefficient(UDesignError):
    """A denominator in the hypergeometric coefficient recursion is exactly zero."""


class NoSignChange(UDesignError):
    """Bisection endpoints do not bracket a sign change."""


class NoZeroFound(UDesignError):
    """No candidate survived residual certification."""


class NotAGroup(UDesignError):
    """A multiset fails the closure-under-product-and-inverse check."""


class Overflow(UDesignError):
    """A closure or enumeration exceeded its size guard."""


class TooLarge(UDesignError):
    """An exact pairwise computation would exceed the work guard."""


class ChildTooLarge(UDesignError):
    """A recipe factor is too large to enumerate for probe verification."""


class CoverageGap(UDesignError):
    """A grouping plan misses a spherical weight it must cover."""


class UncertifiedOmega(UDesignError):
    """A grouping plan entry lacks a valid zero certificate."""


class Stalled(UDesignError):
    """Random optimization hit its iteration cap before reaching the target."""

    def __init__(self, message, best_params=None, best_value=None):
        super().__init__(message)
        self.best_params = best_params
        self.best_value = best_value
