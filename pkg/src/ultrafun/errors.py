"""Exception and warning classes shared across the package."""


class UltrafunError(Exception):
    """Base class for errors raised by ultrafun."""


class DivisionByZeroAtLevel(UltrafunError, ZeroDivisionError):
    def __init__(self, level):
        super().__init__(f"divisor vanishes at level n={level}")
        self.level = level


class NotOnGrid(UltrafunError, ValueError):
    def __init__(self, q, n, tol):
        super().__init__(f"{q!r} is not a lattice point of Sigma_{n} (tol={tol:g})")
        self.q = q
        self.n = n
        self.tol = tol


class FrequencyNotOnGrid(NotOnGrid):
    pass


class LevelMismatch(UltrafunError, ValueError):
    pass


class GridVariantError(UltrafunError, ValueError):
    pass


class ExprSyntaxError(UltrafunError, ValueError):
    """Raised by the expression parser; ``offset`` is a byte offset into the source."""

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))


class UnknownFunction(UltrafunError, ValueError):
    def __init__(self, name, offset):
        super().__init__(f"unknown function {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class DivisionByZero(UltrafunError, ZeroDivisionError):
    def __init__(self, x):
        super().__init__(f"division by zero at x={x!r}")
        self.x = x


class NotDifferentiable(UltrafunError, ValueError):
    pass


class EvaluationFailure(UltrafunError, RuntimeError):
    pass


class PrecisionWarning(UserWarning):
    """Quadrature refinement stopped before reaching the requested tolerance."""


class GrowthWarning(UserWarning):
    """A declared growth order or rapid decay does not match sampled values."""
