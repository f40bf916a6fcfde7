"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: mismatched indeterminates, invalid words, too few terms."""


class SingularExpansionError(ArithmeticError):
    """A series inverse was requested for a series with non-invertible constant term."""


class UnsupportedInstanceError(ValueError):
    """The cluster method cannot handle this instance (one pattern is a factor of another)."""


class DegenerateEquationError(ArithmeticError):
    """dQ/dP vanishes modulo Q; reduce Q to its square-free part first."""


class SingularExtensionError(ArithmeticError):
    """The leading recurrence coefficient vanishes where no initial term was supplied."""

    def __init__(self, n):
        super().__init__(f"leading coefficient vanishes at n = {n} and the needed term was not supplied")
        self.n = n


class AsymptoticsError(ArithmeticError):
    """The sequence does not admit a growth estimate (e.g. it is eventually zero)."""
