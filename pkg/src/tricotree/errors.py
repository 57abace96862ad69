"""Exception types shared across the package."""


class TricotreeError(Exception):
    """Base class for all package-specific errors."""


class NotAnExcursion(TricotreeError, ValueError):
    """An outdegree sequence does not encode a plane tree."""


class BadSum(TricotreeError, ValueError):
    """A step sequence does not sum to -1 or contains a step below -1."""


class Infeasible(TricotreeError, ValueError):
    """No tree of the requested size exists for the weight family."""


class OutOfRadius(TricotreeError, ValueError):
    """A series evaluation was requested outside its radius of convergence."""


class BracketFailure(TricotreeError, ArithmeticError):
    """Bisection could not bracket a root (non-probability generating function)."""


class NumericalFailure(TricotreeError, ArithmeticError):
    """A numeric solve did not converge."""


class NumericalUnderflow(TricotreeError, ArithmeticError):
    """Dynamic-programming weights fell outside representable range."""


class RejectionBudgetExceeded(TricotreeError, RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class ParityViolation(TricotreeError, RuntimeError):
    """Odd orange count: signals an implementation bug, never valid input."""


class TooLarge(TricotreeError, ValueError):
    """Input exceeds the hard size cap of an exhaustive or exact routine."""
