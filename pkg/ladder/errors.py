"""
Error Types

Exceptions raised by the ladder package. Each carries the exit code the
command-line front end reports for it.
"""


class LadderError(Exception):
    """Base class for failures the CLI maps to a non-zero exit code."""

    exit_code = 1


class IdentityFailure(LadderError):
    """One or more operator identities deviated from zero."""

    exit_code = 1

    def __init__(self, failed):
        self.failed = list(failed)
        names = ", ".join(check.name for check in self.failed)
        super().__init__(f"{len(self.failed)} identity check(s) failed: {names}")


class DegenerateModelError(LadderError, ArithmeticError):
    """A ladder denominator D₊ or D₋ vanished where it has to be divided by."""

    exit_code = 2

    def __init__(self, quantity: str, value: float, eta: float):
        self.quantity = quantity
        self.value = value
        self.eta = eta
        super().__init__(
            f"degenerate denominator {quantity} = {value:.3e} e^2/a at eta = {eta:.6g}"
        )


class QuadratureError(LadderError):
    """Radial quadrature did not reach the requested relative tolerance."""

    exit_code = 3

    def __init__(self, integral: str, achieved: float, requested: float):
        self.integral = integral
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            f"quadrature for {integral} did not converge: "
            f"relative error estimate {achieved:.3e} > {requested:.1e}"
        )


class UsageError(LadderError, ValueError):
    """Bad command-line input or malformed coefficient file."""

    exit_code = 64
