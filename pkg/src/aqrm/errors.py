"""Exception hierarchy shared by the solvers and the command line."""

from __future__ import annotations


class AQRMError(Exception):
    """Base class for all errors raised by :mod:`aqrm`."""

    exit_code = 1
    kind = "error"

    def to_record(self) -> dict:
        """Machine-readable error record used by the CLI."""
        return {"error": self.kind, "message": str(self), "exit_code": self.exit_code}


class InvalidInputError(AQRMError, ValueError):
    """Bad parameter values, flags or array shapes."""

    exit_code = 2
    kind = "invalid_input"


class SolverError(AQRMError, RuntimeError):
    """A numerical kernel failed to deliver a trustworthy result."""

    exit_code = 3
    kind = "solver_failure"


class EigensolverError(SolverError):
    kind = "eigensolver_failure"


class PreconditionError(AQRMError, ValueError):
    """Inputs are valid but outside the regime where an analysis is defined."""

    exit_code = 4
    kind = "precondition_violation"


class BOValidityWarning(UserWarning):
    """Raised as a warning when the Born-Oppenheimer reduction is outside its regime."""
