"""
Exception hierarchy for ascentlab

Every error carries the process exit code the CLI reports for it.
"""

from typing import Any, Optional


class AscentLabError(Exception):
    """Base class for all ascentlab errors"""

    exit_code: int = 1


class UsageError(AscentLabError):
    """Errors caused by bad input: exit status 2"""

    exit_code = 2


class BudgetError(AscentLabError):
    """Errors caused by a resource limit: exit status 3"""

    exit_code = 3


class LengthMismatch(UsageError):
    """Assignment length differs from the instance variable count"""


class InvalidVariable(UsageError):
    """Variable index outside the instance"""


class InvalidInstance(UsageError):
    """Malformed instance (bad scope, duplicate scope, bad JSON shape)"""


class ParamOutOfRange(UsageError):
    """Generator parameter outside its admissible range"""


class UnknownGadget(UsageError):
    """Requested gadget is not present in the instance labels"""


class UnknownVertex(UsageError):
    """Certificate or decomposition names a vertex outside the graph"""


class InvalidParams(UsageError):
    """Unknown or out-of-range run configuration key"""


class InvalidStart(UsageError):
    """Start assignment cannot be resolved for the instance"""


class ArithmeticOverflow(AscentLabError):
    """Value left the signed 64-bit range"""


class InterfaceMismatch(AscentLabError):
    """Chain pieces cannot be joined into one decomposition"""


class IoFailure(AscentLabError):
    """Reading or writing an experiment file failed"""


class TooLarge(BudgetError):
    """Exhaustive computation refused: too many variables or vertices"""


class BudgetExceeded(BudgetError):
    """Exploration visited more nodes than allowed"""


class StepBudgetExceeded(BudgetError):
    """Ascent hit max_steps while improving moves remained"""

    def __init__(self, message: str, trace: Optional[Any] = None):
        """
        Initialize the error

        Args:
            message: Error description
            trace: The truncated AscentTrace recorded so far
        """
        super().__init__(message)
        self.trace = trace
