"""Exception hierarchy shared by all optbranch modules.

The CLI maps these onto exit codes: bad user input exits with 2,
everything else (internal invariants, numeric trouble) exits with 1.
"""


class OptBranchError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OptBranchError):
    """Invalid user-supplied data: bad vertex ids, malformed files, bad flags."""


class CapacityError(OptBranchError):
    """A region or subproblem exceeds the configured enumeration limit."""


class InfeasibleError(OptBranchError):
    """A set-cover instance whose sets cannot cover the universe."""


class DegenerateClauseError(OptBranchError):
    """A clause whose application does not reduce the complexity measure."""


class NumericError(OptBranchError):
    """A numeric routine (e.g. the simplex solver) failed to converge."""


class InternalError(OptBranchError):
    """An invariant that should be unreachable was violated; report as a bug."""
