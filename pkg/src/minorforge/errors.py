"""Exception hierarchy, mirrored by the CLI exit codes (1/2/3)."""


class MinorForgeError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class InputError(MinorForgeError):
    """Malformed or out-of-contract input (bad ids, bad files, bad parameters)."""

    exit_code = 1


class ParameterError(InputError):
    """Builder parameters that cannot fit the graph (e.g. b*q > n)."""


class CapabilityError(MinorForgeError):
    """Request exceeds a documented hard cap (exact search too large, etc.)."""

    exit_code = 2


class InvariantViolation(MinorForgeError):
    """An internal consistency check failed; indicates a bug, not bad input."""

    exit_code = 3


class NoPathError(MinorForgeError):
    """No path between the given sets; carries the size of the reachable set."""

    exit_code = 1

    def __init__(self, message, reachable_size):
        super().__init__(message)
        self.reachable_size = reachable_size


class GrowthFailure(MinorForgeError):
    """Branch-set growth could not reach the required neighborhood size."""

    exit_code = 1

    def __init__(self, message, best_neighborhood):
        super().__init__(message)
        self.best_neighborhood = best_neighborhood


class HittingFailure(MinorForgeError):
    """A hitting-connector target was unreachable; names the target index."""

    exit_code = 1

    def __init__(self, message, target_index):
        super().__init__(message)
        self.target_index = target_index
