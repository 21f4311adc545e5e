"""Exception hierarchy shared by the solvers and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class DomsetError(Exception):
    exit_code = 2


class InputError(DomsetError, ValueError):
    """Malformed input: bad vertex id, bad parameter, bad file line."""

    exit_code = 2


class InfeasibleError(DomsetError):
    """No set satisfies the requested constraints."""

    exit_code = 1


class ResourceError(DomsetError):
    """Instance exceeds a configured size cap or node budget."""

    exit_code = 3
