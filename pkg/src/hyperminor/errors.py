"""Exception hierarchy shared by all modules; CLI exit codes hang off these."""


class HyperminorError(Exception):
    exit_code = 1


class UsageError(HyperminorError, ValueError):
    """Malformed input or violated precondition."""

    exit_code = 2


class InvalidInputError(HyperminorError, ValueError):
    """An input object (model, embedding, certificate) failed validation."""

    exit_code = 1


class ResourceError(HyperminorError):
    """A search would exceed its configured budget."""

    exit_code = 3


class CapacityError(HyperminorError):
    """The guest does not fit the host under the construction's budget."""

    exit_code = 4
