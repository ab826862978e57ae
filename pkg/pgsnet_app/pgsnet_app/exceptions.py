class PGSNetError(Exception):
    """Base class for every error raised by the project. `exit_code` is used by manage.py."""
    exit_code = 1


class ValidationError(PGSNetError):
    """A precondition, configuration value or command-line argument is invalid."""
    exit_code = 1


class DataError(PGSNetError):
    """
    A corpus, image, mask or report file is missing, unreadable or inconsistent.

    Attributes:
        paths (list): The offending file paths, when known.
    """
    exit_code = 2

    def __init__(self, message, paths=None):
        super().__init__(message)
        self.paths = list(paths or [])


class CheckpointError(DataError):
    """A checkpoint cannot be read or was written with an incompatible schema."""


class NumericalError(PGSNetError):
    """
    Training produced a non-finite loss or gradient.

    Attributes:
        snapshot (dict): Step inputs and state captured at the failing step.
    """
    exit_code = 3

    def __init__(self, message, snapshot=None):
        super().__init__(message)
        self.snapshot = snapshot or {}
