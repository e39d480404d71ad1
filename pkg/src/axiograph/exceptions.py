"""Exception hierarchy shared by all axiograph modules."""


class AxiographError(Exception):
    """Base class for every error raised by this package."""


class InputError(AxiographError, ValueError):
    """Invalid argument: unknown node, bad parameter, malformed partition."""


class ParseError(InputError):
    """Malformed graph or clustering text.

    ``lineno`` is 1-based; ``source`` names the file when known.
    """

    def __init__(self, message, lineno=None, source=None):
        self.message = message
        self.lineno = lineno
        self.source = source
        super().__init__(self._format())

    def _format(self):
        where = self.source or "<input>"
        if self.lineno is not None:
            where = f"{where}:{self.lineno}"
        return f"{where}: {self.message}"


class InfeasibleError(AxiographError):
    """Exact search requested beyond the configured enumeration cap."""


class UnsupportedError(AxiographError):
    """Operation not defined for the given quality function."""


class InvariantError(AxiographError):
    """An internal consistency check failed."""
