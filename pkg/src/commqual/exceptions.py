class CommQualError(Exception):
    """Base class for every error raised by commqual."""


class ParseError(CommQualError, ValueError):
    """A graph or community file contains a malformed line."""

    def __init__(self, message, path=None, line_number=None):
        self.path = path
        self.line_number = line_number
        where = ""
        if path is not None:
            where = f"{path}:"
        if line_number is not None:
            where += f"{line_number}: "
        elif where:
            where += " "
        super().__init__(where + message)


class EmptyGraphError(CommQualError, ValueError):
    pass


class EmptyCoverError(CommQualError, ValueError):
    pass


class UndefinedInputError(CommQualError, ValueError):
    """The requested quantity is undefined for this input (e.g. zero edges)."""


class NodeSetMismatchError(CommQualError, ValueError):
    pass


class UndefinedCorrelationError(CommQualError, ValueError):
    """Spearman correlation is undefined (constant input or too few points)."""


class ConfigError(CommQualError, ValueError):
    pass


class PipelineError(CommQualError, ValueError):
    pass
