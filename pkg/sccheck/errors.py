class SccheckError(Exception):
    """Base class for every error raised by sccheck."""


class GraphDomainError(SccheckError, ValueError):
    """A value lies outside the domain of an operation (bad vertex, bad probability, ...)."""


class GraphFormatError(SccheckError):
    """An input file or spec string could not be parsed."""


class StackError(SccheckError, LookupError):
    """A vertex expected on the working stack is missing."""
