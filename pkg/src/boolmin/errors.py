"""Exception types shared across the package."""


class BoolminError(Exception):
    """Base class for package errors."""


class FormatError(BoolminError):
    """Malformed input file or expression."""


class ResourceLimitError(BoolminError):
    """An exhaustive operation would exceed its configured cap."""


class ClassificationError(BoolminError):
    """A relation or basis does not have the structure a minimizer requires."""


class VocabularyError(ClassificationError):
    """A minimized clause shape cannot be expressed in the given language."""
