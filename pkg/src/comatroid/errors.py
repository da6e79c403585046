"""Error types shared across the package.

The CLI maps these onto exit codes: usage and data errors exit 2,
resource-limit errors exit 3.
"""


class UnsupportedFieldError(ValueError):
    """Field order outside {2, 3}."""


class ResourceLimitError(RuntimeError):
    """A size or rank cap was exceeded (ranks above 8, oversized brute force)."""


class SimplicityError(ValueError):
    """A presentation has a zero column or two projectively equal columns."""


class CatalogError(ValueError):
    """A catalog lookup used an unknown matroid name."""


class FormatError(ValueError):
    """Malformed matroid text input; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
