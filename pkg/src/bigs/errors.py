"""Exception types shared across the package."""


class BigsError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BigsError):
    """A malformed input file (edge list, BIG file, design file)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InfeasibleError(BigsError):
    """A BIG representation that cannot satisfy the feasibility conditions."""


class DesignError(BigsError):
    """An invalid sampling design or an undefined design quantity."""


class EnumerationCapError(BigsError):
    """Exact enumeration refused because the support exceeds the cap."""


class WeightError(BigsError):
    """An invalid multiplicity-weight specification."""
