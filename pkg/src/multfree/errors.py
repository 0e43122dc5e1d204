"""Exception types shared across the package."""


class UnsupportedError(ValueError):
    """Group, factor or representation outside what can be constructed."""


class ConstructionError(RuntimeError):
    """An internal consistency check on a built object failed."""


class NotACharacterError(ValueError):
    """A Laurent polynomial failed to peel into irreducible characters."""


class RegistryError(ValueError):
    """Malformed registry file or entry."""


class CrossValidationError(RuntimeError):
    """Two independent engines disagree about the same mathematical fact."""
