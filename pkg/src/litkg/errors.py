"""Exception types shared across the package."""


class LitkgError(Exception):
    """Base class for all package-specific errors."""


class EmptyNameError(LitkgError):
    """A term name was empty after normalization."""


class BadPmidError(LitkgError):
    """A PMID was empty or contained non-digit characters."""


class UnknownEntityError(LitkgError):
    """An entity id does not exist in the graph."""


class SelfLoopError(LitkgError):
    """A triplet's head and tail are the same entity."""


class EmptyRelationError(LitkgError):
    """A relation label was empty after normalization."""


class CorruptStoreError(LitkgError):
    """A persisted store failed schema or integrity validation."""


class DimMismatchError(LitkgError):
    """Embedding vectors of incompatible dimension were combined."""


class InsufficientGraphError(LitkgError):
    """The graph cannot supply a valid training triple."""


class EmptyHoldoutError(LitkgError):
    """Evaluation was requested on an empty triple list."""
