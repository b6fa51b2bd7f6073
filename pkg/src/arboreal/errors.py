"""Exception types shared across the package."""


class ArborealError(Exception):
    """Base class for all package errors."""


class ResourceGuardError(ArborealError):
    """An enumeration would exceed the configured work budget."""


class ChannelViolationError(ArborealError):
    """Received word is inconsistent with every codeword (corrupt channel)."""


class UndecodableError(ArborealError):
    """Received word carries too little information to decode."""


class CertificationError(ArborealError):
    """A declared code parameter failed recomputation (bug, never silent)."""
