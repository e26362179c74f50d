class DuplexChainError(Exception):
    """Base class for errors raised by duplexchain."""


class DomainError(DuplexChainError, ValueError):
    """An argument lies outside the domain where the model is defined."""


class ResourceError(DuplexChainError):
    """A request would need more memory than the dense oracle allows."""


class ConsistencyError(DuplexChainError, RuntimeError):
    """Two quantities that must agree by construction do not."""
