"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside an operation's documented domain."""


class EvaluationError(RuntimeError):
    """An objective evaluation produced a non-finite value."""


class ConfigError(ValueError):
    """A scenario configuration file is malformed or violates an invariant."""
