"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly on, or numerically too close to, a pole."""


class TruncationError(DomainError):
    """A truncation cap is too small for the stated tail bound."""
