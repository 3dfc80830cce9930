"""Exception hierarchy. Every error names the invariant it tripped."""


class ModelError(ValueError):
    """Base class for all library errors."""


class DomainError(ModelError):
    """An input left the model's validity region."""

    def __init__(self, invariant: str, value: float | None = None):
        self.invariant = invariant
        self.value = value
        msg = invariant if value is None else f"{invariant} (got {value!r})"
        super().__init__(msg)


class MaturityError(DomainError):
    """Time to maturity is non-positive or below the near-expiry guard."""


class DegenerateDiffusionError(DomainError):
    """Diffusion coefficient sigma*S_t + alpha*e^{rt} is not positive."""


class ConfigError(ModelError):
    """Invalid Monte-Carlo or CLI configuration."""
