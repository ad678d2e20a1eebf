"""Exception types shared by the library and the CLI exit-code mapping."""


class DomainError(ValueError):
    """A requested state or quantity does not exist for the given parameters.

    Examples are an unreachable polarization at fixed temperature, a chain
    too short to have a two-fold subregion, or a coherence threshold above
    what the chain can deliver.
    """


class NumericError(RuntimeError):
    """An internal numerical procedure failed (no bracket, no convergence)."""
