"""Error types shared across the simulation layers.

Kept in one small module so that the plant, controller and config layers
can all raise the same configuration error without importing each other.
"""


class ConfigError(Exception):
    """Raised when configuration is invalid or missing required keys.

    Also covers invariant violations of plant, controller and scenario
    parameters, since those always originate from a configuration value.
    """

    pass


class SimulationError(ValueError):
    """Raised when a non-finite signal reaches the plant or a controller."""

    pass
