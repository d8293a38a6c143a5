"""Exception and warning types shared across the package.

Two families exist so the CLI can map them to different exit codes:
``ConfigError`` for malformed input and ``PhysicsError`` for requests the
physics cannot satisfy.
"""


class PhonogradError(Exception):
    """Base class for every error raised by this package."""

    stage = None


class ConfigError(PhonogradError):
    """Scenario or sweep input could not be parsed or validated."""


class PhysicsError(PhonogradError):
    """A physically invalid or unsupported request."""


class InvalidQuantity(PhysicsError, ValueError):
    pass


class UnknownSpecies(ConfigError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidAxis(ConfigError):
    pass


class SingularGeometry(PhysicsError):
    pass


class InvalidSource(PhysicsError):
    pass


class TrapUnstable(PhysicsError):
    """The gravity gradient overwhelms the axial confinement."""


class InvalidMode(PhysicsError):
    pass


class IncompleteScheme(PhysicsError):
    pass


class OutsideAsymptoticRegime(PhysicsError):
    pass


class ZeroGradient(PhysicsError):
    """A relative error was requested for a vanishing gradient."""


class GradientBlindMode(PhysicsError):
    pass


class SetupTooSmall(PhysicsError):
    pass


class SplitTooLarge(PhysicsError):
    pass


class MixedGradient(PhysicsError):
    pass


class PhysicsWarning(UserWarning):
    """Non-fatal diagnostic collected into reports."""
