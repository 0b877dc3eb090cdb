"""Exception hierarchy shared by every module of the package."""


class LatticeError(Exception):
    """Base class for all errors raised by bddlat."""


class ShapeError(LatticeError, ValueError):
    """Operands have incompatible dimensions."""


class RankError(LatticeError, ValueError):
    """A set of vectors expected to be linearly independent is not.

    ``index`` is the 0-based position of the first vector found to lie in
    the span of its predecessors, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MembershipError(LatticeError, ValueError):
    """A vector claimed to be in a lattice is not an integer combination of its basis."""


class OracleCapError(LatticeError):
    """An exponential-time oracle refused an input above its dimension cap."""


class SpecError(LatticeError, ValueError):
    """A q-ary lattice specification failed validation."""


class RadiusPolicyError(LatticeError, ValueError):
    """A planted-error radius would break uniqueness of the BDD solution."""


class ConfigError(LatticeError, ValueError):
    """An experiment configuration is invalid."""


class ParseError(LatticeError, ValueError):
    """Malformed serialized input. ``location`` is a JSON path or line:col."""

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
