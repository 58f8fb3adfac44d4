"""Exception hierarchy shared by every module."""


class CubicTrailsError(Exception):
    """Base class for all library errors."""


class GraphFormatError(CubicTrailsError, ValueError):
    """Malformed graph document or a graph violating the cubic invariants."""


class DocumentError(CubicTrailsError, ValueError):
    """Malformed partition, marking, trace or path document."""


class PartitionError(CubicTrailsError, ValueError):
    """A trail partition does not satisfy a required property."""


class InvalidMarking(PartitionError):
    """The unmarked edges of a marking contain a cycle.

    ``cycle`` lists the edge ids of one such cycle.
    """

    def __init__(self, message, cycle):
        super().__init__(message)
        self.cycle = list(cycle)


class SwitchError(CubicTrailsError, ValueError):
    """A requested switch does not exist for the given partition."""


class GuardExceeded(CubicTrailsError):
    """An exhaustive enumeration would exceed the configured size guard."""


class ConstructionError(CubicTrailsError):
    """A construction could not be carried out on its input."""


class StrongMatchingNotFound(ConstructionError):
    """Exhaustive search found no strong matching meeting every cycle once."""


class Falsification(CubicTrailsError):
    """A published claim was contradicted by a concrete computation.

    These are never expected; the CLI maps them to a dedicated exit code.
    """

    def __init__(self, claim, message, witness=None):
        super().__init__(f"{claim}: {message}")
        self.claim = claim
        self.witness = witness
