"""Exception types shared across the package."""


class ChipletSchedError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(ChipletSchedError, ValueError):
    """A tensor or convolution shape violates its invariants."""


class GraphError(ChipletSchedError, ValueError):
    """A model graph violates its structural invariants.

    Carries the full list of violations in ``problems``.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ScheduleError(ChipletSchedError, ValueError):
    """A schedule tree violates a validation rule (the message names it)."""


class ConfigError(ChipletSchedError, ValueError):
    """A configuration file or CLI argument is invalid."""


class SearchSpaceError(ChipletSchedError, RuntimeError):
    """The schedule search space is empty or exceeds a safety guard."""
