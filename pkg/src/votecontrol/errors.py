"""Exception types shared across the solver modules."""


class ElectionError(ValueError):
    """Malformed election, vote, or scoring vector."""


class DimensionError(ElectionError):
    """Scoring-vector length does not match the candidate count."""


class MissingVoteError(ElectionError):
    """Attempt to delete a vote that is not present."""


class InvalidCandidateError(ElectionError):
    """Candidate id outside the election's roster."""


class RuleDomainError(ValueError):
    """Generator spec malformed, or instantiated outside its admissible range."""


class WrongRuleError(ValueError):
    """A solver was handed a scoring vector outside the family it handles."""


class UnsupportedRuleError(ValueError):
    """Rule exceeds the solver's configured distinct-coefficient cap."""


class CapsExceededError(ValueError):
    """An exhaustive oracle refused an instance exceeding its configured caps."""

    def __init__(self, cap_name: str, limit: int, actual: int):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"oracle cap {cap_name} exceeded: {actual} > {limit}")


class RealizationError(ValueError):
    """Score-realization targets not expressible under the given vector."""
