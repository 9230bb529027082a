import time
from dataclasses import dataclass
from enum import Enum

from theta_envelopes.errors import DomainError


class SearchStatus(Enum):
    YES = "yes"
    UNKNOWN = "unknown"


class SearchMode(Enum):
    ENVELOPE = "envelope"
    CONGRUENT = "congruent"
    RANK = "rank"


@dataclass(frozen=True)
class Deadline:
    """Wall-clock cut-off shared with pool workers; None never expires."""
    expires_at: float | None = None

    def expired(self) -> bool:
        return self.expires_at is not None and time.time() >= self.expires_at


@dataclass(frozen=True)
class SearchBudget:
    """
    Limits for the bounded searches.

    height_bound caps |numerator| and denominator of the searched quantity: x = p/e^2 for
    curve points, a = p/q for the ad hoc envelope search. slope_bound caps the denominator
    of the chord slopes tried by the ad hoc search.
    """
    height_bound: int
    time_limit: float | None = None
    slope_bound: int = 12

    def __post_init__(self):
        if not isinstance(self.height_bound, int) or self.height_bound < 1:
            raise DomainError(f"height bound must be a positive integer, got {self.height_bound!r}")
        if not isinstance(self.slope_bound, int) or self.slope_bound < 1:
            raise DomainError(f"slope bound must be a positive integer, got {self.slope_bound!r}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise DomainError(f"time limit must be positive, got {self.time_limit}")

    @classmethod
    def from_config(cls, config, height_bound: int | None = None, time_limit: float | None = None,
                    slope_bound: int | None = None) -> "SearchBudget":
        """Budget from a Config class, with explicit arguments (CLI flags) taking precedence."""
        return cls(
            height_bound=height_bound if height_bound is not None else config.HEIGHT_BOUND,
            time_limit=time_limit if time_limit is not None else config.TIME_LIMIT,
            slope_bound=slope_bound if slope_bound is not None else config.SLOPE_BOUND,
        )

    def start(self) -> Deadline:
        if self.time_limit is None:
            return Deadline()
        return Deadline(time.time() + self.time_limit)


@dataclass(frozen=True)
class SearchOutcome:
    """
    Result of one search. status is YES only with a witness; UNKNOWN never means impossible.
    """
    mode: SearchMode
    subject: str
    status: SearchStatus
    witness: object = None
    note: str = ""

    def __post_init__(self):
        if self.status is SearchStatus.YES and self.witness is None:
            raise DomainError("a positive search outcome needs a witness")

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.YES
