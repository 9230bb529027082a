import logging

from theta_envelopes.core import Angle, to_rational
from theta_envelopes.errors import DomainError
from theta_envelopes.search.adhoc import find_envelope_adhoc, heuristic_rank_positive, theta_congruent_heuristic
from theta_envelopes.search.budget import SearchBudget, SearchMode, SearchOutcome, SearchStatus
from theta_envelopes.utils.reporting import print_search_report

logger = logging.getLogger(__name__)


class Searcher:
    def __init__(self, budget: SearchBudget, workers: int = 1):
        """
        Initializes the Searcher.

        Args:
            budget: Height, slope and time limits shared by every search this object runs.
            workers: Process count for the range workers; 1 runs inline.
        """
        self.budget = budget
        self.workers = max(1, workers)
        self.outcomes: list[SearchOutcome] = []

    def envelope(self, angle: Angle, n: int) -> SearchOutcome:
        found = find_envelope_adhoc(angle, n, self.budget, self.workers)
        subject = f"θ={angle}, n={n}"
        if found is None:
            return self._record(SearchOutcome(
                SearchMode.ENVELOPE, subject, SearchStatus.UNKNOWN,
                note=f"unknown within height {self.budget.height_bound}, slopes up to 1/{self.budget.slope_bound}",
            ))
        return self._record(SearchOutcome(SearchMode.ENVELOPE, subject, SearchStatus.YES, found,
                                          "envelope verified exactly"))

    def congruent(self, angle: Angle, n: int) -> SearchOutcome:
        return self._record(theta_congruent_heuristic(angle, n, self.budget, self.workers))

    def rank(self, angle: Angle, m) -> SearchOutcome:
        return self._record(heuristic_rank_positive(angle, m, self.budget, self.workers))

    def run(self, mode: SearchMode | str, angle: Angle, value) -> SearchOutcome:
        """Dispatches on the mode: value is n for envelope and congruent searches, m for rank."""
        mode = SearchMode(mode)
        logger.info("search %s for θ=%s, value=%s", mode.value, angle, value)
        if mode is SearchMode.RANK:
            return self.rank(angle, to_rational(value))
        n = to_rational(value)
        if n.denominator != 1:
            raise DomainError(f"{mode.value} search needs an integer n, got {n}")
        n = n.numerator
        if mode is SearchMode.ENVELOPE:
            return self.envelope(angle, n)
        return self.congruent(angle, n)

    def _record(self, outcome: SearchOutcome) -> SearchOutcome:
        self.outcomes.append(outcome)
        return outcome

    def report(self):
        print_search_report(self.outcomes, self.budget)
