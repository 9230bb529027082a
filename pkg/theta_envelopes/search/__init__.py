from theta_envelopes.search.adhoc import (
    chord_slopes,
    find_envelope_adhoc,
    heuristic_rank_positive,
    theta_congruent_heuristic,
)
from theta_envelopes.search.budget import Deadline, SearchBudget, SearchMode, SearchOutcome, SearchStatus
from theta_envelopes.search.points import integral_model, naive_points, point_height
from theta_envelopes.search.searcher import Searcher
