import os
import sys
from fractions import Fraction

import pytest

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.core import Angle  # noqa: E402
from theta_envelopes.curves.elliptic import CubicCurve, CurvePoint  # noqa: E402
from theta_envelopes.errors import DomainError  # noqa: E402
from theta_envelopes.models import Envelope  # noqa: E402
from theta_envelopes.search import (  # noqa: E402
    Deadline,
    SearchBudget,
    SearchMode,
    SearchOutcome,
    SearchStatus,
    Searcher,
    chord_slopes,
    find_envelope_adhoc,
    heuristic_rank_positive,
    integral_model,
    naive_points,
    point_height,
    theta_congruent_heuristic,
)


def envelope(r, s, *values):
    return Envelope(Angle(r, s), *(Fraction(v) for v in values))


@pytest.fixture
def budget():
    return SearchBudget(height_bound=5, slope_bound=12)


def test_budget_validation():
    with pytest.raises(DomainError):
        SearchBudget(0)
    with pytest.raises(DomainError):
        SearchBudget(5, slope_bound=0)
    with pytest.raises(DomainError):
        SearchBudget(5, time_limit=-1)


def test_budget_from_config(testing_config):
    budget = SearchBudget.from_config(testing_config)
    assert (budget.height_bound, budget.slope_bound, budget.time_limit) == (30, 8, None)
    assert SearchBudget.from_config(testing_config, height_bound=5, time_limit=2.5).height_bound == 5


def test_deadline(mocker):
    mocker.patch('theta_envelopes.search.budget.time.time', return_value=100.0)
    assert not Deadline().expired()
    assert SearchBudget(5, time_limit=3).start() == Deadline(103.0)
    assert Deadline(100.0).expired()
    assert not Deadline(100.5).expired()


def test_positive_outcome_needs_witness():
    with pytest.raises(DomainError):
        SearchOutcome(SearchMode.RANK, "θ=(2,1), m=2", SearchStatus.YES)
    assert not SearchOutcome(SearchMode.RANK, "θ=(2,1), m=2", SearchStatus.UNKNOWN).found


def test_integral_model_and_height():
    model, u = integral_model(CubicCurve(Fraction(1, 2), Fraction(1, 3)))
    assert u == 6
    assert model == CubicCurve(18, 432)
    assert model.is_integral
    assert point_height(CurvePoint(Fraction(-9, 4), 1)) == 9
    assert point_height(CurvePoint(0, 0)) == 1


def test_naive_points_on_congruent_curve():
    points = naive_points(CubicCurve(0, -1), SearchBudget(10))
    assert points == [CurvePoint(-1, 0), CurvePoint(0, 0), CurvePoint(1, 0)]


def test_naive_points_on_ratio_curve():
    points = set(naive_points(CubicCurve(24, 36), SearchBudget(12)))
    for x, y in ((0, 0), (6, 36), (6, -36), (-12, 36), (-12, -36), (-2, 4), (-2, -4)):
        assert CurvePoint(x, y) in points


def test_naive_points_needs_integral_model():
    with pytest.raises(DomainError):
        naive_points(CubicCurve(Fraction(1, 2), 1), SearchBudget(5))


def test_naive_points_in_parallel(thread_pool):
    E = CubicCurve(24, 36)
    assert naive_points(E, SearchBudget(12), workers=3) == naive_points(E, SearchBudget(12))


def test_chord_slopes(right_angle):
    assert chord_slopes(right_angle, 2) == [(Fraction(1, 2), Fraction(4, 3))]
    assert all(beta > 0 for _, beta in chord_slopes(Angle(2, 1), 12))


@pytest.mark.parametrize("r, s, n, height, expected", [
    (2, 1, 3, 1, (1, "171/56", "151/56", "165/56", "199/56")),
    (1, 0, 1, 5, ("2/5", "7/60", "5/12", "143/60", "29/12")),
    (2, 1, 2, 2, ("1/2", "8/21", "19/42", "160/21", "331/42")),
    (1, 0, 5, 4, ("3/4", "10/3", "41/12", "10/3", "41/12")),
    (5, 3, 1, 1, (1, "5/6", "5/6", "25/6", "29/6")),
])
def test_find_envelope_adhoc(r, s, n, height, expected):
    found = find_envelope_adhoc(Angle(r, s), n, SearchBudget(height, slope_bound=12))
    assert found == envelope(r, s, *expected)
    assert found.equation_failures(n) == []


def test_find_envelope_adhoc_unknown_within_budget(right_angle):
    assert find_envelope_adhoc(right_angle, 3, SearchBudget(2, slope_bound=12)) is None


def test_find_envelope_adhoc_parallel_keeps_height_order(thread_pool, angle_2_1):
    found = find_envelope_adhoc(angle_2_1, 2, SearchBudget(2, slope_bound=12), workers=2)
    assert found == envelope(2, 1, "1/2", "8/21", "19/42", "160/21", "331/42")


def test_find_envelope_adhoc_respects_time_limit(mocker, angle_2_1):
    mocker.patch('theta_envelopes.search.budget.Deadline.expired', return_value=True)
    assert find_envelope_adhoc(angle_2_1, 3, SearchBudget(5, time_limit=1)) is None


def test_theta_congruent_heuristic(right_angle):
    outcome = theta_congruent_heuristic(right_angle, 5, SearchBudget(10))
    assert outcome.status is SearchStatus.YES
    assert outcome.witness == CurvePoint(-4, -6)

    # 1 is not congruent: only 2-torsion turns up.
    outcome = theta_congruent_heuristic(right_angle, 1, SearchBudget(10))
    assert outcome.status is SearchStatus.UNKNOWN
    assert outcome.witness is None


def test_rank_heuristic(angle_2_1, budget):
    outcome = heuristic_rank_positive(angle_2_1, 2, budget)
    assert outcome.found
    assert outcome.witness == CurvePoint(-12, 36)

    # rank 0: never reported as rank 0, only unknown
    outcome = heuristic_rank_positive(angle_2_1, Fraction(1, 3), budget)
    assert outcome.status is SearchStatus.UNKNOWN

    with pytest.raises(DomainError):
        heuristic_rank_positive(angle_2_1, 0, budget)


def test_searcher_runs_and_reports(capsys, angle_2_1, budget):
    searcher = Searcher(budget)
    hit = searcher.run("envelope", angle_2_1, "3")
    assert hit.found
    assert searcher.run(SearchMode.RANK, angle_2_1, Fraction(2)).found
    assert len(searcher.outcomes) == 2

    searcher.report()
    captured = capsys.readouterr()
    assert "Search report (height 5, slopes up to 1/12)" in captured.out
    assert "Result: yes" in captured.out


def test_searcher_needs_integer_n(angle_2_1, budget):
    with pytest.raises(DomainError):
        Searcher(budget).run("congruent", angle_2_1, "3/2")
