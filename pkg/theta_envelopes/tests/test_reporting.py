import os
import sys

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.core import Angle  # noqa: E402
from theta_envelopes.curves.elliptic import INFINITY, CurvePoint  # noqa: E402
from theta_envelopes.curves.theta_curves import classify_torsion, independent_point, m_quantities  # noqa: E402
from theta_envelopes.search import SearchMode, SearchOutcome, SearchStatus  # noqa: E402
from theta_envelopes.tables import ReproductionReport  # noqa: E402
from theta_envelopes.utils.records import EnvelopeRecord  # noqa: E402
from theta_envelopes.utils.reporting import (  # noqa: E402
    format_classification,
    format_outcome,
    format_point,
    format_verification,
    print_reproduce_report,
    print_verify_report,
)


def test_format_point():
    assert format_point(INFINITY) == "∞"
    assert format_point(None) == "∞"
    assert format_point(CurvePoint(-12, 36)) == "(-12, 36)"


def test_format_verification(unit_envelope):
    assert format_verification(EnvelopeRecord(unit_envelope, 1)) == "θ(1,0) n=1 PASS"
    assert format_verification(EnvelopeRecord(unit_envelope, 2, lineno=7)) == \
        "line 7: θ(1,0) n=2 FAIL equation 3 (a(b + d) = rn)"


def test_print_verify_report(capsys, unit_envelope):
    print_verify_report([EnvelopeRecord(unit_envelope, 1), EnvelopeRecord(unit_envelope, 3)], "envelopes.jsonl")
    captured = capsys.readouterr()
    assert "Verification of: envelopes.jsonl" in captured.out
    assert "2 record(s), 1 passed, 1 failed." in captured.out


def test_print_verify_report_empty(capsys):
    print_verify_report([], "<stdin>")
    captured = capsys.readouterr()
    assert "No records." in captured.out
    assert "0 record(s), 0 passed, 0 failed." in captured.out


def test_format_classification():
    angle = Angle(2, 1)
    text = format_classification(angle, 3, classify_torsion(angle, 3), m_quantities(angle, 3),
                                 independent_point(angle, 3), 8)
    assert "Torsion: Z/8Z (Z8)" in text
    assert "sqrt(M0) = 3, sqrt(M1) = irrational, sqrt(M2) = 4" in text
    assert "Order-8 points: " in text
    assert text.endswith("order 8\n" + "-" * 41)


def test_format_outcome():
    unknown = SearchOutcome(SearchMode.CONGRUENT, "θ=(1,0), n=1", SearchStatus.UNKNOWN, note="nothing")
    text = format_outcome(unknown)
    assert "Result: unknown within budget" in text
    assert "Witness" not in text
    assert "Note: nothing" in text

    found = SearchOutcome(SearchMode.CONGRUENT, "θ=(1,0), n=5", SearchStatus.YES, CurvePoint(-4, -6))
    assert "Witness: (-4, -6)" in format_outcome(found)


def test_print_reproduce_report(capsys):
    report = ReproductionReport(3, "Envelopes", checked=2, mismatches=["n=1: fails equation(s) 3"],
                                notes=["reference only"])
    print_reproduce_report(report)
    captured = capsys.readouterr()
    assert "Table 3: Envelopes" in captured.out
    assert "MISMATCH n=1: fails equation(s) 3" in captured.out
    assert "note: reference only" in captured.out
    assert "All computed columns match." not in captured.out
