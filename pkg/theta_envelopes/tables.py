"""
The bundled appendix tables and their exact reproduction.

Tables 3-5 hold envelopes for square-free n with, for Tables 4 and 5, the rank and torsion
count of E_θ^n and E_{π-θ}^n. Tables 1 and 2 hold torsion data for ratio curves.
Rank columns are reference data: ranks are not recomputed.
"""
import json
import logging
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from theta_envelopes.config import resolve_data_dir
from theta_envelopes.core import Angle, Surd, to_rational
from theta_envelopes.curves.elliptic import point_order, torsion_points
from theta_envelopes.curves.theta_curves import (
    TorsionTag,
    classify_torsion,
    independent_point,
    m_quantities,
    make_E_theta,
    make_G_cubic,
)
from theta_envelopes.errors import DataFileError, DomainError, ThetaEnvelopeError
from theta_envelopes.models import Envelope
from theta_envelopes.transforms import envelope_to_solution, solution_to_envelope
from theta_envelopes.utils.workers import run_ordered

logger = logging.getLogger(__name__)

TABLE_IDS = (1, 2, 3, 4, 5)
ENVELOPE_TABLES = (3, 4, 5)


@dataclass(frozen=True)
class MEntry:
    """A printed square root of M0, M1 or M2: either its rational value or its square."""
    printed: str
    value: object = None
    square: Surd | None = None


@dataclass(frozen=True)
class TableRow:
    table_id: int
    key: tuple
    payload: dict = field(compare=False)
    bold: bool = False

    @property
    def label(self) -> str:
        if self.table_id in ENVELOPE_TABLES:
            return f"n={self.key[0]}"
        r, s, m = self.key
        return f"(r,s,m)=({r},{s},{m})"


@dataclass(frozen=True)
class Table:
    table_id: int
    title: str
    rows: tuple[TableRow, ...]
    angle: Angle | None = None


@dataclass
class ReproductionReport:
    table_id: int
    title: str
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _m_entry(data: dict) -> MEntry:
    if "value" in data:
        return MEntry(data["printed"], value=to_rational(data["value"]))
    square = data["square"]
    return MEntry(data["printed"], square=Surd(to_rational(square["rat"]), to_rational(square["coef"]),
                                               square["radicand"]))


def _curve_pair(value) -> tuple[int, int] | None:
    return None if value is None else (int(value[0]), int(value[1]))


def _parse_row(table_id: int, data: dict, angle: Angle | None) -> TableRow:
    if table_id in ENVELOPE_TABLES:
        n = data["n"]
        envelope = Envelope(angle, *(to_rational(v) for v in data["envelope"]))
        payload = {
            "envelope": envelope,
            "theta_curve": _curve_pair(data.get("theta_curve")),
            "reflected_curve": _curve_pair(data.get("reflected_curve")),
        }
        return TableRow(table_id, (n,), payload, bool(data.get("bold", False)))
    key = (data["r"], data["s"], to_rational(data["m"]))
    payload = {"torsion": TorsionTag(data["torsion"])}
    if table_id == 1:
        payload["sqrt_m"] = tuple(_m_entry(entry) for entry in data["sqrt_m"])
    else:
        payload["rank"] = int(data["rank"])
    return TableRow(table_id, key, payload)


def load_table(table_id: int, data_dir: str | Path | None = None) -> Table:
    """
    Loads table{table_id}.json from the data directory (see config.resolve_data_dir).

    Raises:
        DataFileError: if the file is missing or malformed.
    """
    if table_id not in TABLE_IDS:
        raise DomainError(f"table id must be one of {TABLE_IDS}, got {table_id}")
    path = resolve_data_dir(data_dir) / f"table{table_id}.json"
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise DataFileError(f"missing data file {path}") from None
    except json.JSONDecodeError as e:
        raise DataFileError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from None
    try:
        angle = Angle(data["r"], data["s"]) if table_id in ENVELOPE_TABLES else None
        rows = tuple(_parse_row(table_id, row, angle) for row in data["rows"])
        title = data["title"]
    except (KeyError, TypeError, ValueError, ThetaEnvelopeError) as e:
        raise DataFileError(f"{path} is malformed: {e}") from None
    logger.debug("loaded table %d with %d rows from %s", table_id, len(rows), path)
    return Table(table_id, title, rows, angle)


def _check_table1_row(row: TableRow) -> tuple[list[str], list[str]]:
    r, s, m = row.key
    angle = Angle(r, s)
    mismatches = []
    expected = row.payload["torsion"]
    computed = classify_torsion(angle, m).tag
    if computed is not expected:
        mismatches.append(f"{row.label}: torsion {computed.label}, table has {expected.label}")
    quantities = m_quantities(angle, m)
    squares = (Surd(quantities.M0), quantities.M1, quantities.M2)
    roots = (quantities.sqrt_M0, quantities.sqrt_M1, quantities.sqrt_M2)
    for index, (entry, square, root) in enumerate(zip(row.payload["sqrt_m"], squares, roots)):
        if entry.value is not None and root != entry.value:
            mismatches.append(f"{row.label}: sqrt(M{index}) = {root}, table prints {entry.printed}")
        if entry.square is not None and square != entry.square:
            mismatches.append(f"{row.label}: M{index} = {square}, table prints ({entry.printed})^2 = {entry.square}")
    return mismatches, []


def _check_table2_row(row: TableRow) -> tuple[list[str], list[str]]:
    r, s, m = row.key
    angle = Angle(r, s)
    mismatches, notes = [], []
    expected = row.payload["torsion"]
    computed = classify_torsion(angle, m).tag
    if computed is not expected:
        mismatches.append(f"{row.label}: torsion {computed.label}, table has {expected.label}")
    order = point_order(make_G_cubic(angle, m), independent_point(angle, m))
    rank = row.payload["rank"]
    if rank == 0 and order is None:
        notes.append(f"{row.label}: reference rank 0 but the independent point tests infinite")
    elif rank > 0 and order is not None:
        notes.append(f"{row.label}: reference rank {rank}; the independent point has order {order}")
    return mismatches, notes


def _torsion_count(angle: Angle, n: int) -> int:
    return len(torsion_points(make_E_theta(angle, n)))


def _check_envelope_row(angle: Angle, row: TableRow) -> tuple[list[str], list[str]]:
    n = row.key[0]
    envelope = row.payload["envelope"]
    failures = envelope.equation_failures(n)
    if failures:
        return [f"{row.label}: fails equation(s) {', '.join(map(str, failures))}"], []
    mismatches = []
    if solution_to_envelope(angle, n, envelope_to_solution(angle, envelope)) != envelope:
        mismatches.append(f"{row.label}: system solution does not map back to the envelope")
    for column, curve_angle in (("theta_curve", angle), ("reflected_curve", angle.reflect())):
        printed = row.payload[column]
        if printed is None:
            continue
        count = _torsion_count(curve_angle, n)
        if count != printed[1]:
            mismatches.append(f"{row.label}: {column} torsion count {count}, table has {printed[1]}")
    return mismatches, []


def _check_row(table: Table, index: int) -> tuple[list[str], list[str]]:
    row = table.rows[index]
    if table.table_id == 1:
        return _check_table1_row(row)
    if table.table_id == 2:
        return _check_table2_row(row)
    return _check_envelope_row(table.angle, row)


def reproduce_table(table_id: int, data_dir: str | Path | None = None, workers: int = 1) -> ReproductionReport:
    """
    Recomputes every computed column of a table and diffs it against the bundled data.

    Table 1: torsion class and the M-quantities. Table 2: torsion class; the rank column is
    reference-only and disagreements with the independent point's order become notes.
    Tables 3-5: exact verification, the envelope/system-solution round trip and, where printed,
    the torsion counts of E_θ^n and E_{π-θ}^n.
    """
    table = load_table(table_id, data_dir)
    report = ReproductionReport(table_id, table.title)
    results = run_ordered(partial(_check_row, table), range(len(table.rows)), workers)
    for mismatches, notes in results:
        report.checked += 1
        report.mismatches.extend(mismatches)
        report.notes.extend(notes)
    if table_id == 2 or (table_id in ENVELOPE_TABLES and any(r.payload["theta_curve"] for r in table.rows)):
        report.notes.append("rank columns are reference data and are not recomputed")
    logger.info("table %d: %d rows, %d mismatches", table_id, report.checked, len(report.mismatches))
    return report
