"""
Envelope records as JSON lines or CSV.

A record is {"r": int, "s": int, "n": int, "a": "p/q", ..., "e": "p/q"}; rationals are
always exact strings.
"""
import csv
import json
import logging
from dataclasses import dataclass, field

from theta_envelopes.core import Angle, format_rational, to_rational
from theta_envelopes.errors import DomainError, RecordParseError
from theta_envelopes.models import Envelope

logger = logging.getLogger(__name__)

RECORD_FIELDS = ("r", "s", "n", "a", "b", "c", "d", "e")
FORMATS = ("jsonl", "csv")


@dataclass(frozen=True)
class EnvelopeRecord:
    envelope: Envelope
    n: int
    lineno: int | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        data = {"r": self.envelope.angle.r, "s": self.envelope.angle.s, "n": self.n}
        for name, value in zip("abcde", self.envelope.quintuple):
            data[name] = format_rational(value)
        return data

    @property
    def failures(self) -> list[int]:
        return self.envelope.equation_failures(self.n)

    @property
    def passed(self) -> bool:
        return not self.failures


def _integer(value, name: str) -> int:
    if isinstance(value, bool):
        raise DomainError(f"field '{name}' must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
        return int(value)
    raise DomainError(f"field '{name}' must be an integer, got {value!r}")


def record_from_dict(data: dict, lineno: int | None = None) -> EnvelopeRecord:
    """
    Builds a record from parsed fields.

    Raises:
        RecordParseError: for missing fields, inexact numbers, an invalid angle or a
            nonpositive component.
    """
    if not isinstance(data, dict):
        raise RecordParseError(lineno, f"expected an object, got {type(data).__name__}")
    missing = [name for name in RECORD_FIELDS if name not in data]
    if missing:
        raise RecordParseError(lineno, f"missing field(s) {', '.join(missing)}")
    try:
        angle = Angle(_integer(data["r"], "r"), _integer(data["s"], "s"))
        n = _integer(data["n"], "n")
        if n < 1:
            raise DomainError(f"field 'n' must be positive, got {n}")
        envelope = Envelope(angle, *(to_rational(data[name]) for name in "abcde"))
    except DomainError as e:
        raise RecordParseError(lineno, str(e)) from None
    return EnvelopeRecord(envelope, n, lineno)


def read_jsonl(stream) -> list[EnvelopeRecord]:
    records = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordParseError(lineno, f"invalid JSON: {e.msg}") from None
        records.append(record_from_dict(data, lineno))
    return records


def read_csv(stream) -> list[EnvelopeRecord]:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        return []
    missing = [name for name in RECORD_FIELDS if name not in reader.fieldnames]
    if missing:
        raise RecordParseError(1, f"header lacks column(s) {', '.join(missing)}")
    return [record_from_dict(row, reader.line_num) for row in reader]


def read_records(stream, fmt: str = "jsonl") -> list[EnvelopeRecord]:
    if fmt not in FORMATS:
        raise DomainError(f"unknown record format '{fmt}', expected one of {FORMATS}")
    records = read_jsonl(stream) if fmt == "jsonl" else read_csv(stream)
    logger.debug("read %d %s records", len(records), fmt)
    return records


def write_records(records, stream, fmt: str = "jsonl"):
    if fmt not in FORMATS:
        raise DomainError(f"unknown record format '{fmt}', expected one of {FORMATS}")
    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=RECORD_FIELDS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record.to_dict())
        return
    for record in records:
        stream.write(json.dumps(record.to_dict()) + "\n")
