import logging
import sys

from theta_envelopes.errors import (
    ConsistencyError,
    ConstructionError,
    DataFileError,
    DomainError,
    RecordParseError,
    ThetaEnvelopeError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _report(message: str):
    print(f"Error: {message}", file=sys.stderr)


def handle_record_parse_error(e: RecordParseError) -> int:
    """Malformed input records; the message carries the line number."""
    _report(str(e))
    return EXIT_USAGE


def handle_domain_error(e: DomainError) -> int:
    """A precondition on user input failed; the message names the relation."""
    _report(str(e))
    return EXIT_USAGE


def handle_data_file_error(e: DataFileError) -> int:
    _report(str(e))
    return EXIT_FAILURE


def handle_construction_error(e: ConstructionError) -> int:
    _report(str(e))
    return EXIT_FAILURE


def handle_consistency_error(e: ConsistencyError) -> int:
    # An internal transcription check failed; keep the traceback for debugging.
    logger.debug("consistency check failed", exc_info=e)
    _report(str(e))
    return EXIT_FAILURE


def handle_unexpected_error(e: Exception) -> int:
    logger.debug("unexpected error", exc_info=e)
    print(f"An unexpected error occurred: {e}", file=sys.stderr)
    return EXIT_FAILURE


# Most specific first.
ERROR_HANDLERS = (
    (RecordParseError, handle_record_parse_error),
    (DomainError, handle_domain_error),
    (DataFileError, handle_data_file_error),
    (ConstructionError, handle_construction_error),
    (ConsistencyError, handle_consistency_error),
)


def handle_cli_error(e: Exception) -> int:
    """Prints the one-line diagnostic for e and returns the exit code."""
    for error_type, handler in ERROR_HANDLERS:
        if isinstance(e, error_type):
            return handler(e)
    if isinstance(e, ThetaEnvelopeError):
        _report(str(e))
        return EXIT_FAILURE
    return handle_unexpected_error(e)
