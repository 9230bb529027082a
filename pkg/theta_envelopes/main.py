import argparse
import logging
import os
import sys

# Allows `python theta_envelopes/main.py` from a checkout as well as `python -m theta_envelopes.main`.
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from theta_envelopes.config import config_by_name, get_config  # noqa: E402
from theta_envelopes.core import make_angle, parse_rational  # noqa: E402
from theta_envelopes.curves.elliptic import CurvePoint, point_order  # noqa: E402
from theta_envelopes.curves.theta_curves import (  # noqa: E402
    classify_torsion,
    independent_point,
    m_quantities,
    make_G_cubic,
)
from theta_envelopes.envelopes import generate_envelopes  # noqa: E402
from theta_envelopes.errors import DomainError  # noqa: E402
from theta_envelopes.search import SearchBudget, SearchMode, Searcher  # noqa: E402
from theta_envelopes.tables import TABLE_IDS, reproduce_table  # noqa: E402
from theta_envelopes.transforms import ct_to_et, cubic_to_quartic, et_to_ct, quartic_to_cubic  # noqa: E402
from theta_envelopes.utils.error_handlers import EXIT_FAILURE, EXIT_OK, handle_cli_error  # noqa: E402
from theta_envelopes.utils.records import FORMATS, EnvelopeRecord, read_records, write_records  # noqa: E402
from theta_envelopes.utils.reporting import (  # noqa: E402
    format_point,
    print_classification_report,
    print_reproduce_report,
    print_verify_report,
)

logger = logging.getLogger("theta_envelopes")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
TRANSFORM_MAPS = ("cubic-to-quartic", "quartic-to-cubic", "ct-to-et", "et-to-ct")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _workers(args, config) -> int:
    return args.workers if args.workers is not None else config.WORKERS


def cmd_verify(args, config) -> int:
    if args.input == "-":
        records = read_records(sys.stdin, args.format)
        source = "<stdin>"
    else:
        with open(args.input, encoding="utf-8", newline="") as handle:
            records = read_records(handle, args.format)
        source = args.input
    print_verify_report(records, source)
    return EXIT_OK if all(record.passed for record in records) else EXIT_FAILURE


def cmd_classify(args, config) -> int:
    angle = make_angle(args.r, args.s)
    m = parse_rational(args.m)
    torsion = classify_torsion(angle, m)
    quantities = m_quantities(angle, m)
    P = independent_point(angle, m)
    order = point_order(make_G_cubic(angle, m), P, config.ORDER_SCAN_LIMIT)
    print_classification_report(angle, m, torsion, quantities, P, order)
    return EXIT_OK


def cmd_generate(args, config) -> int:
    angle = make_angle(args.r, args.s)
    envelopes = generate_envelopes(angle, args.n, args.count, _workers(args, config))
    write_records([EnvelopeRecord(envelope, args.n) for envelope in envelopes], sys.stdout, args.format)
    return EXIT_OK


def cmd_reproduce(args, config) -> int:
    report = reproduce_table(args.table, args.data_dir, _workers(args, config))
    print_reproduce_report(report)
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_search(args, config) -> int:
    angle = make_angle(args.r, args.s)
    budget = SearchBudget.from_config(config, args.height, args.time, args.slopes)
    searcher = Searcher(budget, _workers(args, config))
    searcher.run(args.mode, angle, parse_rational(args.value))
    searcher.report()
    return EXIT_OK


def _require(args, *names):
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise DomainError(f"transform {args.map} needs {', '.join(missing)}")


def cmd_transform(args, config) -> int:
    first, second = parse_rational(args.first), parse_rational(args.second)
    if args.map in ("cubic-to-quartic", "quartic-to-cubic"):
        _require(args, "r", "s", "m", "n")
        angle = make_angle(args.r, args.s)
        m = parse_rational(args.m)
        if args.map == "cubic-to-quartic":
            x, z = cubic_to_quartic(angle, m, args.n, CurvePoint(first, second))
            result = f"({x}, {z})"
        else:
            result = format_point(quartic_to_cubic(angle, m, args.n, (first, second)))
    else:
        _require(args, "T")
        T = parse_rational(args.T)
        if args.map == "ct-to-et":
            result = format_point(ct_to_et(T, (first, second)))
        else:
            image = et_to_ct(T, CurvePoint(first, second))
            result = "a point at infinity of C_T" if image is None else f"({image[0]}, {image[1]})"
    print(f"{args.map}: ({first}, {second}) -> {result}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, help="Worker processes (default from THETA_ENVELOPE_WORKERS).")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, help="Logging level (default from THETA_ENVELOPE_LOG_LEVEL).")
    common.add_argument("--env", choices=sorted(config_by_name), help="Configuration to use.")

    parser = argparse.ArgumentParser(
        prog="theta_envelopes",
        description="Exact computations with θ-parallelogram envelopes and their elliptic curves.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="Verify envelope records.")
    verify.add_argument("input", nargs="?", default="-", help="Record file, '-' for stdin.")
    verify.add_argument("--format", choices=FORMATS, default="jsonl")
    verify.set_defaults(handler=cmd_verify)

    classify = commands.add_parser("classify", parents=[common], help="Torsion class of a ratio curve.")
    classify.add_argument("r", type=int)
    classify.add_argument("s", type=int)
    classify.add_argument("m", help="Ratio m as p/q.")
    classify.set_defaults(handler=cmd_classify)

    generate = commands.add_parser("generate", parents=[common], help="Generate envelopes for a Pythagorean angle.")
    generate.add_argument("r", type=int)
    generate.add_argument("s", type=int)
    generate.add_argument("n", type=int)
    generate.add_argument("--count", type=int, default=3)
    generate.add_argument("--format", choices=FORMATS, default="jsonl")
    generate.set_defaults(handler=cmd_generate)

    reproduce = commands.add_parser("reproduce", parents=[common], help="Reproduce a bundled table.")
    reproduce.add_argument("table", type=int, choices=TABLE_IDS)
    reproduce.add_argument("--data-dir", help="Directory with table1.json .. table5.json.")
    reproduce.set_defaults(handler=cmd_reproduce)

    search = commands.add_parser("search", parents=[common], help="Bounded searches.")
    search.add_argument("mode", choices=[mode.value for mode in SearchMode])
    search.add_argument("r", type=int)
    search.add_argument("s", type=int)
    search.add_argument("value", help="n for envelope/congruent, m for rank.")
    search.add_argument("--height", type=int)
    search.add_argument("--time", type=float)
    search.add_argument("--slopes", type=int)
    search.set_defaults(handler=cmd_search)

    transform = commands.add_parser("transform", parents=[common], help="Apply a birational map to a point.")
    transform.add_argument("map", choices=TRANSFORM_MAPS)
    transform.add_argument("first", help="x or X as p/q.")
    transform.add_argument("second", help="y, z or Y as p/q.")
    transform.add_argument("--r", type=int)
    transform.add_argument("--s", type=int)
    transform.add_argument("--m")
    transform.add_argument("--n", type=int)
    transform.add_argument("--T")
    transform.set_defaults(handler=cmd_transform)
    return parser


def main(argv=None) -> int:
    """
    Main function to run the theta_envelopes CLI. Returns the exit code.
    """
    args = build_parser().parse_args(argv)
    config = get_config(args.env)
    logging.basicConfig(level=(args.log_level or config.LOG_LEVEL).upper(), format=LOG_FORMAT,
                        stream=sys.stderr, force=True)
    logger.debug("running %s with %s", args.command, config.__name__)
    try:
        return args.handler(args, config)
    except Exception as e:
        return handle_cli_error(e)


if __name__ == "__main__":
    sys.exit(main())
