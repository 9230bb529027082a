from theta_envelopes.models import EQUATION_NAMES

RULE = "-----------------------------------------"
FRAME = "========================================="


def format_point(P) -> str:
    return "∞" if P is None or P.is_infinity else f"({P.x}, {P.y})"


def format_verification(record) -> str:
    """
    One line per envelope record: its source line, angle, n and PASS or the failed equations.
    """
    where = f"line {record.lineno}: " if record.lineno is not None else ""
    head = f"{where}θ{record.envelope.angle} n={record.n}"
    if record.passed:
        return f"{head} PASS"
    failed = "; ".join(f"equation {i} ({EQUATION_NAMES[i]})" for i in record.failures)
    return f"{head} FAIL {failed}"


def print_verify_report(records: list, source: str):
    print(FRAME)
    print(f"Verification of: {source}")
    print(FRAME)
    if not records:
        print("No records.")
    for record in records:
        print(format_verification(record))
    failed = sum(1 for record in records if not record.passed)
    print(RULE)
    print(f"{len(records)} record(s), {len(records) - failed} passed, {failed} failed.")
    print(FRAME)


def format_classification(angle, m, torsion, quantities, independent, order) -> str:
    """
    Formats a torsion classification with its witnesses.

    Args:
        angle: The angle θ.
        m: The ratio.
        torsion: The TorsionClass.
        quantities: The MQuantities of (θ, m).
        independent: The independent point 𝒫.
        order: Order of 𝒫 when finite, None when it tests infinite.

    Returns:
        A multi-line string.
    """
    lines = [RULE]
    lines.append(f"Ratio curve: θ={angle}, m={m}")
    lines.append(f"Torsion: {torsion.tag.label} ({torsion.tag.value})")
    lines.append(f"M0 = {quantities.M0}, M1 = {quantities.M1}, M2 = {quantities.M2}")
    roots = ", ".join(
        f"sqrt(M{i}) = {root if root is not None else 'irrational'}"
        for i, root in enumerate((quantities.sqrt_M0, quantities.sqrt_M1, quantities.sqrt_M2))
    )
    lines.append(roots)
    lines.append("Order-4 points: " + ", ".join(format_point(P) for P in torsion.order_four))
    if torsion.order_eight:
        lines.append("Order-8 points: " + ", ".join(format_point(P) for P in torsion.order_eight))
    status = "infinite order (rank >= 1)" if order is None else f"order {order}"
    lines.append(f"Independent point: {format_point(independent)}, {status}")
    lines.append(RULE)
    return "\n".join(lines)


def print_classification_report(angle, m, torsion, quantities, independent, order):
    print(format_classification(angle, m, torsion, quantities, independent, order))


def format_outcome(outcome) -> str:
    lines = [RULE]
    lines.append(f"Search: {outcome.mode.value} for {outcome.subject}")
    lines.append(f"Result: {outcome.status.value}" + ("" if outcome.found else " within budget"))
    if outcome.witness is not None:
        witness = outcome.witness
        lines.append(f"Witness: {format_point(witness) if hasattr(witness, 'is_infinity') else witness}")
    if outcome.note:
        lines.append(f"Note: {outcome.note}")
    lines.append(RULE)
    return "\n".join(lines)


def print_search_report(outcomes: list, budget):
    print(FRAME)
    limit = f", time limit {budget.time_limit}s" if budget.time_limit is not None else ""
    print(f"Search report (height {budget.height_bound}, slopes up to 1/{budget.slope_bound}{limit})")
    print(FRAME)
    if not outcomes:
        print("No searches run.")
    for outcome in outcomes:
        print(format_outcome(outcome))
    print(FRAME)


def print_reproduce_report(report):
    print(FRAME)
    print(f"Table {report.table_id}: {report.title}")
    print(FRAME)
    print(f"{report.checked} row(s) checked.")
    if report.mismatches:
        print(f"Found {len(report.mismatches)} mismatch(es):")
        for line in report.mismatches:
            print(f"  MISMATCH {line}")
    else:
        print("All computed columns match.")
    for note in report.notes:
        print(f"  note: {note}")
    print(FRAME)
