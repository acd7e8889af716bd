"""Resource accounting: gate counts, per-kind depths, width, figure of merit."""
from __future__ import annotations

from dataclasses import dataclass, asdict
from decimal import Decimal, ROUND_HALF_EVEN
from fractions import Fraction

from .circuits import Circuit, GateKind, depth_by_kind, total_depth
from .errors import EmptyInput


@dataclass(frozen=True)
class ResourceReport:
    """Exact tallies for one circuit.

    fom is width times Toffoli depth; lower is better.  Depths are ASAP
    layer counts of the kind-filtered subcircuits.
    """

    label: str
    width: int
    cnot_count: int
    toffoli_count: int
    x_count: int
    reset_count: int
    cnot_depth: int
    toffoli_depth: int
    total_depth: int
    fom: int

    def as_dict(self) -> dict:
        return asdict(self)


#: Report fields that participate in percentage comparisons.
COMPARE_FIELDS = (
    "width",
    "cnot_count",
    "toffoli_count",
    "reset_count",
    "cnot_depth",
    "toffoli_depth",
    "total_depth",
    "fom",
)


def analyze(circuit: Circuit) -> ResourceReport:
    toffoli_depth = depth_by_kind(circuit, GateKind.TOFFOLI)
    return ResourceReport(
        label=circuit.label,
        width=circuit.width,
        cnot_count=circuit.count(GateKind.CNOT),
        toffoli_count=circuit.count(GateKind.TOFFOLI),
        x_count=circuit.count(GateKind.X),
        reset_count=circuit.count(GateKind.RESET),
        cnot_depth=depth_by_kind(circuit, GateKind.CNOT),
        toffoli_depth=toffoli_depth,
        total_depth=total_depth(circuit),
        fom=circuit.width * toffoli_depth,
    )


def round2(value: Fraction) -> Decimal:
    """Exact ratio -> two decimals, banker's rounding."""
    return (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_EVEN
    )


def compare(reports: list[ResourceReport], baseline: int = 0) -> list[dict]:
    """Percentage reduction of each field relative to one baseline report.

    delta = 100 * (baseline - value) / baseline, rounded to two decimals
    half-even; positive means the report improves on the baseline.  Fields
    whose baseline is zero come back as None (undefined).
    """
    if not reports:
        raise EmptyInput("no reports to compare")
    if not 0 <= baseline < len(reports):
        raise EmptyInput(f"baseline index {baseline} out of range")
    base = reports[baseline]
    rows = []
    for report in reports:
        row: dict = {"label": report.label}
        for name in COMPARE_FIELDS:
            base_value = getattr(base, name)
            value = getattr(report, name)
            if base_value == 0:
                row[name] = Decimal("0.00") if value == 0 else None
            else:
                row[name] = round2(Fraction(100 * (base_value - value), base_value))
        rows.append(row)
    return rows
