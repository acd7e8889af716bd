"""OpenQASM 3 subset interchange: x / cx / ccx / reset on one flat register.

Export is deterministic byte-for-byte.  A structured leading comment
(`// layout: {...}`) carries the register roles so a parsed file can be
simulated and scored without rebuilding.  The parser is a small
hand-rolled scanner that never raises anything but the diagnostic error
types, whatever the input bytes.
"""
from __future__ import annotations

import json
import re

from .builders import AdderVariant, BuiltAdder, RegisterLayout
from .circuits import Circuit, Gate, GateKind
from .errors import (
    DuplicateOperand,
    QasmSyntaxError,
    SubsetViolation,
    WidthMismatch,
)

_GATE_NAMES = {
    GateKind.X: "x",
    GateKind.CNOT: "cx",
    GateKind.TOFFOLI: "ccx",
    GateKind.RESET: "reset",
}
_NAME_TO_KIND = {v: k for k, v in _GATE_NAMES.items()}

#: gate names that are real OpenQASM but outside the supported subset
_KNOWN_FOREIGN = {
    "h", "y", "z", "s", "sdg", "t", "tdg", "sx", "rx", "ry", "rz",
    "cz", "cp", "swap", "cswap", "u", "u1", "u2", "u3", "measure",
    "barrier", "id", "p", "crx", "cry", "crz",
}


def export_qasm(built: BuiltAdder) -> str:
    """Serialize a built adder; metadata comment first, then the program."""
    layout = built.layout
    meta = {
        "variant": built.variant.name,
        "n": layout.n,
        "a_wires": list(layout.a_wires),
        "b_wires": list(layout.b_wires),
        "sum_wires": list(layout.sum_wires),
        "mod_wires": list(layout.mod_wires),
        "ancilla_wires": list(layout.ancilla_wires),
        "preserved_roles": sorted(layout.preserved_roles),
    }
    lines = [
        f"// layout: {json.dumps(meta, sort_keys=True)}",
        "OPENQASM 3.0;",
        f"qubit[{built.circuit.width}] q;",
    ]
    lines.extend(_gate_line(g) for g in built.circuit.gates)
    return "\n".join(lines) + "\n"


def export_circuit(circuit: Circuit) -> str:
    """Serialize a bare circuit (no layout metadata)."""
    lines = ["OPENQASM 3.0;", f"qubit[{circuit.width}] q;"]
    lines.extend(_gate_line(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def _gate_line(gate: Gate) -> str:
    name = _GATE_NAMES[gate.kind]
    args = ", ".join(f"q[{w}]" for w in gate.operands)
    return f"{name} {args};"


_LAYOUT_RE = re.compile(r"^//\s*layout:\s*(\{.*\})\s*$")
_STMT_RE = re.compile(
    r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?P<args>[^;]*);\s*(?://.*)?$"
)
_OPERAND_RE = re.compile(r"^q\[(\d+)\]$")
_QUBIT_RE = re.compile(r"^qubit\[(\d+)\]\s+([A-Za-z_][A-Za-z0-9_]*)\s*;\s*(?://.*)?$")


def parse_qasm(text: str) -> tuple[Circuit, RegisterLayout | None]:
    """Parse the subset back into a circuit (and layout if present).

    Raises QasmSyntaxError / SubsetViolation / WidthMismatch /
    DuplicateOperand with 1-based line positions.
    """
    if not isinstance(text, str):
        raise QasmSyntaxError("input is not text", 1, 1)
    layout: RegisterLayout | None = None
    label = ""
    width: int | None = None
    saw_version = False
    gates: list[Gate] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            match = _LAYOUT_RE.match(line)
            if match and layout is None:
                layout = _parse_layout(match.group(1), line_no)
                variant = extract_variant(line)
                if variant is not None:
                    label = variant.value
            continue
        if not saw_version:
            if not re.match(r"^OPENQASM\s+3(\.\d+)?\s*;\s*(?://.*)?$", line):
                raise QasmSyntaxError(
                    f"expected OPENQASM 3 version line, got {line!r}", line_no, 1
                )
            saw_version = True
            continue
        if width is None:
            match = _QUBIT_RE.match(line)
            if not match:
                raise QasmSyntaxError(
                    f"expected qubit declaration, got {line!r}", line_no, 1
                )
            width = int(match.group(1))
            continue
        gates.append(_parse_statement(line, line_no, width))

    if not saw_version:
        raise QasmSyntaxError("empty program: missing version line", 1, 1)
    if width is None:
        raise QasmSyntaxError("missing qubit declaration", 1, 1)
    return Circuit(width, tuple(gates), label=label), layout


def _parse_statement(line: str, line_no: int, width: int) -> Gate:
    match = _STMT_RE.match(line)
    if not match:
        raise QasmSyntaxError(f"unparseable statement {line!r}", line_no, 1)
    name = match.group("name")
    kind = _NAME_TO_KIND.get(name)
    if kind is None:
        if name in _KNOWN_FOREIGN or name == "qubit":
            raise SubsetViolation(
                f"statement {name!r} is outside the x/cx/ccx/reset subset",
                line_no,
                1,
            )
        raise QasmSyntaxError(f"unknown statement {name!r}", line_no, 1)
    args = [piece.strip() for piece in match.group("args").split(",") if piece.strip()]
    operands = []
    for piece in args:
        operand_match = _OPERAND_RE.match(piece)
        if not operand_match:
            raise QasmSyntaxError(f"bad operand {piece!r}", line_no, 1)
        operands.append(int(operand_match.group(1)))
    if len(operands) != kind.arity:
        raise QasmSyntaxError(
            f"{name} takes {kind.arity} operand(s), got {len(operands)}",
            line_no,
            1,
        )
    for wire in operands:
        if wire >= width:
            raise WidthMismatch(
                f"operand q[{wire}] outside register of size {width}", line_no, 1
            )
    if len(set(operands)) != len(operands):
        raise DuplicateOperand(f"{line_no}:1: repeated operand in {line!r}")
    return Gate(kind, tuple(operands))


def _parse_layout(blob: str, line_no: int) -> RegisterLayout | None:
    try:
        data = json.loads(blob)
        return RegisterLayout(
            n=int(data["n"]),
            a_wires=tuple(data["a_wires"]),
            b_wires=tuple(data["b_wires"]),
            sum_wires=tuple(data["sum_wires"]),
            mod_wires=tuple(data["mod_wires"]),
            ancilla_wires=tuple(data.get("ancilla_wires", ())),
            preserved_roles=frozenset(data.get("preserved_roles", ())),
        )
    except (KeyError, TypeError, ValueError):
        # Malformed metadata is not fatal; the program may still parse.
        return None


def extract_variant(text: str) -> AdderVariant | None:
    """Read the variant name out of the layout comment, if any."""
    for raw in text.splitlines():
        match = _LAYOUT_RE.match(raw.strip())
        if match:
            try:
                return AdderVariant[json.loads(match.group(1))["variant"]]
            except (KeyError, TypeError, ValueError):
                return None
    return None
