"""Gate-level IR for reversible circuits over {X, CNOT, TOFFOLI, RESET}.

A circuit is a fixed wire count plus an ordered gate list.  Layering
(greedy as-soon-as-possible) gives a deterministic depth; per-kind depth
is computed on the subcircuit of that kind alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import ArityMismatch, DuplicateOperand, OperandOutOfRange


class GateKind(Enum):
    X = "x"
    CNOT = "cx"
    TOFFOLI = "ccx"
    RESET = "reset"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    GateKind.X: 1,
    GateKind.CNOT: 2,
    GateKind.TOFFOLI: 3,
    GateKind.RESET: 1,
}


@dataclass(frozen=True)
class Gate:
    """One operation: kind plus ordered operand wires.

    For CNOT the operands are (control, target); for TOFFOLI
    (control, control, target).  Operands must be pairwise distinct.
    """

    kind: GateKind
    operands: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != self.kind.arity:
            raise ArityMismatch(
                f"{self.kind.name} takes {self.kind.arity} operands, "
                f"got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise DuplicateOperand(f"repeated wire in {self.kind.name}{self.operands}")

    @property
    def target(self) -> int:
        return self.operands[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.operands[:-1]


def x(wire: int) -> Gate:
    return Gate(GateKind.X, (wire,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def toffoli(control_a: int, control_b: int, target: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (control_a, control_b, target))


def reset(wire: int) -> Gate:
    return Gate(GateKind.RESET, (wire,))


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered gate sequence over `width` wires."""

    width: int
    gates: tuple[Gate, ...] = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            _check_operands(self.width, gate)

    def count(self, kind: GateKind) -> int:
        return sum(1 for g in self.gates if g.kind is kind)

    def __len__(self) -> int:
        return len(self.gates)


def _check_operands(width: int, gate: Gate) -> None:
    for wire in gate.operands:
        if not 0 <= wire < width:
            raise OperandOutOfRange(
                f"wire {wire} outside [0, {width}) in {gate.kind.name}{gate.operands}"
            )


def append_gate(circuit: Circuit, gate: Gate) -> Circuit:
    """Return a new circuit with `gate` appended."""
    _check_operands(circuit.width, gate)
    return Circuit(circuit.width, circuit.gates + (gate,), circuit.label)


def circuit_from(width: int, gates: Iterable[Gate], label: str = "") -> Circuit:
    return Circuit(width, tuple(gates), label)


@dataclass(frozen=True)
class Layering:
    """ASAP schedule: layers of wire-disjoint gates, plus gate -> layer map."""

    layers: tuple[tuple[int, ...], ...]
    assignment: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.layers)


def compute_layering(circuit: Circuit) -> Layering:
    """Greedy ASAP layering.

    Each gate goes to the earliest layer strictly after every earlier
    gate that shares one of its wires.  Deterministic in the gate order.
    """
    return _layer_gates(circuit.gates)


def _layer_gates(gates: Sequence[Gate]) -> Layering:
    frontier: dict[int, int] = {}  # wire -> first layer free for use
    assignment: list[int] = []
    layers: list[list[int]] = []
    for index, gate in enumerate(gates):
        layer = max((frontier.get(w, 0) for w in gate.operands), default=0)
        for w in gate.operands:
            frontier[w] = layer + 1
        if layer == len(layers):
            layers.append([])
        layers[layer].append(index)
        assignment.append(layer)
    return Layering(
        layers=tuple(tuple(layer) for layer in layers),
        assignment=tuple(assignment),
    )


def depth_by_kind(circuit: Circuit, kind: GateKind) -> int:
    """Depth of the subcircuit keeping only gates of `kind`."""
    kept = [g for g in circuit.gates if g.kind is kind]
    if not kept:
        return 0
    return _layer_gates(kept).depth


def total_depth(circuit: Circuit) -> int:
    if not circuit.gates:
        return 0
    return compute_layering(circuit).depth
