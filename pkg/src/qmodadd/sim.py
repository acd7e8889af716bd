"""Exact and noisy evaluation of circuits.

Every gate in the IR permutes computational basis states, so exact
simulation is classical bit pushing.  The noisy simulator is a Monte
Carlo bit-flip model: independent flips after gates, idle flips per
layer, and an error channel for |0> resets.  Phase noise is invisible to
basis-state readout, so bit flips are the whole observable story.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuits import Circuit, Gate, GateKind, _layer_gates
from .errors import InvalidProbability, InvalidShots, LengthMismatch


def run_exact(circuit: Circuit, bits: list[int]) -> list[int]:
    """Apply the gate sequence to one basis state; returns a new list."""
    if len(bits) != circuit.width:
        raise LengthMismatch(
            f"state length {len(bits)} != circuit width {circuit.width}"
        )
    state = list(bits)
    for gate in circuit.gates:
        kind = gate.kind
        if kind is GateKind.X:
            state[gate.operands[0]] ^= 1
        elif kind is GateKind.CNOT:
            control, target = gate.operands
            state[target] ^= state[control]
        elif kind is GateKind.TOFFOLI:
            c1, c2, target = gate.operands
            state[target] ^= state[c1] & state[c2]
        else:  # RESET
            state[gate.operands[0]] = 0
    return state


@dataclass(frozen=True)
class NoiseModel:
    """Bit-flip probabilities for the Monte Carlo simulator.

    p_x / p_cnot / p_toffoli apply independently to every wire a gate of
    that kind touches, right after the gate.  p_idle applies per wire per
    layer in which no gate touches the wire.  delta_reset is the chance a
    single reset leaves |1> instead of |0>.
    """

    p_x: float = 0.0
    p_cnot: float = 0.0
    p_toffoli: float = 0.0
    p_idle: float = 0.0
    delta_reset: float = 0.0

    def __post_init__(self):
        for name in ("p_x", "p_cnot", "p_toffoli", "p_idle", "delta_reset"):
            value = getattr(self, name)
            if not 0.0 <= value < 0.5:
                raise InvalidProbability(f"{name}={value} outside [0, 0.5)")

    def gate_probability(self, kind: GateKind) -> float:
        if kind is GateKind.X:
            return self.p_x
        if kind is GateKind.CNOT:
            return self.p_cnot
        if kind is GateKind.TOFFOLI:
            return self.p_toffoli
        return 0.0


#: Frozen defaults for the experiment harness and the CLI.  Majority
#: readout at 1000 shots only registers errors once per-wire flip rates
#: approach one half, so the regime is decoherence-dominant: idling is
#: the main channel, state preparation errs at delta, and gate noise is
#: a light overlay with Toffolis costlier than CNOTs.  With these values
#: the four adders separate cleanly and stably at n=4.  Override per run
#: as needed.
DEFAULT_NOISE = NoiseModel(
    p_x=0.001,
    p_cnot=0.002,
    p_toffoli=0.005,
    p_idle=0.012,
    delta_reset=0.12,
)


def effective_reset_error(delta: float, k: int) -> float:
    """Residual |1> probability after k back-to-back resets.

    The k-fold preparation leaves the one-qubit mixture proportional to
    (1-delta)^k |0><0| + delta^k |1><1|; normalizing gives
    delta^k / (delta^k + (1-delta)^k).
    """
    if not 0.0 <= delta < 0.5:
        raise InvalidProbability(f"delta={delta} outside [0, 0.5)")
    if k < 1:
        raise InvalidShots(f"reset count k={k} must be >= 1")
    if delta == 0.0:
        return 0.0
    hi = delta**k
    lo = (1.0 - delta) ** k
    return hi / (hi + lo)


@dataclass(frozen=True)
class ShotHistogram:
    """Readout counts keyed by the integer value of the readout wires."""

    counts: dict[int, int]
    shots: int
    seed: int
    readout: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise InvalidShots("histogram counts do not sum to shots")


def most_frequent(histogram: ShotHistogram) -> int:
    """Outcome with the highest count; ties go to the smallest value."""
    best = None
    best_count = -1
    for value in sorted(histogram.counts):
        count = histogram.counts[value]
        if count > best_count:
            best, best_count = value, count
    return best


def _collapse_resets(circuit: Circuit) -> tuple[tuple[Gate, ...], dict[int, int]]:
    """Merge maximal runs of same-wire consecutive resets.

    Returns the effective gate tuple and a map from the index of each
    surviving reset (in the effective tuple) to its run length.  A run is
    consecutive when no other gate touches that wire in between.
    """
    effective: list[Gate] = []
    run_lengths: dict[int, int] = {}
    open_runs: dict[int, int] = {}  # wire -> index in `effective`
    for gate in circuit.gates:
        if gate.kind is GateKind.RESET:
            wire = gate.operands[0]
            if wire in open_runs:
                run_lengths[open_runs[wire]] += 1
                continue
            open_runs[wire] = len(effective)
            run_lengths[len(effective)] = 1
            effective.append(gate)
        else:
            for wire in gate.operands:
                open_runs.pop(wire, None)
            effective.append(gate)
    return tuple(effective), run_lengths


def run_noisy(
    circuit: Circuit,
    bits: list[int],
    noise: NoiseModel,
    shots: int,
    seed: int,
    readout: list[int] | None = None,
    reset_model: str = "purify",
) -> ShotHistogram:
    """Monte Carlo evaluation under the bit-flip noise model.

    Gates are applied layer by layer (ASAP schedule of the effective gate
    list); wires untouched in a layer take an idle flip with p_idle.  In
    the default "purify" reset model, runs of k consecutive resets on one
    wire act as a single preparation with error effective_reset_error(
    delta, k); in "independent" mode every reset errs on its own.
    Deterministic in (circuit, bits, noise, shots, seed).
    """
    if len(bits) != circuit.width:
        raise LengthMismatch(
            f"state length {len(bits)} != circuit width {circuit.width}"
        )
    if shots < 1:
        raise InvalidShots(f"shots={shots} must be >= 1")
    if reset_model not in ("purify", "independent"):
        raise InvalidProbability(f"unknown reset model {reset_model!r}")
    if readout is None:
        readout = list(range(circuit.width))
    for wire in readout:
        if not 0 <= wire < circuit.width:
            raise LengthMismatch(f"readout wire {wire} outside circuit")

    if reset_model == "purify":
        gates, run_lengths = _collapse_resets(circuit)
    else:
        gates, run_lengths = circuit.gates, {}
    layering = _layer_gates_cached(gates)

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    width = circuit.width
    state = np.tile(np.asarray(bits, dtype=np.uint8), (shots, 1))

    for layer in layering:
        busy = np.zeros(width, dtype=bool)
        for gate_index in layer:
            gate = gates[gate_index]
            ops = gate.operands
            busy[list(ops)] = True
            kind = gate.kind
            if kind is GateKind.X:
                state[:, ops[0]] ^= 1
            elif kind is GateKind.CNOT:
                state[:, ops[1]] ^= state[:, ops[0]]
            elif kind is GateKind.TOFFOLI:
                state[:, ops[2]] ^= state[:, ops[0]] & state[:, ops[1]]
            else:  # RESET (possibly a collapsed run)
                k = run_lengths.get(gate_index, 1)
                p_bad = (
                    effective_reset_error(noise.delta_reset, k)
                    if reset_model == "purify"
                    else noise.delta_reset
                )
                state[:, ops[0]] = (rng.random(shots) < p_bad).astype(np.uint8)
                continue
            p = noise.gate_probability(kind)
            if p > 0.0:
                flips = rng.random((shots, len(ops))) < p
                for j, wire in enumerate(ops):
                    state[:, wire] ^= flips[:, j].astype(np.uint8)
        if noise.p_idle > 0.0:
            idle = np.flatnonzero(~busy)
            if idle.size:
                flips = rng.random((shots, idle.size)) < noise.p_idle
                state[:, idle] ^= flips.astype(np.uint8)

    weights = 1 << np.arange(len(readout), dtype=np.uint64)
    values = state[:, readout].astype(np.uint64) @ weights
    uniques, tallies = np.unique(values, return_counts=True)
    counts = {int(v): int(c) for v, c in zip(uniques, tallies)}
    return ShotHistogram(counts=counts, shots=shots, seed=seed, readout=tuple(readout))


@lru_cache(maxsize=64)
def _layer_gates_cached(gates: tuple[Gate, ...]):
    return _layer_gates(gates).layers
