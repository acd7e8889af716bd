"""Constructors for the four modulo (2**n + 1) adders and their gadgets.

All four variants share the same first stage: a ripple adder that leaves
the regular sum on the a-register (plus a carry wire) while reverse
computing the b-register back to its input.  A NOR gadget folds the two
top sum bits into a correction bit, and a second stage (full adder for
QMA1, half-adder increment otherwise) produces the modulo sum.

Wire budget per variant, for operand size n:

    QMA1  3n+5   a | b | carry | zero register | spill wire
    QMA2  3n+4   a | b | carry | result register (fresh)
    QMA3  2n+4   a | b | carry | one fresh wire; b wires reset and reused
    QMA4  2n+4   same as QMA3 with every reset doubled

Gate emission order is deliberate: the per-kind depths of the finished
circuits are part of the public resource contract, and the ASAP layering
of each kind-filtered subcircuit depends on it.  Reorder with care.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuits import Circuit, Gate, cnot, reset, toffoli, x
from .errors import DuplicateOperand, InvalidN, LengthMismatch


class AdderVariant(Enum):
    QMA1 = "qma1"
    QMA2 = "qma2"
    QMA3 = "qma3"
    QMA4 = "qma4"

    @property
    def is_static(self) -> bool:
        """Static variants are reset-free and fully reversible."""
        return self in (AdderVariant.QMA1, AdderVariant.QMA2)


@dataclass(frozen=True)
class RegisterLayout:
    """Role -> wire map for a built adder.

    a_wires / b_wires are the operand registers at time zero.  sum_wires
    carry the regular sum, least significant first (QMA1 appends one
    always-zero spill wire kept for reversibility).  mod_wires carry the
    modulo sum.  preserved_roles names registers still holding their
    advertised value when the circuit ends.
    """

    n: int
    a_wires: tuple[int, ...]
    b_wires: tuple[int, ...]
    sum_wires: tuple[int, ...]
    mod_wires: tuple[int, ...]
    ancilla_wires: tuple[int, ...]
    preserved_roles: frozenset[str]


@dataclass(frozen=True)
class BuiltAdder:
    circuit: Circuit
    layout: RegisterLayout
    variant: AdderVariant

    @property
    def n(self) -> int:
        return self.layout.n


def _require_distinct(wires: list[int], what: str) -> None:
    if len(set(wires)) != len(wires):
        raise DuplicateOperand(f"{what} wires must be distinct: {wires}")


def build_nor_gadget(x_wire: int, y_wire: int, target: int) -> list[Gate]:
    """target ^= NOT(x or y); controls are restored.

    One Toffoli wrapped in four NOTs; target is assumed |0>.
    """
    _require_distinct([x_wire, y_wire, target], "nor gadget")
    return [
        x(x_wire),
        x(y_wire),
        toffoli(x_wire, y_wire, target),
        x(x_wire),
        x(y_wire),
    ]


def build_full_adder(
    a_wires: list[int], b_wires: list[int], carry_out: int
) -> list[Gate]:
    """Ripple adder: |a>|b>|0> -> |a+b mod 2^w>|b>|carry>.

    The sum overwrites the a-register; the b-register is reverse computed
    back to its input.  For w >= 2 this uses exactly 2w-1 Toffolis and
    5(w-1) CNOTs, with the Toffolis forming a single dependency chain.

    Carries ripple on the b-register: a descending CNOT cascade puts each
    b wire into a prefix-pair state, an ascending Toffoli pass turns that
    into carry form, and a descending pass extracts the carry into the
    a-register while uncomputing.  The carry-out wire is completed by the
    very last CNOT, which keeps the downstream stages of the larger
    adders from starting early in the filtered layerings.
    """
    w = len(a_wires)
    if len(b_wires) != w:
        raise LengthMismatch(f"register sizes differ: {w} vs {len(b_wires)}")
    if w < 1:
        raise LengthMismatch("empty registers")
    _require_distinct(a_wires + b_wires + [carry_out], "full adder")

    recv, keep = a_wires, b_wires
    gates: list[Gate] = []
    if w == 1:
        gates.append(toffoli(keep[0], recv[0], carry_out))
        gates.append(cnot(keep[0], recv[0]))
        return gates

    # Descending ripple: parity onto the receiver, prefix cascade on keep.
    for i in range(w - 1, 0, -1):
        gates.append(cnot(keep[i], recv[i]))
        if i <= w - 2:
            gates.append(cnot(keep[i], keep[i + 1]))
    # Ascending carry computation.
    for i in range(w - 1):
        gates.append(toffoli(keep[i], recv[i], keep[i + 1]))
    gates.append(toffoli(keep[w - 1], recv[w - 1], carry_out))
    # Descending carry extraction and uncomputation.
    for i in range(w - 1, 0, -1):
        gates.append(cnot(keep[i], recv[i]))
        gates.append(toffoli(keep[i - 1], recv[i - 1], keep[i]))
    # Ascending finish: sum bits and cascade undo, woven.
    for i in range(w):
        gates.append(cnot(keep[i], recv[i]))
        if 1 <= i <= w - 2:
            gates.append(cnot(keep[i], keep[i + 1]))
    # Carry-out completion; must come after keep[w-1] is restored.
    gates.append(cnot(keep[w - 1], carry_out))
    return gates


def build_half_adder_increment(
    v_wires: list[int], c_wire: int, fresh_wires: list[int]
) -> list[Gate]:
    """Add the single bit on c_wire to the value on v_wires.

    v_wires are read-only; the result lands on [c_wire, *fresh_wires]
    (carry-then-sum order).  fresh_wires are assumed |0> and there must
    be len(v_wires) - 1 of them.  Uses w-1 Toffolis and w CNOTs.
    """
    w = len(v_wires)
    if len(fresh_wires) != w - 1:
        raise LengthMismatch(
            f"need {w - 1} fresh wires for {w} value wires, got {len(fresh_wires)}"
        )
    _require_distinct(v_wires + [c_wire] + fresh_wires, "half adder")
    out = [c_wire, *fresh_wires]
    gates: list[Gate] = []
    for i in range(w - 1):
        gates.append(toffoli(v_wires[i], out[i], out[i + 1]))
        gates.append(cnot(v_wires[i], out[i]))
    gates.append(cnot(v_wires[w - 1], out[w - 1]))
    return gates


def build_qma(variant: AdderVariant, n: int) -> BuiltAdder:
    """Build one adder variant for operand size n >= 1.

    For every valid basis input (a, b) with 0 <= a, b <= 2^n, exact
    simulation reads (a + b + 1) mod (2^n + 1) on mod_wires and a + b on
    sum_wires.  QMA1/QMA2 also restore b.
    """
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    if variant is AdderVariant.QMA1:
        return _build_qma1(n)
    if variant is AdderVariant.QMA2:
        return _build_qma2(n)
    return _build_qma34(n, variant)


def _build_qma1(n: int) -> BuiltAdder:
    w = n + 1
    a = list(range(w))
    b = list(range(w, 2 * w))
    carry = 2 * w
    zero_reg = list(range(2 * w + 1, 3 * w + 1))  # correction bit + result
    spill = 3 * w + 1
    width = 3 * n + 5

    gates = build_full_adder(a, b, carry)
    gates += build_nor_gadget(carry, a[n], zero_reg[0])
    folded = a[:n] + [carry]
    # Second stage: full adder with the zero register as the receiving
    # side, so the regular sum survives on its own wires.
    gates += build_full_adder(zero_reg, folded, spill)

    layout = RegisterLayout(
        n=n,
        a_wires=tuple(a),
        b_wires=tuple(b),
        sum_wires=tuple(a) + (carry, spill),
        mod_wires=tuple(zero_reg),
        ancilla_wires=(),
        preserved_roles=frozenset({"b", "sum", "mod"}),
    )
    return BuiltAdder(Circuit(width, tuple(gates), "qma1"), layout, AdderVariant.QMA1)


def _build_qma2(n: int) -> BuiltAdder:
    w = n + 1
    a = list(range(w))
    b = list(range(w, 2 * w))
    carry = 2 * w
    result = list(range(2 * w + 1, 3 * w + 1))  # correction bit + fresh wires
    width = 3 * n + 4

    gates = build_full_adder(a, b, carry)
    gates += build_nor_gadget(carry, a[n], result[0])
    folded = a[:n] + [carry]
    gates += build_half_adder_increment(folded, result[0], result[1:])

    layout = RegisterLayout(
        n=n,
        a_wires=tuple(a),
        b_wires=tuple(b),
        sum_wires=tuple(a) + (carry,),
        mod_wires=tuple(result),
        ancilla_wires=(),
        preserved_roles=frozenset({"b", "sum", "mod"}),
    )
    return BuiltAdder(Circuit(width, tuple(gates), "qma2"), layout, AdderVariant.QMA2)


def _build_qma34(n: int, variant: AdderVariant) -> BuiltAdder:
    w = n + 1
    a = list(range(w))
    b = list(range(w, 2 * w))
    carry = 2 * w
    fresh = 2 * w + 1
    width = 2 * n + 4

    # n of the b wires plus one fresh wire are reset and reused as the
    # result register; one b wire is left untouched.  Reused b wires take
    # the heavy result bits: their resets land late in the schedule, so
    # they idle least before use.  The fresh wire has no predecessors,
    # resets at the very start, and therefore takes a light bit.  The
    # truncation drops b[n] when n == 1 (two result wires suffice);
    # otherwise b[n-1] is the wire that keeps its value.
    result = ([b[0], fresh] + b[1 : n - 1] + [b[n]])[: n + 1]
    doubled = variant is AdderVariant.QMA4

    gates = build_full_adder(a, b, carry)
    for wire in result:
        gates.append(reset(wire))
        if doubled:
            gates.append(reset(wire))
    gates += build_nor_gadget(carry, a[n], result[0])
    folded = a[:n] + [carry]
    gates += build_half_adder_increment(folded, result[0], result[1:])

    layout = RegisterLayout(
        n=n,
        a_wires=tuple(a),
        b_wires=tuple(b),
        sum_wires=tuple(a) + (carry,),
        mod_wires=tuple(result),
        ancilla_wires=(),
        preserved_roles=frozenset({"sum", "mod"}),
    )
    return BuiltAdder(Circuit(width, tuple(gates), variant.value), layout, variant)
