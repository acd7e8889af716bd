import pytest

from qmodadd.builders import (
    AdderVariant,
    build_full_adder,
    build_half_adder_increment,
    build_nor_gadget,
    build_qma,
)
from qmodadd.circuits import Circuit, GateKind
from qmodadd.errors import DuplicateOperand, InvalidN, LengthMismatch
from qmodadd.oracle import mod_add_plus_one
from qmodadd.sim import run_exact


def _run(width, gates, bits):
    return run_exact(Circuit(width, tuple(gates)), list(bits))


def _encode(built, a, b):
    bits = [0] * built.circuit.width
    for i, w in enumerate(built.layout.a_wires):
        bits[w] = (a >> i) & 1
    for i, w in enumerate(built.layout.b_wires):
        bits[w] = (b >> i) & 1
    return bits


def _decode(bits, wires):
    return sum(bits[w] << i for i, w in enumerate(wires))


class TestNorGadget:
    def test_truth_table_and_restoration(self):
        gates = build_nor_gadget(0, 1, 2)
        for x_in in (0, 1):
            for y_in in (0, 1):
                out = _run(3, gates, [x_in, y_in, 0])
                assert out == [x_in, y_in, 1 - (x_in | y_in)]

    def test_gate_census(self):
        gates = build_nor_gadget(3, 1, 0)
        kinds = [g.kind for g in gates]
        assert kinds.count(GateKind.TOFFOLI) == 1
        assert kinds.count(GateKind.X) == 4
        assert kinds.count(GateKind.CNOT) == 0

    def test_distinct_wires_required(self):
        with pytest.raises(DuplicateOperand):
            build_nor_gadget(0, 0, 1)


class TestFullAdder:
    def test_small_examples(self):
        w = 5
        gates = build_full_adder(list(range(w)), list(range(w, 2 * w)), 2 * w)
        out = _run(2 * w + 1, gates, [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
        assert _decode(out, range(w)) == 2           # 1 + 1
        assert _decode(out, range(w, 2 * w)) == 1    # b restored
        assert out[2 * w] == 0
        out = _run(2 * w + 1, gates, [0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0])
        assert _decode(out, range(w)) == 0           # 16 + 16 wraps
        assert out[2 * w] == 1

    @pytest.mark.parametrize("w", [1, 2, 3, 4])
    def test_exhaustive_against_integer_addition(self, w):
        gates = build_full_adder(list(range(w)), list(range(w, 2 * w)), 2 * w)
        for a in range(1 << w):
            for b in range(1 << w):
                bits = [(a >> i) & 1 for i in range(w)]
                bits += [(b >> i) & 1 for i in range(w)]
                bits += [0]
                out = _run(2 * w + 1, gates, bits)
                total = a + b
                assert _decode(out, range(w)) == total % (1 << w)
                assert _decode(out, range(w, 2 * w)) == b
                assert out[2 * w] == total >> w

    @pytest.mark.parametrize("w", [2, 3, 5, 8])
    def test_gate_counts(self, w):
        gates = build_full_adder(list(range(w)), list(range(w, 2 * w)), 2 * w)
        kinds = [g.kind for g in gates]
        assert kinds.count(GateKind.TOFFOLI) == 2 * w - 1
        assert kinds.count(GateKind.CNOT) == 5 * (w - 1)
        assert kinds.count(GateKind.X) == 0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            build_full_adder([0, 1], [2], 3)
        with pytest.raises(DuplicateOperand):
            build_full_adder([0, 1], [1, 2], 3)


class TestHalfAdderIncrement:
    def test_examples(self):
        w = 5
        v = list(range(w))
        gates = build_half_adder_increment(v, w, list(range(w + 1, 2 * w)))
        bits = [(12 >> i) & 1 for i in range(w)] + [1] + [0] * (w - 1)
        out = _run(2 * w, gates, bits)
        assert _decode(out, [w] + list(range(w + 1, 2 * w))) == 13
        assert _decode(out, v) == 12  # value register read-only
        bits = [(7 >> i) & 1 for i in range(w)] + [0] + [0] * (w - 1)
        out = _run(2 * w, gates, bits)
        assert _decode(out, [w] + list(range(w + 1, 2 * w))) == 7

    def test_exhaustive_w4(self):
        w = 4
        gates = build_half_adder_increment(
            list(range(w)), w, list(range(w + 1, 2 * w))
        )
        for value in range(1 << w):
            for c in (0, 1):
                bits = [(value >> i) & 1 for i in range(w)] + [c] + [0] * (w - 1)
                out = _run(2 * w, gates, bits)
                got = _decode(out, [w] + list(range(w + 1, 2 * w)))
                assert got == (value + c) % (1 << w)
                assert _decode(out, range(w)) == value

    def test_counts_and_validation(self):
        w = 6
        gates = build_half_adder_increment(
            list(range(w)), w, list(range(w + 1, 2 * w))
        )
        kinds = [g.kind for g in gates]
        assert kinds.count(GateKind.TOFFOLI) == w - 1
        assert kinds.count(GateKind.CNOT) == w
        with pytest.raises(LengthMismatch):
            build_half_adder_increment([0, 1, 2], 3, [4])


class TestBuildQma:
    def test_invalid_n(self):
        with pytest.raises(InvalidN):
            build_qma(AdderVariant.QMA1, 0)

    @pytest.mark.parametrize("variant", list(AdderVariant))
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_oracle_exhaustively(self, variant, n):
        built = build_qma(variant, n)
        layout = built.layout
        for a in range((1 << n) + 1):
            for b in range((1 << n) + 1):
                out = run_exact(built.circuit, _encode(built, a, b))
                assert _decode(out, layout.mod_wires) == mod_add_plus_one(n, a, b)
                assert _decode(out, layout.sum_wires) == a + b
                if "b" in layout.preserved_roles:
                    assert _decode(out, layout.b_wires) == b

    def test_static_variants_are_reset_free(self):
        for variant in (AdderVariant.QMA1, AdderVariant.QMA2):
            assert variant.is_static
            built = build_qma(variant, 3)
            assert built.circuit.count(GateKind.RESET) == 0

    def test_qma1_n4_headline_counts(self):
        circuit = build_qma(AdderVariant.QMA1, 4).circuit
        assert circuit.width == 17
        assert circuit.count(GateKind.CNOT) == 40
        assert circuit.count(GateKind.TOFFOLI) == 19

    def test_qma3_n4_width_and_resets(self):
        circuit = build_qma(AdderVariant.QMA3, 4).circuit
        assert circuit.width == 12
        assert circuit.count(GateKind.RESET) == 5

    def test_qma4_doubles_resets_only(self):
        qma3 = build_qma(AdderVariant.QMA3, 4).circuit
        qma4 = build_qma(AdderVariant.QMA4, 4).circuit
        assert qma4.count(GateKind.RESET) == 10
        for kind in (GateKind.CNOT, GateKind.TOFFOLI, GateKind.X):
            assert qma3.count(kind) == qma4.count(kind)

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_structural_delta_qma4_vs_qma3(self, n):
        """qma4 = qma3 plus one extra reset right after each existing one."""
        qma3 = list(build_qma(AdderVariant.QMA3, n).circuit.gates)
        qma4 = list(build_qma(AdderVariant.QMA4, n).circuit.gates)
        assert len(qma4) == len(qma3) + n + 1
        position = 0
        extras = 0
        for gate in qma4:
            if (
                gate.kind is GateKind.RESET
                and position > 0
                and qma3[position - 1] == gate
                and (position >= len(qma3) or qma3[position] != gate)
            ):
                extras += 1
                continue
            assert qma3[position] == gate
            position += 1
        assert position == len(qma3)
        assert extras == n + 1

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_layout_role_coverage(self, n):
        for variant in AdderVariant:
            built = build_qma(variant, n)
            layout = built.layout
            assert set(layout.a_wires) | set(layout.b_wires) | set(
                layout.sum_wires
            ) | set(layout.mod_wires) | set(layout.ancilla_wires) == set(
                range(built.circuit.width)
            )
            assert not set(layout.a_wires) & set(layout.b_wires)
            assert not set(layout.sum_wires) & set(layout.mod_wires)
