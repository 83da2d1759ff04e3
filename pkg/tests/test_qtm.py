import numpy as np
import pytest

from qckit.errors import (
    CapacityError,
    DimensionError,
    ParseError,
    StateError,
    WellFormednessError,
)
from qckit.oracle import Oracle, QueryCounter, oracle_gate
from qckit.qtm import (
    ConfigSpace,
    QTMDef,
    QTMState,
    Transition,
    check_well_formed,
    initial_qtm_state,
    oracle_step,
    parse_qtm,
    run_qtm,
    step_operator,
)

from conftest import (
    coin_machine,
    doubled_branch_machine,
    move_right_machine,
    partial_machine,
)

INV_SQRT2 = 1.0 / np.sqrt(2.0)


class TestConfigSpace:
    def test_enumeration_size(self):
        space = ConfigSpace(move_right_machine(), 3)
        assert space.size == 1 * 3 * 2 ** 3

    def test_index_decode_round_trip(self):
        space = ConfigSpace(coin_machine(), 3)
        for c in range(space.size):
            state, head, word = space.decode(c)
            assert space.index(state, head, word) == c

    def test_capacity(self):
        with pytest.raises(CapacityError):
            ConfigSpace(move_right_machine(), 11)


class TestStepOperator:
    def test_move_right_is_permutation(self):
        # oracle: enumerate all 8 configurations on T=2 and their images
        m = step_operator(move_right_machine(), 2)
        assert m.shape == (8, 8)
        assert np.array_equal(np.abs(m) ** 2, np.abs(m))  # 0/1 entries
        assert np.array_equal(m @ m.conj().T, np.eye(8))
        space = ConfigSpace(move_right_machine(), 2)
        for c in range(8):
            state, head, word = space.decode(c)
            image = space.index(state, (head + 1) % 2, word)
            assert m[image, c] == 1.0

    def test_undefined_pair_gives_zero_column(self):
        m = step_operator(partial_machine(), 2)
        space = ConfigSpace(partial_machine(), 2)
        col = space.index("q0", 0, ("1", "0"))
        assert np.all(m[:, col] == 0)

    def test_construction_linear_in_amplitudes(self):
        base = move_right_machine()
        scaled = QTMDef(
            base.states, base.alphabet, base.initial, base.final,
            {
                key: [
                    Transition(t.state, t.symbol, t.direction, 2 * t.amplitude)
                    for t in branches
                ]
                for key, branches in base.transitions.items()
            },
        )
        assert np.array_equal(
            step_operator(scaled, 2), 2 * step_operator(base, 2)
        )


class TestWellFormedness:
    def test_move_right_well_formed(self):
        ok, violations = check_well_formed(move_right_machine(), 2)
        assert ok and violations == []

    def test_coin_machine_well_formed(self):
        ok, violations = check_well_formed(coin_machine(), 2)
        assert ok and violations == []

    def test_doubled_branch_reports_column_norm(self):
        ok, violations = check_well_formed(doubled_branch_machine(), 2)
        assert not ok
        assert any("squared norm 2" in v for v in violations)

    def test_partial_machine_fails(self):
        ok, _ = check_well_formed(partial_machine(), 2)
        assert not ok

    @pytest.mark.parametrize("tape_cells", [2, 3, 4])
    def test_verdict_window_robustness(self, tape_cells):
        assert check_well_formed(move_right_machine(), tape_cells)[0]
        assert check_well_formed(coin_machine(), tape_cells)[0]
        assert not check_well_formed(doubled_branch_machine(), tape_cells)[0]
        assert not check_well_formed(partial_machine(), tape_cells)[0]


class TestRunQTM:
    def test_zero_steps(self):
        st = run_qtm(move_right_machine(), "01", 0, 3)
        expected = initial_qtm_state(move_right_machine(), "01", 3)
        assert np.array_equal(st.amps, expected.amps)

    def test_move_right_one_step(self):
        st = run_qtm(move_right_machine(), "01", 1, 3)
        space = st.space
        target = space.index("q0", 1, ("0", "1", "0"))
        assert st.amps[target] == 1.0
        assert np.sum(np.abs(st.amps)) == 1.0

    def test_coin_one_step_superposition(self):
        st = run_qtm(coin_machine(), "0", 1, 2)
        space = st.space
        a = st.amps[space.index("q0", 1, ("0", "0"))]
        b = st.amps[space.index("q0", 1, ("1", "0"))]
        assert a == pytest.approx(INV_SQRT2)
        assert b == pytest.approx(INV_SQRT2)
        assert np.sum(np.abs(st.amps) > 0) == 2

    def test_not_well_formed_rejected(self):
        with pytest.raises(WellFormednessError):
            run_qtm(doubled_branch_machine(), "0", 1, 2)

    @pytest.mark.parametrize(
        "machine", [move_right_machine(), coin_machine()]
    )
    def test_norm_preserved_50_steps(self, machine):
        st = run_qtm(machine, "01", 50, 3)
        assert abs(st.norm() - 1.0) < 1e-8

    def test_unitarity_tight(self):
        for machine in (move_right_machine(), coin_machine()):
            for t in (2, 3, 4):
                m = step_operator(machine, t)
                dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
                assert dev < 1e-9


class TestOracleStep:
    def _state(self, machine, word, tape_cells):
        return initial_qtm_state(machine, word, tape_cells)

    def test_constant_zero_unchanged(self):
        st = self._state(coin_machine(), "10", 3)
        out = oracle_step(st, Oracle(1, (0, 0)), [0], 1)
        assert np.array_equal(out.amps, st.amps)

    def test_xor_write(self):
        st = self._state(coin_machine(), "10", 2)
        out = oracle_step(st, Oracle(1, (0, 1)), [0], 1)
        space = out.space
        assert out.amps[space.index("q0", 0, ("1", "1"))] == 1.0

    def test_counter(self):
        counter = QueryCounter()
        st = self._state(coin_machine(), "0", 2)
        oracle_step(st, Oracle(1, (0, 0)), [0], 1, counter)
        assert counter.quantum_queries == 1

    def test_involution_small_oracles(self):
        import itertools

        machine = coin_machine()
        st = run_qtm(machine, "10", 2, 3)  # a genuine superposition
        for bits in itertools.product((0, 1), repeat=4):
            oracle = Oracle(2, bits)
            once = oracle_step(st, oracle, [0, 1], 2)
            twice = oracle_step(once, oracle, [0, 1], 2)
            assert np.max(np.abs(twice.amps - st.amps)) < 1e-12

    def test_matches_circuit_oracle_on_encoded_register(self, rng):
        # one-state binary machine with head fixed: configurations are in
        # bijection with tape words, so the QTM-side oracle must act like
        # the circuit-side oracle gate on that register
        machine = coin_machine()
        st = run_qtm(machine, "00", 2, 3)
        oracle = Oracle(2, (0, 1, 1, 0))
        out = oracle_step(st, oracle, [0, 1], 2)
        space = st.space
        # project amplitudes onto (word) for the head-position/state slice
        u = oracle_gate(oracle)
        for head in range(3):
            vec = np.array([
                st.amps[space.index("q0", head, tuple(format(w, "03b")))]
                for w in range(8)
            ])
            got = np.array([
                out.amps[space.index("q0", head, tuple(format(w, "03b")))]
                for w in range(8)
            ])
            assert np.max(np.abs(got - u @ vec)) < 1e-12

    def test_non_binary_symbol_rejected(self):
        machine = QTMDef(
            ["q0"], ["_", "0", "1"], "q0", "q0",
            {
                ("q0", s): [Transition("q0", s, "R", 1.0)]
                for s in ("_", "0", "1")
            },
        )
        st = initial_qtm_state(machine, "0", 2)  # cell 1 is blank '_'
        with pytest.raises(StateError):
            oracle_step(st, Oracle(1, (0, 1)), [1], 0)


class TestQTMFormat:
    TEXT = """states q0 q1 ; initial q0 ; final q1
alphabet _ 0 1
q0 0 -> q0 0 R 0.7071067811865476 0
q0 0 -> q0 1 R 0.7071067811865476 0
"""

    def test_parse(self):
        machine = parse_qtm(self.TEXT)
        assert machine.states == ["q0", "q1"]
        assert machine.alphabet[0] == "_"
        assert machine.final == "q1"
        branches = machine.transitions[("q0", "0")]
        assert len(branches) == 2
        assert branches[0].amplitude == pytest.approx(INV_SQRT2)

    def test_bad_direction(self):
        with pytest.raises(ParseError):
            parse_qtm(
                "states q0 ; initial q0 ; final q0\nalphabet _\n"
                "q0 _ -> q0 _ X 1 0\n"
            )

    def test_undeclared_state(self):
        with pytest.raises(ParseError):
            parse_qtm(
                "states q0 ; initial q0 ; final q0\nalphabet _\n"
                "q0 _ -> q9 _ R 1 0\n"
            )

    def test_final_state_with_transitions_rejected(self):
        with pytest.raises(DimensionError):
            QTMDef(
                ["q0", "qf"], ["_"], "q0", "qf",
                {("qf", "_"): [Transition("qf", "_", "R", 1.0)]},
            )
