"""Circuit construction, symbol binding, and expectation evaluation."""
import math

import numpy as np
import pytest

from qugrad import Circuit, Observable, evaluate, new_zero_state
from qugrad.oracle import dense_circuit_unitary
from qugrad.verify import random_circuit

Z = Observable.from_paulis([("Z", 1.0)])


class TestConstruction:
    def test_unknown_gate(self):
        with pytest.raises(ValueError):
            Circuit(1).add("NOPE", (0,))

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            Circuit(2).add("CNOT", (0,))

    def test_target_out_of_range(self):
        with pytest.raises(ValueError):
            Circuit(1).add("X", (1,))

    def test_duplicate_targets(self):
        with pytest.raises(ValueError):
            Circuit(2).add("XX", (0, 0), 0.5)

    def test_undeclared_symbol(self):
        with pytest.raises(ValueError):
            Circuit(1).add("RY", (0,), "theta")

    def test_param_count(self):
        with pytest.raises(ValueError):
            Circuit(2).add("CAN", (0, 1), 0.1, 0.2)

    def test_non_finite_literal(self):
        with pytest.raises(ValueError):
            Circuit(1).add("RY", (0,), math.inf)

    def test_symbol_shared_across_gates(self):
        c = Circuit(2).symbol("a", 0.3)
        c.add("RY", (0,), "a").add("RX", (1,), "a").add("RZ", (0,), 0.7)
        assert c.occurrences("a") == [(0, 0), (1, 0)]
        assert c.symbol_names() == ["a"]

    def test_resolved_params_with_overrides(self):
        c = Circuit(1).symbol("a", 0.3).add("RY", (0,), "a")
        assert c.resolved_params(0) == (0.3,)
        assert c.resolved_params(0, values={"a": 1.0}) == (1.0,)
        assert c.resolved_params(0, overrides={(0, 0): 2.0}) == (2.0,)


class TestEvaluate:
    def test_empty_circuit(self):
        assert evaluate(Circuit(1), new_zero_state(1), Z) == pytest.approx(1.0)

    def test_ry_cosine(self):
        for theta in (0.0, math.pi / 3, 1.7, -2.2):
            c = Circuit(1).symbol("t", theta).add("RY", (0,), "t")
            assert evaluate(c, new_zero_state(1), Z) == pytest.approx(
                math.cos(theta), abs=1e-12)

    def test_hadamard_symmetry(self):
        c = Circuit(1).add("H", (0,))
        assert evaluate(c, new_zero_state(1), Z) == pytest.approx(0.0, abs=1e-15)

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(Circuit(2), new_zero_state(1), Z)


class TestOracleSelfConsistency:
    def test_statevector_matches_dense_unitary(self):
        # independent paths: strided kernels vs Kronecker-embedded product
        rng = np.random.default_rng(99)
        for _ in range(30):
            circ, obs = random_circuit(rng, include_cr_drive=True)
            init = new_zero_state(circ.num_qubits)
            amps = init.amplitudes.copy()
            from qugrad.circuit import run_circuit
            run_circuit(circ, amps)
            want = dense_circuit_unitary(circ) @ init.amplitudes
            assert np.max(np.abs(amps - want)) < 1e-12
