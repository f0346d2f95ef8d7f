"""Middle-out adjoint engine, the stored-intermediate reference, and counters."""
import math

import numpy as np
import pytest

from qugrad import (CapacityError, Circuit, Observable,
                    UnsupportedGeneratorError, all_shift_gradients,
                    backprop_reference_gradients, evaluate, generator_of,
                    middle_out_gradients, new_zero_state)
from qugrad.oracle import dense_circuit_unitary, finite_difference
from qugrad.verify import fd_symbol_gradient, grad_tolerance, random_circuit

Z1 = Observable.from_paulis([("Z", 1.0)])


class TestMiddleOut:
    def test_ry_analytic(self):
        c = Circuit(1).symbol("t", math.pi / 2).add("RY", (0,), "t")
        report = middle_out_gradients(c, new_zero_state(1), Z1)
        assert report.gradients[0] == pytest.approx(-1.0, abs=1e-12)

    def test_identity_observable_gives_zero(self):
        rng = np.random.default_rng(61)
        for _ in range(5):
            circ, _ = random_circuit(rng, include_cr_drive=True)
            obs = Observable.identity(circ.num_qubits)
            report = middle_out_gradients(circ, new_zero_state(circ.num_qubits), obs)
            assert np.allclose(report.gradients, 0.0, atol=1e-12)

    def test_cr_with_drive_matches_oracle(self):
        # works where the bare shift rule cannot (4 distinct eigenphases)
        obs = Observable.from_paulis([("IZ", 1.0), ("XY", 0.3)])
        init = new_zero_state(2)
        for s, b, c in [(0.6, 1.0, 0.7), (1.3, 0.5, -1.2), (0.2, 1.8, 1.9)]:
            circ = Circuit(2).symbol("s", s).add("CR", (0, 1), "s", b, c)
            g = middle_out_gradients(circ, init, obs).gradients[0]

            def f(x):
                cc = Circuit(2).symbol("s", x).add("CR", (0, 1), "s", b, c)
                return evaluate(cc, init, obs)

            assert abs(g - finite_difference(f, s)) < 1e-8

    def test_initial_state_unmodified(self):
        c = Circuit(1).symbol("t", 0.4).add("RY", (0,), "t")
        init = new_zero_state(1)
        before = init.amplitudes.copy()
        middle_out_gradients(c, init, Z1)
        assert np.array_equal(init.amplitudes, before)

    def test_counters_on_fully_parameterized_circuit(self):
        c = Circuit(2).symbol("a", 0.3).symbol("b", 0.8).symbol("d", -0.4)
        c.add("RY", (0,), "a").add("XX", (0, 1), "b").add("RX", (1,), "d")
        report = middle_out_gradients(c, new_zero_state(2),
                                      Observable.from_paulis([("ZZ", 1.0)]))
        n = 3
        counters = report.counters
        assert counters.gate_applications == 4 * n - 2
        assert counters.generator_applications == n
        assert counters.inner_products == n
        assert counters.live_states <= 3

    def test_counters_bounds_on_random_circuits(self):
        rng = np.random.default_rng(62)
        for _ in range(20):
            circ, obs = random_circuit(rng, include_cr_drive=True)
            report = middle_out_gradients(circ, new_zero_state(circ.num_qubits), obs)
            n_ops = len(circ.ops)
            n_param = sum(any(isinstance(p, str) for p in op.params)
                          for op in circ.ops)
            counters = report.counters
            assert counters.gate_applications <= 4 * n_ops
            assert counters.generator_applications == n_param
            assert counters.inner_products == n_param
            assert counters.live_states <= 3

    def test_two_symbols_in_one_gate_rejected(self):
        c = Circuit(2).symbol("a", 0.1).symbol("b", 0.2)
        c.add("CAN", (0, 1), "a", "b", 0.3)
        with pytest.raises(UnsupportedGeneratorError):
            middle_out_gradients(c, new_zero_state(2), Observable.identity(2))

    def test_symbol_on_non_exponential_slot_rejected(self):
        c = Circuit(2).symbol("b", 1.0).add("CR", (0, 1), 0.5, "b", 0.0)
        with pytest.raises(UnsupportedGeneratorError):
            middle_out_gradients(c, new_zero_state(2), Observable.identity(2))

    def test_shift_concordance(self):
        # circuits from the shift-differentiable set: engines agree to 1e-9
        rng = np.random.default_rng(63)
        for _ in range(20):
            circ, obs = random_circuit(rng, include_cr_drive=False)
            init = new_zero_state(circ.num_qubits)
            mid = middle_out_gradients(circ, init, obs)
            shift = all_shift_gradients(circ, init, obs)
            assert np.allclose(mid.gradients, shift.gradients, atol=1e-9)

    def test_hermitian_conjugate_assembly(self):
        # df/dtheta_k assembled as <B_k|(-i a G)|F_k> + h.c. from dense
        # oracle products matches the engine to 1e-12
        c = Circuit(2).symbol("a", 0.45).symbol("b", -0.8)
        c.add("RY", (0,), "a").add("CNOT", (0, 1)).add("XX", (0, 1), "b")
        obs = Observable.from_paulis([("ZZ", 1.0), ("XI", 0.5)])
        init = new_zero_state(2)
        report = middle_out_gradients(c, init, obs)

        embedded = [dense_circuit_unitary(_single_op_circuit(c, k)) for k in range(3)]
        amat = obs.to_dense()
        psi = init.amplitudes
        full = embedded[2] @ embedded[1] @ embedded[0]
        for sym, k, slot in [("a", 0, 0), ("b", 2, 0)]:
            spec = generator_of(c.ops[k].gate, slot, c.resolved_params(k))
            from qugrad.oracle import embed_matrix
            G = embed_matrix(spec.generator, c.ops[k].targets, 2)
            fk = psi.copy()
            for j in range(k + 1):
                fk = embedded[j] @ fk
            bk = amat @ full @ psi
            for j in range(len(c.ops) - 1, k, -1):
                bk = embedded[j].conj().T @ bk
            z = np.vdot(bk, (-1j * spec.scale * G) @ fk)
            expected = 2 * z.real  # z + h.c.
            got = report.as_dict()[sym]
            assert abs(got - expected) < 1e-12


def _single_op_circuit(circuit, k):
    out = Circuit(circuit.num_qubits, circuit.symbols)
    out.ops = [circuit.ops[k]]
    return out


class TestBackpropReference:
    def test_single_gate_engines_equal(self):
        c = Circuit(1).symbol("t", 1.1).add("RX", (0,), "t")
        init = new_zero_state(1)
        mid = middle_out_gradients(c, init, Z1)
        ref = backprop_reference_gradients(c, init, Z1)
        assert mid.gradients == pytest.approx(ref.gradients, abs=1e-15)

    def test_random_circuit_agreement(self):
        rng = np.random.default_rng(64)
        for _ in range(10):
            circ, obs = random_circuit(rng, include_cr_drive=True, max_depth=8)
            init = new_zero_state(circ.num_qubits)
            mid = middle_out_gradients(circ, init, obs)
            ref = backprop_reference_gradients(circ, init, obs)
            assert np.allclose(mid.gradients, ref.gradients, atol=1e-10)

    def test_memory_contrast_twenty_gates(self):
        c = Circuit(3)
        for k in range(20):
            c.symbol(f"t{k}", 0.05 * (k + 1))
            c.add(("RY", "RX", "RZ")[k % 3], (k % 3,), f"t{k}")
        obs = Observable.from_paulis([("ZZZ", 1.0)])
        init = new_zero_state(3)
        ref = backprop_reference_gradients(c, init, obs)
        mid = middle_out_gradients(c, init, obs)
        assert ref.counters.live_states == 22  # N + 2
        assert mid.counters.live_states <= 3
        assert np.allclose(ref.gradients, mid.gradients, atol=1e-10)

    def test_capacity_error(self):
        c = Circuit(2).symbol("t", 0.3)
        for _ in range(5):
            c.add("RY", (0,), "t")
        with pytest.raises(CapacityError):
            backprop_reference_gradients(c, new_zero_state(2), Observable.identity(2),
                                         max_total_amplitudes=16)

    def test_gradients_match_finite_differences(self):
        rng = np.random.default_rng(65)
        for _ in range(10):
            circ, obs = random_circuit(rng, include_cr_drive=True)
            init = new_zero_state(circ.num_qubits)
            ref = backprop_reference_gradients(circ, init, obs)
            for sym, g in zip(ref.symbols, ref.gradients):
                assert abs(g - fd_symbol_gradient(circ, init, obs, sym)) < grad_tolerance(g)
