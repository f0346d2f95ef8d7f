"""Classical adjoint gradients: every parameter from one synchronized sweep.

For a circuit U_N ... U_1 with U_k = exp(-i a_k theta_k G_k), the derivative
with respect to theta_k is -2 a_k Im <F_k| G_k |B_k>, where F_k is the input
propagated forward through gate k and B_k is the fully propagated state with
the observable applied and gates N..k+1 unapplied. (Writing the derivative
as <B_k|(-i a_k G_k)|F_k> plus its Hermitian conjugate makes the sign
convention explicit.) Both recursions advance
one gate application per step, so the whole gradient costs at most 4N gate
applications, N generator applications, and N inner products while holding
three working states (the input itself is never touched).

No two-eigenvalue restriction applies here: any Hermitian generator works,
which is how gates like the full cross-resonance gate (four distinct
eigenphases) get exact gradients on classical hardware.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .errors import CapacityError, UnsupportedGeneratorError
from .gates import generator_of, standard_gate
from .kernels import matrix_element_1q, matrix_element_2q
from .shift import GradientReport
from .state import Observable, StateVector, _apply_matrix_inplace

DEFAULT_MAX_TOTAL_AMPLITUDES = 1 << 26  # 1 GiB of complex128 for backprop storage


@dataclass
class MiddleOutCounters:
    """Operation counts for one adjoint run.

    ``live_states`` is the peak number of simultaneously allocated working
    statevector buffers, not counting the caller's preserved input.
    """

    gate_applications: int = 0
    generator_applications: int = 0
    inner_products: int = 0
    live_states: int = 0


class _LiveTracker:
    def __init__(self):
        self.live = 0
        self.peak = 0

    def alloc(self, n=1):
        self.live += n
        self.peak = max(self.peak, self.live)

    def release(self, n=1):
        self.live -= n


def _parameterized_slots(circuit: Circuit) -> list[tuple[int, int, str]]:
    """(op index, slot, symbol) for each parameterized gate instance.

    Each gate instance may bind at most one symbol; tied symbols across
    instances are fine and sum into the shared slot.
    """
    out = []
    for i, op in enumerate(circuit.ops):
        symbolic = [(j, p) for j, p in enumerate(op.params) if isinstance(p, str)]
        if len(symbolic) > 1:
            raise UnsupportedGeneratorError(
                f"gate {op.gate} at position {i} binds {len(symbolic)} symbols; "
                "adjoint engines support one parameter occurrence per gate instance"
            )
        if symbolic:
            out.append((i, symbolic[0][0], symbolic[0][1]))
    return out


def _op_matrix(circuit: Circuit, i: int) -> np.ndarray:
    return standard_gate(circuit.ops[i].gate, circuit.resolved_params(i))


def middle_out_gradients(circuit: Circuit, initial: StateVector,
                         observable: Observable) -> GradientReport:
    """All symbol gradients from one forward sweep and one reversed recursion."""
    if initial.num_qubits != circuit.num_qubits:
        raise ValueError("initial state does not match circuit width")
    if observable.num_qubits != circuit.num_qubits:
        raise ValueError("observable does not match circuit width")
    counters = MiddleOutCounters()
    tracker = _LiveTracker()
    param_slots = {i: (slot, sym) for i, slot, sym in _parameterized_slots(circuit)}
    n_ops = len(circuit.ops)
    grads = {name: 0.0 for name in circuit.symbol_names()}

    # Build B_1 = U_2^dag ... U_N^dag A U_N ... U_1 |psi>.
    forward = initial.amplitudes.copy()
    tracker.alloc()
    for i in range(n_ops):
        _apply_matrix_inplace(forward, _op_matrix(circuit, i),
                              circuit.ops[i].targets, circuit.num_qubits)
        counters.gate_applications += 1
    tracker.alloc()  # observable output buffer
    back = observable.apply_to(forward)
    del forward
    tracker.release()
    for i in range(n_ops - 1, 0, -1):
        _apply_matrix_inplace(back, _op_matrix(circuit, i).conj().T,
                              circuit.ops[i].targets, circuit.num_qubits)
        counters.gate_applications += 1

    fwd = initial.amplitudes.copy()
    tracker.alloc()
    scratch = None
    for k in range(n_ops):
        op = circuit.ops[k]
        _apply_matrix_inplace(fwd, _op_matrix(circuit, k), op.targets,
                              circuit.num_qubits)
        counters.gate_applications += 1
        if k in param_slots:
            slot, sym = param_slots[k]
            spec = generator_of(op.gate, slot, circuit.resolved_params(k))
            if scratch is None:
                scratch = np.empty_like(fwd)
                tracker.alloc()
            # G|F_k> materialized by the same strided traversal as gates;
            # G is Hermitian, not unitary, so this state is unnormalized.
            np.copyto(scratch, fwd)
            _apply_matrix_inplace(scratch, spec.generator, op.targets,
                                  circuit.num_qubits)
            counters.generator_applications += 1
            # sign convention pairs with this orientation: <F_k| G_k |B_k>
            val = complex(np.vdot(scratch, back))
            counters.inner_products += 1
            grads[sym] += -2.0 * spec.scale * val.imag
        if k + 1 < n_ops:
            _apply_matrix_inplace(back, _op_matrix(circuit, k + 1),
                                  circuit.ops[k + 1].targets, circuit.num_qubits)
            counters.gate_applications += 1

    counters.live_states = tracker.peak
    names = circuit.symbol_names()
    return GradientReport([grads[n] for n in names], names,
                          expectation_evaluations=0,
                          gate_applications=counters.gate_applications,
                          engine="middleout", counters=counters)


def backprop_reference_gradients(circuit: Circuit, initial: StateVector,
                                 observable: Observable,
                                 max_total_amplitudes: int = DEFAULT_MAX_TOTAL_AMPLITUDES
                                 ) -> GradientReport:
    """Stored-intermediate chain-rule gradients; the memory-hungry cross-check.

    Keeps every forward state alive (N+2 peak live states against the
    adjoint engine's 3), which is the point: it documents the memory
    contrast while providing an independent path to identical gradients.
    """
    if initial.num_qubits != circuit.num_qubits:
        raise ValueError("initial state does not match circuit width")
    if observable.num_qubits != circuit.num_qubits:
        raise ValueError("observable does not match circuit width")
    n_ops = len(circuit.ops)
    dim = 1 << circuit.num_qubits
    if (n_ops + 2) * dim > max_total_amplitudes:
        raise CapacityError(
            f"backprop would hold {(n_ops + 2) * dim} amplitudes, "
            f"cap is {max_total_amplitudes}"
        )
    counters = MiddleOutCounters()
    tracker = _LiveTracker()
    param_slots = {i: (slot, sym) for i, slot, sym in _parameterized_slots(circuit)}
    grads = {name: 0.0 for name in circuit.symbol_names()}

    states = [initial.amplitudes.copy()]
    tracker.alloc()
    for i in range(n_ops):
        nxt = states[-1].copy()
        tracker.alloc()
        _apply_matrix_inplace(nxt, _op_matrix(circuit, i),
                              circuit.ops[i].targets, circuit.num_qubits)
        counters.gate_applications += 1
        states.append(nxt)
    lam = observable.apply_to(states[-1])
    tracker.alloc()

    nq = circuit.num_qubits
    for k in range(n_ops - 1, -1, -1):
        op = circuit.ops[k]
        if k in param_slots:
            slot, sym = param_slots[k]
            spec = generator_of(op.gate, slot, circuit.resolved_params(k))
            # matrix element <psi_{k+1}| G |lam> without materializing G|lam>;
            # same orientation as the middle-out engine's -2 a Im <F|G|B>
            if len(op.targets) == 1:
                val = matrix_element_1q(states[k + 1], spec.generator,
                                        nq - 1 - op.targets[0], lam)
            else:
                val = matrix_element_2q(states[k + 1], spec.generator,
                                        nq - 1 - op.targets[0],
                                        nq - 1 - op.targets[1], lam)
            counters.generator_applications += 1
            counters.inner_products += 1
            grads[sym] += -2.0 * spec.scale * complex(val).imag
        _apply_matrix_inplace(lam, _op_matrix(circuit, k).conj().T,
                              op.targets, circuit.num_qubits)
        counters.gate_applications += 1

    counters.live_states = tracker.peak
    names = circuit.symbol_names()
    return GradientReport([grads[n] for n in names], names,
                          expectation_evaluations=0,
                          gate_applications=counters.gate_applications,
                          engine="backprop", counters=counters)
