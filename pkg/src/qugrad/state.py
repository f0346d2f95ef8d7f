"""Dense statevector core: states, observables, and the primitive operations.

Qubit ordering convention: qubit 0 is the most significant bit of the basis
index, so for two qubits |10> sits at index 2. Gate application walks the
amplitude array with strided index arithmetic (see ``kernels``); it never
builds the 2^M embedded matrix, which is the oracle module's job.

A StateVector is mutable and belongs to one thread of execution at a time;
operations are deterministic with no hidden shared state, so distinct
states may be processed concurrently. Observables and gate matrices are
immutable after construction and safe to share.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityError, GateValidationError

DEFAULT_MAX_QUBITS = 24

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass
class StateVector:
    """Complex amplitudes over the 2^num_qubits computational basis states.

    ``normalized`` is False for states produced by a Hermitian (non-unitary)
    application; normalization is never silently reimposed.
    """

    num_qubits: int
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"amplitude array has length {self.amplitudes.size}, "
                f"expected {1 << self.num_qubits} for {self.num_qubits} qubit(s)"
            )

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy(), self.normalized)

    def squared_norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


class Observable:
    """Hermitian operator, stored either dense or as a weighted Pauli-string sum."""

    def __init__(self, num_qubits: int, *, dense=None, terms=None):
        if (dense is None) == (terms is None):
            raise ValueError("provide exactly one of dense= or terms=")
        self.num_qubits = int(num_qubits)
        self._dense = dense
        self.terms = terms

    @classmethod
    def from_dense(cls, matrix) -> "Observable":
        matrix = np.asarray(matrix, dtype=np.complex128)
        dim = matrix.shape[0]
        if matrix.ndim != 2 or matrix.shape != (dim, dim) or dim & (dim - 1) or dim < 2:
            raise ValueError(f"dense observable must be square power-of-2 sized, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-12:
            raise GateValidationError("dense observable is not Hermitian within 1e-12")
        return cls(dim.bit_length() - 1, dense=matrix)

    @classmethod
    def from_paulis(cls, terms, num_qubits: int | None = None) -> "Observable":
        """Build from ``[(pauli_string, weight), ...]``; weights must be real."""
        terms = list(terms)
        if not terms:
            raise ValueError("observable needs at least one Pauli term")
        if num_qubits is None:
            num_qubits = len(terms[0][0])
        cleaned = []
        for string, weight in terms:
            string = string.upper()
            if len(string) != num_qubits or any(ch not in PAULI for ch in string):
                raise ValueError(f"bad Pauli string {string!r} for {num_qubits} qubit(s)")
            w = complex(weight)
            if abs(w.imag) > 0:
                raise ValueError(f"Pauli weight must be real, got {weight!r}")
            cleaned.append((string, w.real))
        return cls(num_qubits, terms=cleaned)

    @classmethod
    def identity(cls, num_qubits: int) -> "Observable":
        return cls.from_paulis([("I" * num_qubits, 1.0)])

    def apply_to(self, amps: np.ndarray) -> np.ndarray:
        """Return A @ amps as a fresh array."""
        if self._dense is not None:
            return self._dense @ amps
        out = np.zeros_like(amps)
        n = self.num_qubits
        for string, weight in self.terms:
            tmp = amps.copy()
            for q, ch in enumerate(string):
                if ch != "I":
                    kernels.apply_1q(tmp, PAULI[ch], n - 1 - q)
            out += weight * tmp
        return out

    def to_dense(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense.copy()
        dim = 1 << self.num_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for string, weight in self.terms:
            acc = np.array([[1.0 + 0j]])
            for ch in string:
                acc = np.kron(acc, PAULI[ch])
            out += weight * acc
        return out


def new_zero_state(num_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """|0...0> on ``num_qubits`` qubits; capped to bound memory."""
    if not 1 <= num_qubits <= max_qubits:
        raise CapacityError(
            f"num_qubits must be in [1, {max_qubits}], got {num_qubits}"
        )
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_targets(num_qubits: int, targets) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(targets) not in (1, 2):
        raise ValueError(f"gates act on 1 or 2 qubits, got targets {targets}")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate targets {targets}")
    for t in targets:
        if not 0 <= t < num_qubits:
            raise ValueError(f"target {t} out of range for {num_qubits} qubit(s)")
    return targets


def _apply_matrix_inplace(amps: np.ndarray, matrix: np.ndarray,
                          targets: tuple[int, ...], num_qubits: int) -> None:
    """Strided application of a (not necessarily unitary) 1- or 2-qubit matrix."""
    if len(targets) == 1:
        kernels.apply_1q(amps, matrix, num_qubits - 1 - targets[0])
    else:
        kernels.apply_2q(amps, matrix,
                         num_qubits - 1 - targets[0], num_qubits - 1 - targets[1])


def apply_gate(state: StateVector, gate_matrix, targets) -> StateVector:
    """Apply a unitary on the target qubits (identity elsewhere); returns a new state."""
    targets = _check_targets(state.num_qubits, targets)
    matrix = np.ascontiguousarray(gate_matrix, dtype=np.complex128)
    dim = 1 << len(targets)
    if matrix.shape != (dim, dim):
        raise ValueError(f"matrix shape {matrix.shape} does not match {len(targets)} target(s)")
    defect = np.max(np.abs(matrix.conj().T @ matrix - np.eye(dim)))
    if defect > 1e-10:
        raise GateValidationError(f"matrix is not unitary (U†U defect {defect:.3e})")
    out = state.copy()
    _apply_matrix_inplace(out.amplitudes, matrix, targets, state.num_qubits)
    return out


def apply_hermitian(state: StateVector, observable: Observable) -> StateVector:
    """Apply a Hermitian observable; the result is flagged unnormalized."""
    if observable.num_qubits != state.num_qubits:
        raise ValueError(
            f"observable acts on {observable.num_qubits} qubit(s), state has {state.num_qubits}"
        )
    return StateVector(state.num_qubits, observable.apply_to(state.amplitudes),
                       normalized=False)


def inner_product(bra: StateVector, ket: StateVector) -> complex:
    """Sum of conj(bra_i) * ket_i."""
    if bra.num_qubits != ket.num_qubits:
        raise ValueError("states have different qubit counts")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def expectation(state: StateVector, observable: Observable) -> float:
    """Re <psi|A|psi>; asserts the raw value is real to 1e-10 before discarding."""
    if observable.num_qubits != state.num_qubits:
        raise ValueError(
            f"observable acts on {observable.num_qubits} qubit(s), state has {state.num_qubits}"
        )
    if not state.normalized:
        raise ValueError("expectation requires a normalized state")
    raw = complex(np.vdot(state.amplitudes, observable.apply_to(state.amplitudes)))
    if abs(raw.imag) > 1e-10:
        raise GateValidationError(
            f"expectation has imaginary residue {raw.imag:.3e}; observable not Hermitian?"
        )
    return raw.real
