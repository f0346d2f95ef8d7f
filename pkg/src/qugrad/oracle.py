"""Independent reference implementations used only for validation.

Nothing in here shares gate-application code with the statevector core: the
dense circuit unitary is assembled by explicit Kronecker-embedding index
arithmetic, deliberately duplicated so the equivalence tests mean something.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circuit import Circuit
from .errors import CapacityError, OracleError
from .gates import standard_gate

ORACLE_MAX_QUBITS = 10


@dataclass(frozen=True)
class FiniteDiffConfig:
    """Central finite differences; default h balances O(h^2) truncation
    against double-precision cancellation."""

    step: float = 1e-5
    scheme: str = "central"

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("finite-difference step must be positive")
        if self.scheme != "central":
            raise ValueError(f"unsupported scheme {self.scheme!r}")


def finite_difference(f, theta: float, cfg: FiniteDiffConfig | None = None) -> float:
    """(f(theta+h) - f(theta-h)) / 2h."""
    cfg = cfg or FiniteDiffConfig()
    h = cfg.step
    hi, lo = f(theta + h), f(theta - h)
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise OracleError(f"non-finite function values at {theta} +/- {h}")
    return (hi - lo) / (2 * h)


def embed_matrix(gate_matrix: np.ndarray, targets, num_qubits: int) -> np.ndarray:
    """Full 2^M x 2^M matrix acting as the gate on the targets, identity elsewhere.

    Qubit 0 is the most significant bit of the basis index, consistent with
    the statevector core's documented ordering.
    """
    targets = tuple(targets)
    k = len(targets)
    dim = 1 << num_qubits
    full = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        bits = [(i >> (num_qubits - 1 - q)) & 1 for q in range(num_qubits)]
        gi = 0
        for t in targets:
            gi = (gi << 1) | bits[t]
        for gj in range(1 << k):
            jbits = list(bits)
            for idx, t in enumerate(targets):
                jbits[t] = (gj >> (k - 1 - idx)) & 1
            j = 0
            for b in jbits:
                j = (j << 1) | b
            full[i, j] = gate_matrix[gi, gj]
    return full


def dense_circuit_unitary(circuit: Circuit,
                          values: dict[str, float] | None = None) -> np.ndarray:
    """Product of Kronecker-embedded gate matrices in circuit order."""
    if circuit.num_qubits > ORACLE_MAX_QUBITS:
        raise CapacityError(
            f"dense unitary capped at {ORACLE_MAX_QUBITS} qubits, "
            f"got {circuit.num_qubits}"
        )
    dim = 1 << circuit.num_qubits
    total = np.eye(dim, dtype=complex)
    for i, op in enumerate(circuit.ops):
        matrix = standard_gate(op.gate, circuit.resolved_params(i, values))
        total = embed_matrix(matrix, op.targets, circuit.num_qubits) @ total
    return total


def dense_expm(A) -> np.ndarray:
    """Matrix exponential via scipy's scaling-and-squaring.

    Deliberately a different algorithm from the gate library's closed forms
    and eigendecompositions, so exponential cross-checks are two-route.
    """
    return scipy.linalg.expm(np.asarray(A, dtype=complex))


def equal_up_to_phase(U, V, tol: float) -> bool:
    """True iff U = e^{i phi} V entrywise within ``tol``, phi from arg Tr(V†U)."""
    return phase_residual(U, V) < tol


def phase_residual(U, V) -> float:
    """max |U - e^{i phi} V| with phi = arg Tr(V†U); inf when the phase is undefined."""
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {V.shape}")
    tr = np.trace(V.conj().T @ U)
    if abs(tr) < 1e-12:
        return math.inf
    return float(np.max(np.abs(U - (tr / abs(tr)) * V)))


__all__ = [
    "FiniteDiffConfig",
    "finite_difference",
    "embed_matrix",
    "dense_circuit_unitary",
    "dense_expm",
    "equal_up_to_phase",
    "phase_residual",
    "ORACLE_MAX_QUBITS",
]
