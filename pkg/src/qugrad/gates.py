"""Gate library: matrices, generators, shift constants, and the Euler form.

Every parameterized gate here depends on each of its parameters as
exp(-i a theta G) with Hermitian G (up to a parameter-dependent global
phase for the Pauli-power convention, which expectation values ignore).
Closed forms are used wherever the generator squares to a scalar, because
they are exact at double precision; the canonical gate uses a Hermitian
eigendecomposition of its summed Hamiltonian.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import GateValidationError, UnsupportedGeneratorError
from .state import PAULI

I2 = PAULI["I"]
X = PAULI["X"]
Y = PAULI["Y"]
Z = PAULI["Z"]

H_GATE = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S_GATE = np.array([[1, 0], [0, 1j]], dtype=complex)
CNOT_GATE = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
# Magic-basis change: Kronecker products of 1-qubit unitaries become
# orthogonal matrices in this basis. Kept as sqrt(2)*M with exact integer
# entries; trace arithmetic divides by 2 so no irrational rounding leaks in.
MAGIC_TIMES_SQRT2 = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=complex
)
MAGIC = MAGIC_TIMES_SQRT2 / math.sqrt(2)

EIGENVALUE_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class GeneratorSpec:
    """Hermitian generator G with exponent scale a, so U(theta) ~ exp(-i a theta G).

    ``eigenvalues`` are the clustered distinct eigenvalues in ascending order.
    ``shift_constant`` (r) and ``additive_shift`` (s) exist only when there are
    exactly two clusters: r = (a/2)(e1 - e0), s = (e1 + e0)/2. The additive
    shift is stored purely to explain global-phase gaps in tests; it is never
    applied to a matrix.
    """

    generator: np.ndarray
    scale: float
    eigenvalues: tuple[float, ...]
    shift_constant: float | None
    additive_shift: float | None


@dataclass(frozen=True)
class GateDef:
    name: str
    arity: int
    parameter_names: tuple[str, ...]
    matrix_builder: Callable[..., np.ndarray]

    @property
    def num_params(self) -> int:
        return len(self.parameter_names)

    def generator_spec(self, param_index: int, params=None) -> "GeneratorSpec":
        """Per-parameter generator analysis; see ``generator_of``."""
        return generator_of(self.name, param_index, params)


def _rx(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta):
    return np.array(
        [[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]], dtype=complex
    )


def _pauli_power(P, t):
    """Principal power P^t = e^{i pi t/2} (cos(pi t/2) I - i sin(pi t/2) P)."""
    return np.exp(1j * np.pi * t / 2) * (
        math.cos(np.pi * t / 2) * I2 - 1j * math.sin(np.pi * t / 2) * P
    )


def _two_pauli(P, t):
    """exp(-i (pi/2) t P⊗P), exact closed form since (P⊗P)^2 = I."""
    PP = np.kron(P, P)
    return math.cos(np.pi * t / 2) * np.eye(4) - 1j * math.sin(np.pi * t / 2) * PP


def hermitian_expm(H, coeff) -> np.ndarray:
    """exp(coeff * H) for Hermitian H via eigendecomposition."""
    w, v = np.linalg.eigh(H)
    return (v * np.exp(coeff * w)) @ v.conj().T


def _can(tx, ty, tz):
    H = tx * np.kron(X, X) + ty * np.kron(Y, Y) + tz * np.kron(Z, Z)
    return hermitian_expm(H, -1j * np.pi / 2)


def cr_generator(b, c) -> np.ndarray:
    """Cross-resonance Hamiltonian X⊗I - b Z⊗X + c I⊗X."""
    return np.kron(X, I2) - b * np.kron(Z, X) + c * np.kron(I2, X)


def _cr(s, b, c):
    """exp(-i (pi/2) s (X⊗I - b Z⊗X + c I⊗X)).

    Built from the commuting split: the I⊗X drive commutes with the rest,
    and (X⊗I - b Z⊗X)^2 = (1+b^2) I gives an exact Euler closed form. This
    keeps s = 0 exactly the identity, which the magic-trace coordinate
    extraction needs at its 1e-8 tolerance.
    """
    kappa = math.sqrt(1 + b * b)
    K = np.kron(X, I2) - b * np.kron(Z, X)
    th = np.pi / 2 * kappa * s
    main = math.cos(th) * np.eye(4) - 1j * (math.sin(th) / kappa) * K
    phc = np.pi / 2 * c * s
    drive = math.cos(phc) * np.eye(4) - 1j * math.sin(phc) * np.kron(I2, X)
    return drive @ main


GATES: dict[str, GateDef] = {
    "RX": GateDef("RX", 1, ("theta",), _rx),
    "RY": GateDef("RY", 1, ("theta",), _ry),
    "RZ": GateDef("RZ", 1, ("theta",), _rz),
    "XPow": GateDef("XPow", 1, ("t",), lambda t: _pauli_power(X, t)),
    "YPow": GateDef("YPow", 1, ("t",), lambda t: _pauli_power(Y, t)),
    "ZPow": GateDef("ZPow", 1, ("t",), lambda t: _pauli_power(Z, t)),
    "H": GateDef("H", 1, (), lambda: H_GATE.copy()),
    "S": GateDef("S", 1, (), lambda: S_GATE.copy()),
    "X": GateDef("X", 1, (), lambda: X.copy()),
    "CNOT": GateDef("CNOT", 2, (), lambda: CNOT_GATE.copy()),
    "XX": GateDef("XX", 2, ("t",), lambda t: _two_pauli(X, t)),
    "YY": GateDef("YY", 2, ("t",), lambda t: _two_pauli(Y, t)),
    "ZZ": GateDef("ZZ", 2, ("t",), lambda t: _two_pauli(Z, t)),
    "CAN": GateDef("CAN", 2, ("tx", "ty", "tz"), _can),
    "CR": GateDef("CR", 2, ("s", "b", "c"), _cr),
    "MAGIC": GateDef("MAGIC", 2, (), lambda: MAGIC.copy()),
}


def standard_gate(name: str, params=()) -> np.ndarray:
    """Unitary matrix for a named gate at the given parameter values."""
    if name not in GATES:
        raise ValueError(f"unknown gate {name!r}")
    gate = GATES[name]
    params = tuple(float(p) for p in params)
    if len(params) != gate.num_params:
        raise ValueError(
            f"gate {name} takes {gate.num_params} parameter(s), got {len(params)}"
        )
    return gate.matrix_builder(*params)


def cluster_eigenvalues(values, tol: float = EIGENVALUE_CLUSTER_TOL) -> tuple[float, ...]:
    """Ascending distinct eigenvalues; values closer than ``tol`` merge into one."""
    values = np.sort(np.asarray(values, dtype=float))
    clusters = [[values[0]]]
    for v in values[1:]:
        if v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return tuple(float(np.mean(c)) for c in clusters)


def analyze_generator(G, scale: float,
                      tol: float = EIGENVALUE_CLUSTER_TOL) -> GeneratorSpec:
    """Cluster the generator spectrum and derive the shift constant if possible."""
    G = np.asarray(G, dtype=complex)
    if np.max(np.abs(G - G.conj().T)) > 1e-10:
        raise GateValidationError("generator is not Hermitian within 1e-10")
    eigs = cluster_eigenvalues(np.linalg.eigvalsh(G), tol)
    if len(eigs) == 2:
        e0, e1 = eigs
        r = scale / 2 * (e1 - e0)
        s = (e1 + e0) / 2
    else:
        r = s = None
    return GeneratorSpec(G, float(scale), eigs, r, s)


# Per-parameter (generator-matrix factory, scale). The factory takes the
# gate's full parameter tuple; most generators ignore it.
_GENERATOR_TABLE: dict[tuple[str, int], tuple[Callable, float]] = {
    ("RX", 0): (lambda p: X, 0.5),
    ("RY", 0): (lambda p: Y, 0.5),
    ("RZ", 0): (lambda p: Z, 0.5),
    ("XPow", 0): (lambda p: X, np.pi / 2),
    ("YPow", 0): (lambda p: Y, np.pi / 2),
    ("ZPow", 0): (lambda p: Z, np.pi / 2),
    ("XX", 0): (lambda p: np.kron(X, X), np.pi / 2),
    ("YY", 0): (lambda p: np.kron(Y, Y), np.pi / 2),
    ("ZZ", 0): (lambda p: np.kron(Z, Z), np.pi / 2),
    # The canonical Hamiltonian terms all commute, so each axis is an
    # exponential factor of its own and shift-differentiates independently.
    ("CAN", 0): (lambda p: np.kron(X, X), np.pi / 2),
    ("CAN", 1): (lambda p: np.kron(Y, Y), np.pi / 2),
    ("CAN", 2): (lambda p: np.kron(Z, Z), np.pi / 2),
    ("CR", 0): (lambda p: cr_generator(p[1], p[2]), np.pi / 2),
}


def generator_of(name: str, param_index: int, params=None) -> GeneratorSpec:
    """Generator analysis for one parameter of a named gate.

    ``params`` supplies the gate's full parameter values and is required when
    the generator depends on the other parameters (CR's generator depends on
    b and c). Raises UnsupportedGeneratorError when the dependence is not of
    exponential form (CR's b and c parameters).
    """
    if name not in GATES:
        raise ValueError(f"unknown gate {name!r}")
    gate = GATES[name]
    if not 0 <= param_index < gate.num_params:
        raise ValueError(
            f"gate {name} has {gate.num_params} parameter(s); index {param_index} invalid"
        )
    key = (name, param_index)
    if key not in _GENERATOR_TABLE:
        raise UnsupportedGeneratorError(
            f"parameter {gate.parameter_names[param_index]!r} of gate {name} does not "
            f"enter as exp(-i a theta G)"
        )
    factory, scale = _GENERATOR_TABLE[key]
    if name == "CR":
        if params is None:
            raise ValueError("CR generator analysis needs the full parameter values")
        params = tuple(float(p) for p in params)
        if len(params) != gate.num_params:
            raise ValueError(f"gate CR takes 3 parameters, got {len(params)}")
    return analyze_generator(factory(params), scale)


def euler_form(spec: GeneratorSpec, theta: float) -> np.ndarray:
    """I cos(r theta) - i (a/r) G' sin(r theta) with G' the shifted generator.

    Equals exp(-i a theta G) up to the global phase exp(-i a theta s); only
    defined when the generator has exactly two eigenvalue clusters.
    """
    if spec.shift_constant is None:
        raise UnsupportedGeneratorError(
            f"generator has {len(spec.eigenvalues)} eigenvalue clusters; "
            "the Euler form needs exactly 2"
        )
    r = spec.shift_constant
    dim = spec.generator.shape[0]
    shifted = spec.generator - spec.additive_shift * np.eye(dim)
    return (
        math.cos(r * theta) * np.eye(dim)
        - 1j * (spec.scale / r) * math.sin(r * theta) * shifted
    )
