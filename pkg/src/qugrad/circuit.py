"""Circuits: ordered gate sequences with symbolic parameter bindings.

A parameter slot holds either a literal float or the name of a declared
symbol. One symbol may be bound into several gates (the cross-resonance
canonical circuit binds t1 twice); gradient engines sum over occurrences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gates import GATES, standard_gate
from .state import Observable, StateVector, _apply_matrix_inplace, expectation


@dataclass(frozen=True)
class GateOp:
    gate: str
    targets: tuple[int, ...]
    params: tuple[float | str, ...]


@dataclass
class Tally:
    """Mutable counter for logical expectation evaluations and gate applications."""

    expectation_evaluations: int = 0
    gate_applications: int = 0


class Circuit:
    """Gate sequence on a fixed register with named parameter symbols."""

    def __init__(self, num_qubits: int, symbols: dict[str, float] | None = None):
        if num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        self.num_qubits = int(num_qubits)
        self.symbols: dict[str, float] = dict(symbols or {})
        self.ops: list[GateOp] = []

    def symbol(self, name: str, value: float) -> "Circuit":
        """Declare (or update) a parameter symbol; chainable."""
        self.symbols[name] = float(value)
        return self

    def add(self, gate: str, targets, *params) -> "Circuit":
        """Append a gate; parameters are literals or declared symbol names."""
        if gate not in GATES:
            raise ValueError(f"unknown gate {gate!r}")
        gdef = GATES[gate]
        targets = tuple(int(t) for t in targets)
        if len(targets) != gdef.arity:
            raise ValueError(
                f"gate {gate} acts on {gdef.arity} qubit(s), got targets {targets}"
            )
        if len(set(targets)) != len(targets):
            raise ValueError(f"duplicate targets {targets}")
        for t in targets:
            if not 0 <= t < self.num_qubits:
                raise ValueError(
                    f"target {t} out of range for {self.num_qubits} qubit(s)"
                )
        if len(params) != gdef.num_params:
            raise ValueError(
                f"gate {gate} takes {gdef.num_params} parameter(s), got {len(params)}"
            )
        cleaned = []
        for p in params:
            if isinstance(p, str):
                if p not in self.symbols:
                    raise ValueError(f"symbol {p!r} not declared")
                cleaned.append(p)
            else:
                v = float(p)
                if not math.isfinite(v):
                    raise ValueError(f"non-finite literal parameter {p!r}")
                cleaned.append(v)
        self.ops.append(GateOp(gate, targets, tuple(cleaned)))
        return self

    def copy(self) -> "Circuit":
        out = Circuit(self.num_qubits, self.symbols)
        out.ops = list(self.ops)
        return out

    def symbol_names(self) -> list[str]:
        return list(self.symbols)

    def occurrences(self, symbol: str) -> list[tuple[int, int]]:
        """(op index, parameter slot) pairs where the symbol is bound."""
        out = []
        for i, op in enumerate(self.ops):
            for j, p in enumerate(op.params):
                if p == symbol:
                    out.append((i, j))
        return out

    def resolved_params(self, op_index: int, values: dict[str, float] | None = None,
                        overrides: dict[tuple[int, int], float] | None = None
                        ) -> tuple[float, ...]:
        """Numeric parameters of one op under symbol values and per-slot overrides."""
        values = self.symbols if values is None else values
        op = self.ops[op_index]
        out = []
        for j, p in enumerate(op.params):
            if overrides and (op_index, j) in overrides:
                out.append(overrides[(op_index, j)])
            elif isinstance(p, str):
                out.append(values[p])
            else:
                out.append(p)
        return tuple(out)


def run_circuit(circuit: Circuit, amps: np.ndarray,
                values: dict[str, float] | None = None,
                overrides: dict[tuple[int, int], float] | None = None,
                start: int = 0, stop: int | None = None,
                tally: Tally | None = None) -> None:
    """Apply circuit ops [start, stop) to the amplitude array in place."""
    stop = len(circuit.ops) if stop is None else stop
    for i in range(start, stop):
        op = circuit.ops[i]
        matrix = standard_gate(op.gate, circuit.resolved_params(i, values, overrides))
        _apply_matrix_inplace(amps, matrix, op.targets, circuit.num_qubits)
        if tally is not None:
            tally.gate_applications += 1


def evaluate(circuit: Circuit, initial: StateVector, observable: Observable,
             values: dict[str, float] | None = None,
             overrides: dict[tuple[int, int], float] | None = None,
             tally: Tally | None = None) -> float:
    """Expectation of the observable after running the circuit on ``initial``."""
    if initial.num_qubits != circuit.num_qubits:
        raise ValueError(
            f"initial state has {initial.num_qubits} qubit(s), circuit {circuit.num_qubits}"
        )
    out = initial.copy()
    run_circuit(circuit, out.amplitudes, values, overrides, tally=tally)
    if tally is not None:
        tally.expectation_evaluations += 1
    return expectation(out, observable)
