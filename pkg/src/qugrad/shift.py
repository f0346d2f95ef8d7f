"""Parameter-shift gradients and the product-rule engine over decompositions.

The two-point rule df/dtheta = r [f(theta + pi/4r) - f(theta - pi/4r)] is
exact when the bound gate's generator has two eigenvalue clusters. A symbol
bound into k gates is differentiated by shifting one occurrence at a time
and summing the k two-point estimates; shifting all occurrences together
would be wrong.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .circuit import Circuit, Tally, run_circuit
from .errors import NotShiftDifferentiableError, SingularInnerDerivativeError
from .gates import generator_of
from .state import Observable, StateVector, expectation


@dataclass
class ParamMap:
    """Differentiable map from one outer parameter to a template's symbols.

    ``inner_values(theta)`` and ``inner_derivatives(theta)`` return lists
    aligned with ``inner_names``. A singular derivative is flagged by a
    non-finite entry; an exact 0.0 marks a term the chain rule may skip.
    """

    outer_name: str
    inner_names: tuple[str, ...]
    inner_values: Callable[[float], Sequence[float]]
    inner_derivatives: Callable[[float], Sequence[float]]


@dataclass
class GradientReport:
    """Per-symbol gradients plus engine cost metadata."""

    gradients: list[float]
    symbols: list[str]
    expectation_evaluations: int
    gate_applications: int
    engine: str
    counters: object = None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.symbols, self.gradients))


def _shift_occurrence(circuit: Circuit, initial: StateVector,
                      observable: Observable, op_index: int, slot: int,
                      values: dict[str, float], tally: Tally) -> float:
    """Two-point estimate for a single (gate, slot) occurrence."""
    op = circuit.ops[op_index]
    params = circuit.resolved_params(op_index, values)
    spec = generator_of(op.gate, slot, params)
    if spec.shift_constant is None:
        raise NotShiftDifferentiableError(op.gate, spec.eigenvalues)
    r = spec.shift_constant
    delta = math.pi / (4 * r)
    # The two shifted runs share the unshifted prefix; only logical
    # expectation evaluations are reported.
    prefix = initial.amplitudes.copy()
    run_circuit(circuit, prefix, values, stop=op_index, tally=tally)
    results = []
    for sign in (+1.0, -1.0):
        amps = prefix.copy()
        run_circuit(circuit, amps, values,
                    overrides={(op_index, slot): params[slot] + sign * delta},
                    start=op_index, tally=tally)
        state = StateVector(circuit.num_qubits, amps)
        results.append(expectation(state, observable))
        tally.expectation_evaluations += 1
    return r * (results[0] - results[1])


def shift_gradient(circuit: Circuit, initial: StateVector,
                   observable: Observable, param: str,
                   values: dict[str, float] | None = None,
                   tally: Tally | None = None) -> float:
    """Derivative of the circuit expectation with respect to one symbol.

    Performs exactly 2k expectation evaluations for a symbol bound into k
    gates. Raises NotShiftDifferentiableError if any bound gate's generator
    lacks two eigenvalue clusters.
    """
    tally = tally if tally is not None else Tally()
    values = dict(circuit.symbols if values is None else values)
    total = 0.0
    for op_index, slot in circuit.occurrences(param):
        total += _shift_occurrence(circuit, initial, observable,
                                   op_index, slot, values, tally)
    return total


def all_shift_gradients(circuit: Circuit, initial: StateVector,
                        observable: Observable) -> GradientReport:
    """Shift gradient for every declared symbol, with aggregate counts."""
    tally = Tally()
    names = circuit.symbol_names()
    grads = [shift_gradient(circuit, initial, observable, name, tally=tally)
             for name in names]
    return GradientReport(grads, names, tally.expectation_evaluations,
                          tally.gate_applications, engine="shift")


def chain_rule_gradient(template: Circuit, pmap: ParamMap, theta: float,
                        initial: StateVector, observable: Observable,
                        tally: Tally | None = None) -> float:
    """df/dtheta = sum_i (df/dt_i)(dt_i/dtheta) over a decomposition template.

    Terms whose inner derivative is exactly 0.0 by construction are skipped
    without spending evaluations; a non-finite inner derivative raises
    SingularInnerDerivativeError.
    """
    tally = tally if tally is not None else Tally()
    values = [float(v) for v in pmap.inner_values(theta)]
    derivs = [float(d) for d in pmap.inner_derivatives(theta)]
    if not (len(values) == len(derivs) == len(pmap.inner_names)):
        raise ValueError("parameter map lengths do not match its inner names")
    unknown = [n for n in pmap.inner_names if n not in template.symbols]
    if unknown:
        raise ValueError(f"map names {unknown} are not template symbols")
    bound = dict(template.symbols)
    bound.update(zip(pmap.inner_names, values))
    total = 0.0
    for name, d in zip(pmap.inner_names, derivs):
        if d == 0.0:
            continue
        if not math.isfinite(d):
            raise SingularInnerDerivativeError(theta, f"d{name}/d{pmap.outer_name}")
        total += d * shift_gradient(template, initial, observable, name,
                                    values=bound, tally=tally)
    return total
