"""qugrad: a small statevector simulator with three cross-validating gradient engines.

* parameter-shift rule (exact two-point formula for two-eigenvalue generators)
* product-rule gradients through analytic gate decompositions, specialized
  for the cross-resonance gate
* the middle-out classical adjoint (all gradients from one synchronized
  forward/backward sweep)

plus an independent oracle layer (finite differences, dense Kronecker
embeddings) and a CLI for evaluation, gradients, decomposition checks, and
parameter-sweep export.
"""

from .circuit import Circuit, GateOp, Tally, evaluate
from .crgate import (CrCanonicalParams, CrParams, cr_binary_circuit,
                     cr_binary_gradient, cr_canonical_circuit,
                     cr_canonical_map, cr_canonical_params, cr_chain_gradient,
                     cr_sweep, cr_unitary, xx_coordinate_from_unitary)
from .errors import (CapacityError, CircuitFileError, DomainError,
                     GateValidationError, NotShiftDifferentiableError,
                     NotXXClassError, OracleError, QugradError,
                     SingularInnerDerivativeError, UnsupportedGeneratorError)
from .gates import (GateDef, GeneratorSpec, analyze_generator, euler_form,
                    generator_of, standard_gate)
from .kernels import active_backend
from .middleout import (MiddleOutCounters, backprop_reference_gradients,
                        middle_out_gradients)
from .oracle import (FiniteDiffConfig, dense_circuit_unitary, dense_expm,
                     equal_up_to_phase, finite_difference, phase_residual)
from .shift import (GradientReport, ParamMap, all_shift_gradients,
                    chain_rule_gradient, shift_gradient)
from .state import (Observable, StateVector, apply_gate, apply_hermitian,
                    expectation, inner_product, new_zero_state)

__version__ = "0.1.0"

__all__ = [
    "Circuit", "GateOp", "Tally", "evaluate",
    "CrParams", "CrCanonicalParams", "cr_canonical_params",
    "cr_canonical_circuit", "cr_canonical_map", "cr_chain_gradient",
    "cr_binary_circuit", "cr_binary_gradient", "cr_sweep", "cr_unitary",
    "xx_coordinate_from_unitary",
    "GateDef", "GeneratorSpec", "standard_gate", "generator_of",
    "analyze_generator", "euler_form",
    "MiddleOutCounters", "middle_out_gradients", "backprop_reference_gradients",
    "FiniteDiffConfig", "finite_difference", "dense_circuit_unitary",
    "dense_expm", "equal_up_to_phase", "phase_residual",
    "GradientReport", "ParamMap", "shift_gradient", "all_shift_gradients",
    "chain_rule_gradient",
    "StateVector", "Observable", "new_zero_state", "apply_gate",
    "apply_hermitian", "inner_product", "expectation",
    "active_backend",
    "QugradError", "CapacityError", "GateValidationError",
    "UnsupportedGeneratorError", "NotShiftDifferentiableError",
    "SingularInnerDerivativeError", "DomainError", "NotXXClassError",
    "OracleError", "CircuitFileError",
]
