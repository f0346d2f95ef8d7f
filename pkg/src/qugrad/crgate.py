"""Analytic decompositions of the cross-resonance gate.

CR(s; b, c) = exp(-i (pi/2) s (X⊗I - b Z⊗X + c I⊗X)) is locally equivalent
to an XX-interaction gate. Three routes to its gradient live here:

* the full canonical circuit X^t1 Y^(3/2) X . XX^t7 . Y^(3/2) X X^t1 on the
  first qubit with X^t4 on the second, with t1, t4, t7 closed forms in
  (s, b, c) and analytic derivatives (8 shift evaluations);
* the binary split CR(s;b,0) . I⊗X^(cs) using the commuting drive term
  (4 shift evaluations, 2 when c = 0);
* magic-basis trace extraction of the XX coordinate as an independent
  cross-check of t7.

Branch convention: t1 and t7 always take the principal arccos branch, so
the parameter curves in s have periodic discontinuities. Those are
artifacts of the branch choice (X^t and X^(2-t) differ only by phase and
locals): the circuit builder compensates by binding sign-adjusted values
sigma*t1, sigma*t7 with sigma = sign(sin((pi/2) sqrt(1+b^2) s)), which is
what makes the printed gate sequence reconstruct CR on every half-period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Tally
from .errors import DomainError, NotXXClassError
from .gates import MAGIC_TIMES_SQRT2, standard_gate
from .shift import ParamMap, chain_rule_gradient, shift_gradient
from .state import Observable, StateVector

ARCCOS_CLAMP_TOL = 1e-9
DT1_SINGULAR_TOL = 1e-8


@dataclass(frozen=True)
class CrParams:
    """Gate duration s, Z⊗X coupling b, and I⊗X drive c.

    The canonical-circuit closed forms are validated for b >= 0 (they only
    ever see b^2, but the reconstruction tests cover b in [0.25, 2]); the
    binary decomposition and the adjoint engine work for any finite values.
    """

    s: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("s", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"CR parameter {name} must be finite")


@dataclass(frozen=True)
class CrCanonicalParams:
    """Canonical-circuit parameters and their derivatives in s.

    ``dt1_ds`` is None at flagged singular points (the branch discontinuities,
    where the derivative denominator vanishes); everything else is finite.
    """

    t1: float
    t4: float
    t7: float
    dt1_ds: float | None
    dt4_ds: float
    dt7_ds: float


def _arccos_clamped(x: float, what: str) -> float:
    if x > 1.0:
        if x > 1.0 + ARCCOS_CLAMP_TOL:
            raise DomainError(f"arccos argument for {what} is {x!r}, beyond clamp tolerance")
        x = 1.0
    elif x < -1.0:
        if x < -1.0 - ARCCOS_CLAMP_TOL:
            raise DomainError(f"arccos argument for {what} is {x!r}, beyond clamp tolerance")
        x = -1.0
    return math.acos(x)


def cr_canonical_params(p: CrParams) -> CrCanonicalParams:
    """Closed forms:

        t7 = (1/pi) arccos((1 + b^2 cos(pi k s)) / (1 + b^2)),  k = sqrt(1+b^2)
        t4 = c s
        t1 = (1/pi) arccos(cos((pi/2) k s) / cos((pi/2) t7))

    and their analytic s-derivatives. dt7/ds takes the radicand
    1 - ((1 + b^2 cos(pi k s)) / (1 + b^2))^2; at the kinks where both the
    numerator and that radicand vanish (s = 0 and full periods) the
    symmetric derivative 0.0 is returned, matching central differences.
    dt1/ds carries both product-rule terms (the explicit s dependence and
    the dependence through t7); it is flagged singular when its denominator
    2 sqrt(1 - v^2) falls below 1e-8.
    """
    s, b, c = p.s, p.b, p.c
    bb = b * b
    kappa = math.sqrt(1.0 + bb)
    u = (1.0 + bb * math.cos(math.pi * kappa * s)) / (1.0 + bb)
    t7 = _arccos_clamped(u, "t7") / math.pi
    u = min(max(u, -1.0), 1.0)

    rad7 = max(1.0 - u * u, 0.0)
    num7 = bb * math.sin(math.pi * kappa * s)
    den7 = kappa * math.sqrt(rad7)
    if den7 == 0.0:
        dt7 = 0.0  # kink: numerator vanishes with the radicand
    else:
        dt7 = num7 / den7

    alpha = math.pi / 2 * kappa * s
    beta = math.pi / 2 * t7
    v = math.cos(alpha) / math.cos(beta)
    t1 = _arccos_clamped(v, "t1") / math.pi
    v = min(max(v, -1.0), 1.0)

    den1 = 2.0 * math.sqrt(max(1.0 - v * v, 0.0))
    if den1 < DT1_SINGULAR_TOL:
        dt1 = None
    else:
        sec = 1.0 / math.cos(beta)
        dt1 = (kappa * math.sin(alpha) * sec
               - math.cos(alpha) * sec * math.tan(beta) * dt7) / den1

    return CrCanonicalParams(t1=t1, t4=c * s, t7=t7,
                             dt1_ds=dt1, dt4_ds=c, dt7_ds=dt7)


def _branch_sign(s: float, b: float) -> float:
    """+1 on half-periods where sin((pi/2) kappa s) >= 0, else -1."""
    return 1.0 if math.sin(math.pi / 2 * math.sqrt(1.0 + b * b) * s) >= 0.0 else -1.0


def cr_canonical_circuit(p: CrParams) -> Circuit:
    """Canonical circuit whose dense unitary is phase-equivalent to CR(s;b,c).

    Gate order in time: X^t1 on qubit 0 and X^t4 on qubit 1, Y^(3/2) then X
    on qubit 0, XX^t7, Y^(3/2) then X on qubit 0, and a final X^t1. The t1
    symbol is bound twice. The bound values carry the branch sign described
    in the module docstring.
    """
    cp = cr_canonical_params(p)
    sg = _branch_sign(p.s, p.b)
    circ = Circuit(2)
    circ.symbol("t1", sg * cp.t1).symbol("t4", cp.t4).symbol("t7", sg * cp.t7)
    circ.add("XPow", (0,), "t1")
    circ.add("XPow", (1,), "t4")
    circ.add("YPow", (0,), 1.5)
    circ.add("X", (0,))
    circ.add("XX", (0, 1), "t7")
    circ.add("YPow", (0,), 1.5)
    circ.add("X", (0,))
    circ.add("XPow", (0,), "t1")
    return circ


def cr_canonical_map(b: float, c: float) -> ParamMap:
    """Outer parameter s -> branch-signed (t1, t4, t7) and their derivatives.

    Singular dt1 entries surface as NaN, which the chain-rule engine refuses
    with a singularity error rather than extrapolating across the branch.
    """

    def values(s: float):
        cp = cr_canonical_params(CrParams(s, b, c))
        sg = _branch_sign(s, b)
        return [sg * cp.t1, cp.t4, sg * cp.t7]

    def derivatives(s: float):
        cp = cr_canonical_params(CrParams(s, b, c))
        sg = _branch_sign(s, b)
        d1 = math.nan if cp.dt1_ds is None else sg * cp.dt1_ds
        return [d1, cp.dt4_ds, sg * cp.dt7_ds]

    return ParamMap("s", ("t1", "t4", "t7"), values, derivatives)


def cr_chain_gradient(p: CrParams, initial: StateVector, observable: Observable,
                      tally: Tally | None = None) -> float:
    """df/ds through the canonical circuit via the product rule.

    Costs 8 expectation evaluations (t1 twice, t4, t7, two shifts each);
    the t4 term is skipped when c = 0 exactly, leaving 6. Raises
    SingularInnerDerivativeError at flagged dt1 singularities.
    """
    template = cr_canonical_circuit(p)
    return chain_rule_gradient(template, cr_canonical_map(p.b, p.c), p.s,
                               initial, observable, tally=tally)


def cr_binary_circuit(p: CrParams) -> Circuit:
    """CR(s;b,0) followed by X^(cs) on the second qubit.

    The I⊗X drive commutes with the rest of the CR Hamiltonian, so the split
    is exact up to global phase. With c = 0 the second factor is the
    identity and is omitted, leaving a single-gate circuit. Each factor is
    shift-differentiable in s: the first with r = (pi/2) sqrt(b^2+1), the
    second with r = (pi/2) c (as its power parameter cs with r = pi/2).
    """
    circ = Circuit(2)
    circ.symbol("s", p.s)
    circ.add("CR", (0, 1), "s", p.b, 0.0)
    if p.c != 0.0:
        circ.symbol("cs", p.c * p.s)
        circ.add("XPow", (1,), "cs")
    return circ


def cr_binary_gradient(p: CrParams, initial: StateVector, observable: Observable,
                       tally: Tally | None = None) -> float:
    """df/ds by shifting each binary factor: d(s)/ds = 1 and d(cs)/ds = c.

    4 expectation evaluations, or 2 when c = 0 (the drive factor is absent
    and contributes nothing).
    """
    tally = tally if tally is not None else Tally()
    circ = cr_binary_circuit(p)
    total = shift_gradient(circ, initial, observable, "s", tally=tally)
    if p.c != 0.0:
        total += p.c * shift_gradient(circ, initial, observable, "cs", tally=tally)
    return total


def xx_coordinate_from_unitary(U) -> float:
    """XX coordinate t in [0, 1] with U ~ local . CAN(t,0,0) . local.

    Uses the magic-basis trace: t = (1/pi) arccos((1/4) Tr[(M†UM)^T (M†UM)])
    after rescaling U to determinant one. Among the four det^(-1/4) roots the
    one minimizing the residual imaginary part of the trace is taken (ties
    keep the principal root, which is what reproduces the closed-form t7 for
    CR inputs). The magic matrix is handled as sqrt(2) M with exact integer
    entries so the trace is exact for exact inputs.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (4, 4):
        raise ValueError(f"expected a 4x4 unitary, got shape {U.shape}")
    det = complex(np.linalg.det(U))
    if abs(abs(det) - 1.0) > 1e-6:
        raise ValueError(f"matrix is not unitary (|det| = {abs(det):.6g})")
    rho = np.exp(-0.25 * np.log(det))
    best = None
    for k in range(4):
        m = MAGIC_TIMES_SQRT2.conj().T @ ((rho * 1j ** k) * U) @ MAGIC_TIMES_SQRT2 / 2.0
        tr = complex(np.trace(m.T @ m)) / 4.0
        if best is None or abs(tr.imag) < abs(best.imag) - 1e-15:
            best = tr
    if abs(best.imag) > 1e-6:
        raise NotXXClassError(
            f"magic-basis trace has imaginary residue {best.imag:.3e}; "
            "the unitary is not locally equivalent to an XX-class gate"
        )
    x = min(max(best.real, -1.0), 1.0)
    if abs(best.real) > 1.0 + 1e-6:
        raise NotXXClassError(f"magic-basis trace {best.real!r} outside [-1, 1]")
    return math.acos(x) / math.pi


def cr_sweep(b: float, c: float, s_grid) -> list[tuple]:
    """Rows (s, t1, t4, t7, dt1_ds, dt4_ds, dt7_ds) over the grid.

    Singular dt1 entries appear as None; the CLI serializes them as the
    literal token SINGULAR.
    """
    rows = []
    for s in s_grid:
        cp = cr_canonical_params(CrParams(float(s), b, c))
        rows.append((float(s), cp.t1, cp.t4, cp.t7, cp.dt1_ds, cp.dt4_ds, cp.dt7_ds))
    return rows


def cr_unitary(p: CrParams) -> np.ndarray:
    """Direct exponential of the CR Hamiltonian (the reconstruction target)."""
    return standard_gate("CR", (p.s, p.b, p.c))
