"""Command-line interface.

Subcommands: ``eval``, ``grad``, ``decompose-cr``, ``sweep``, ``verify``.
Exit codes: 0 success, 1 validation error, 2 invariant or discrepancy
failure. Angle-like flags accept plain reals and pi fractions ("pi/2",
"2pi/3", "-pi").
"""
from __future__ import annotations

import argparse
import math
import re
import sys

from .circuit import evaluate
from .circuit_file import load_circuit_file
from .crgate import (CrParams, cr_binary_circuit, cr_canonical_circuit,
                     cr_canonical_params, cr_sweep, cr_unitary)
from .errors import NotShiftDifferentiableError, QugradError
from .middleout import middle_out_gradients
from .oracle import dense_circuit_unitary, phase_residual
from .shift import GradientReport, all_shift_gradients
from .state import new_zero_state
from .verify import fd_symbol_gradient, run_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DISCREPANCY = 2

_PI_RE = re.compile(
    r"^([+-]?)(\d+\.?\d*|\.\d+)?\s*\*?\s*pi(?:\s*/\s*(\d+\.?\d*|\.\d+))?$", re.I
)


def parse_real(text: str) -> float:
    """Plain real or a pi fraction like 'pi', '-pi/2', '3pi/4', '2*pi/3'."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}")
    sign = -1.0 if m.group(1) == "-" else 1.0
    coef = float(m.group(2)) if m.group(2) else 1.0
    den = float(m.group(3)) if m.group(3) else 1.0
    return sign * coef * math.pi / den


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; remap to 1 (validation)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_eval(args) -> int:
    circuit, observable = load_circuit_file(args.file)
    print(_fmt(evaluate(circuit, new_zero_state(circuit.num_qubits), observable)))
    return EXIT_OK


def _fd_report(circuit, initial, observable) -> GradientReport:
    names = circuit.symbol_names()
    grads = [fd_symbol_gradient(circuit, initial, observable, n) for n in names]
    return GradientReport(grads, names, expectation_evaluations=2 * len(names),
                          gate_applications=2 * len(names) * len(circuit.ops),
                          engine="fd")


def _print_report(report: GradientReport) -> None:
    print(f"engine: {report.engine}")
    width = max((len(s) for s in report.symbols), default=0)
    for sym, g in zip(report.symbols, report.gradients):
        print(f"  {sym:<{width}}  {_fmt(g)}")
    print(f"expectation evaluations: {report.expectation_evaluations}")
    print(f"gate applications: {report.gate_applications}")
    if report.counters is not None:
        c = report.counters
        print(f"generator applications: {c.generator_applications}")
        print(f"inner products: {c.inner_products}")
        print(f"peak live states: {c.live_states}")


def cmd_grad(args) -> int:
    circuit, observable = load_circuit_file(args.file)
    initial = new_zero_state(circuit.num_qubits)
    if args.engine == "shift":
        try:
            _print_report(all_shift_gradients(circuit, initial, observable))
        except NotShiftDifferentiableError as exc:
            print(f"shift engine not applicable: {exc}")
            print("use --engine middleout, or differentiate a decomposition")
            return EXIT_VALIDATION
        return EXIT_OK
    if args.engine == "middleout":
        _print_report(middle_out_gradients(circuit, initial, observable))
        return EXIT_OK
    if args.engine == "fd":
        _print_report(_fd_report(circuit, initial, observable))
        return EXIT_OK

    # engine == all: print every engine side by side
    reports: dict[str, GradientReport] = {}
    shift_note = None
    try:
        reports["shift"] = all_shift_gradients(circuit, initial, observable)
    except NotShiftDifferentiableError as exc:
        shift_note = str(exc)
    reports["middleout"] = middle_out_gradients(circuit, initial, observable)
    reports["fd"] = _fd_report(circuit, initial, observable)
    engines = list(reports)
    names = circuit.symbol_names()
    width = max([len(s) for s in names] + [6])
    print(f"  {'symbol':<{width}}  " + "  ".join(f"{e:>20}" for e in engines))
    for i, sym in enumerate(names):
        row = "  ".join(f"{reports[e].gradients[i]:>20.12e}" for e in engines)
        print(f"  {sym:<{width}}  {row}")
    if shift_note:
        print(f"shift engine skipped: {shift_note}")
    worst = 0.0
    for i in range(len(names)):
        vals = [reports[e].gradients[i] for e in engines]
        worst = max(worst, max(vals) - min(vals))
    print(f"max pairwise discrepancy: {worst:.3e}")
    return EXIT_OK if worst <= 1e-6 else EXIT_DISCREPANCY


def cmd_decompose_cr(args) -> int:
    p = CrParams(args.s, args.b, args.c)
    cp = cr_canonical_params(p)
    print(f"CR(s={_fmt(p.s)}, b={_fmt(p.b)}, c={_fmt(p.c)})")
    dt1 = "SINGULAR" if cp.dt1_ds is None else _fmt(cp.dt1_ds)
    print("canonical parameters:")
    print(f"  t1 = {_fmt(cp.t1)}   dt1_ds = {dt1}")
    print(f"  t4 = {_fmt(cp.t4)}   dt4_ds = {_fmt(cp.dt4_ds)}")
    print(f"  t7 = {_fmt(cp.t7)}   dt7_ds = {_fmt(cp.dt7_ds)}")
    target = cr_unitary(p)
    res_can = phase_residual(dense_circuit_unitary(cr_canonical_circuit(p)), target)
    res_bin = phase_residual(dense_circuit_unitary(cr_binary_circuit(p)), target)
    r1 = math.pi / 2 * math.sqrt(p.b * p.b + 1.0)
    r2 = math.pi / 2 * p.c
    print(f"canonical reconstruction residual: {res_can:.3e}")
    print(f"binary shift constants: r1 = {_fmt(r1)}   r2 = {_fmt(r2)}")
    print(f"binary reconstruction residual: {res_bin:.3e}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.s_step <= 0 or args.s_max < args.s_min:
        raise QugradError("need s-step > 0 and s-max >= s-min")
    grid = []
    i = 0
    while True:
        s = args.s_min + i * args.s_step
        if s > args.s_max + args.s_step / 2:
            break
        grid.append(s)
        i += 1
    rows = cr_sweep(args.b, args.c, grid)
    lines = ["s,t1,t4,t7,dt1_ds,dt4_ds,dt7_ds"]
    for row in rows:
        cells = [f"{row[0]:.17g}"]
        for x in row[1:]:
            cells.append("SINGULAR" if x is None else f"{x:.17g}")
        lines.append(",".join(cells))
    try:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise QugradError(f"cannot write {args.out}: {exc}") from exc
    best = max(rows, key=lambda r: r[3])
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"max t7 = {_fmt(best[3])} at s = {_fmt(best[0])}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results, ok = run_verification(args.seed, args.trials)
    print(f"seed={args.seed} trials={args.trials}")
    for r in results:
        print(r.line())
    if args.trials == 0:
        print("0 trials requested: vacuous pass")
        return EXIT_OK
    print("all checks passed" if ok else "CHECKS FAILED")
    return EXIT_OK if ok else EXIT_DISCREPANCY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qugrad",
                     description="statevector gradients: shift rule, "
                                 "decompositions, and the middle-out adjoint")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a circuit file's expectation")
    p.add_argument("file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grad", help="gradients of a circuit file")
    p.add_argument("file")
    p.add_argument("--engine", choices=("shift", "middleout", "fd", "all"),
                   default="all")
    p.set_defaults(func=cmd_grad)

    p = sub.add_parser("decompose-cr", help="canonical and binary CR decompositions")
    p.add_argument("--s", type=parse_real, required=True)
    p.add_argument("--b", type=parse_real, required=True)
    p.add_argument("--c", type=parse_real, default=0.0)
    p.set_defaults(func=cmd_decompose_cr)

    p = sub.add_parser("sweep", help="CSV sweep of CR canonical parameters over s")
    p.add_argument("--b", type=parse_real, required=True)
    p.add_argument("--c", type=parse_real, default=0.0)
    p.add_argument("--s-min", type=parse_real, default=0.0)
    p.add_argument("--s-max", type=parse_real, default=2.0)
    p.add_argument("--s-step", type=parse_real, default=0.005)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="randomized cross-engine verification suite")
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QugradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
