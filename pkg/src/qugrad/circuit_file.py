"""JSON circuit files: the on-disk format the CLI consumes.

Schema::

    {
      "num_qubits": 2,
      "symbols": {"theta": 0.5},
      "gates": [
        {"name": "RY", "targets": [0], "params": ["theta"]},
        {"name": "CNOT", "targets": [0, 1], "params": []}
      ],
      "observable": [{"string": "ZI", "weight": 1.0}]
    }

Parameters are JSON numbers (literals) or strings (declared symbol names).
Validation errors carry the JSON path of the offending field.
"""
from __future__ import annotations

import json

from .circuit import Circuit
from .errors import CircuitFileError
from .state import Observable


def parse_circuit_dict(data: dict) -> tuple[Circuit, Observable]:
    if not isinstance(data, dict):
        raise CircuitFileError("top level must be a JSON object")
    for key in ("num_qubits", "gates", "observable"):
        if key not in data:
            raise CircuitFileError(f"missing required field {key!r}")
    num_qubits = data["num_qubits"]
    if isinstance(num_qubits, bool) or not isinstance(num_qubits, int) or num_qubits < 1:
        raise CircuitFileError(f"num_qubits: expected positive integer, got {num_qubits!r}")

    symbols = data.get("symbols", {})
    if not isinstance(symbols, dict):
        raise CircuitFileError("symbols: expected an object of name -> value")
    circuit = Circuit(num_qubits)
    for name, value in symbols.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise CircuitFileError(f"symbols.{name}: expected a number, got {value!r}")
        circuit.symbol(name, float(value))

    if not isinstance(data["gates"], list):
        raise CircuitFileError("gates: expected a list")
    for i, rec in enumerate(data["gates"]):
        where = f"gates[{i}]"
        if not isinstance(rec, dict):
            raise CircuitFileError(f"{where}: expected an object")
        for key in ("name", "targets"):
            if key not in rec:
                raise CircuitFileError(f"{where}: missing field {key!r}")
        params = rec.get("params", [])
        if not isinstance(params, list):
            raise CircuitFileError(f"{where}.params: expected a list")
        for j, p in enumerate(params):
            if isinstance(p, bool) or not isinstance(p, (int, float, str)):
                raise CircuitFileError(
                    f"{where}.params[{j}]: expected number or symbol name, got {p!r}"
                )
        try:
            circuit.add(rec["name"], rec["targets"], *params)
        except ValueError as exc:
            raise CircuitFileError(f"{where}: {exc}") from exc

    obs_terms = data["observable"]
    if not isinstance(obs_terms, list) or not obs_terms:
        raise CircuitFileError("observable: expected a non-empty list of Pauli terms")
    terms = []
    for i, rec in enumerate(obs_terms):
        where = f"observable[{i}]"
        if not isinstance(rec, dict) or "string" not in rec or "weight" not in rec:
            raise CircuitFileError(f"{where}: expected {{'string': ..., 'weight': ...}}")
        if isinstance(rec["weight"], bool) or not isinstance(rec["weight"], (int, float)):
            raise CircuitFileError(f"{where}.weight: expected a real number")
        terms.append((rec["string"], float(rec["weight"])))
    try:
        observable = Observable.from_paulis(terms, num_qubits=num_qubits)
    except ValueError as exc:
        raise CircuitFileError(f"observable: {exc}") from exc
    return circuit, observable


def load_circuit_file(path: str) -> tuple[Circuit, Observable]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CircuitFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CircuitFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_circuit_dict(data)


def circuit_to_dict(circuit: Circuit, observable: Observable) -> dict:
    """Inverse of parse_circuit_dict; round-trips to an identical circuit."""
    if observable.terms is None:
        raise ValueError("only Pauli-term observables serialize to circuit files")
    return {
        "num_qubits": circuit.num_qubits,
        "symbols": dict(circuit.symbols),
        "gates": [
            {"name": op.gate, "targets": list(op.targets), "params": list(op.params)}
            for op in circuit.ops
        ],
        "observable": [
            {"string": string, "weight": weight} for string, weight in observable.terms
        ],
    }
