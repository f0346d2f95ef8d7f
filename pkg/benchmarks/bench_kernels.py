"""Head-to-head kernel benchmark: numba @njit vs the pure-numpy fallback.

Times raw gate application on dense registers of increasing size, then a
full middle-out gradient run through the public API under each backend.
The numba path needs one warm-up call per kernel (compilation is cached on
disk afterwards).

Run:  python benchmarks/bench_kernels.py [max_qubits]
"""
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qugrad import _kernels_numba as knb  # noqa: E402
from qugrad import _kernels_numpy as knp  # noqa: E402


def bench_apply(kern, n_qubits, reps):
    rng = np.random.default_rng(0)
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    amps = np.ascontiguousarray(amps / np.linalg.norm(amps))
    theta = 0.31
    m1 = np.array([[np.cos(theta), -1j * np.sin(theta)],
                   [-1j * np.sin(theta), np.cos(theta)]], dtype=complex)
    xx = np.kron(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]])).astype(complex)
    m2 = np.cos(theta) * np.eye(4) - 1j * np.sin(theta) * xx
    m2 = np.ascontiguousarray(m2)

    kern.apply_1q(amps, m1, 0)  # warm up (jit compile on the numba path)
    kern.apply_2q(amps, m2, 1, 0)

    start = time.perf_counter()
    for r in range(reps):
        kern.apply_1q(amps, m1, r % n_qubits)
    t1 = (time.perf_counter() - start) / reps

    start = time.perf_counter()
    for r in range(reps):
        kern.apply_2q(amps, m2, r % n_qubits, (r + 1) % n_qubits)
    t2 = (time.perf_counter() - start) / reps
    return t1, t2


def bench_middle_out(n_qubits, depth):
    from qugrad import Circuit, Observable, middle_out_gradients, new_zero_state
    circ = Circuit(n_qubits)
    for k in range(depth):
        circ.symbol(f"t{k}", 0.1 + 0.01 * k)
        if k % 3 == 2:
            circ.add("XX", (k % n_qubits, (k + 1) % n_qubits), f"t{k}")
        else:
            circ.add(("RY", "RX")[k % 2], (k % n_qubits,), f"t{k}")
    obs = Observable.from_paulis([("Z" * n_qubits, 1.0)])
    init = new_zero_state(n_qubits)
    middle_out_gradients(circ, init, obs)  # warm
    start = time.perf_counter()
    middle_out_gradients(circ, init, obs)
    return time.perf_counter() - start


def main():
    max_qubits = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    sizes = [n for n in (10, 14, 18, 20, 22) if n <= max_qubits]
    print(f"{'qubits':>6} | {'1q numba':>10} {'1q numpy':>10} {'speedup':>7} "
          f"| {'2q numba':>10} {'2q numpy':>10} {'speedup':>7}")
    for n in sizes:
        reps = max(3, 2 ** (22 - n))
        nb1, nb2 = bench_apply(knb, n, reps)
        np1, np2 = bench_apply(knp, n, reps)
        print(f"{n:>6} | {nb1 * 1e6:>8.1f}us {np1 * 1e6:>8.1f}us "
              f"{np1 / nb1:>6.1f}x | {nb2 * 1e6:>8.1f}us {np2 * 1e6:>8.1f}us "
              f"{np2 / nb2:>6.1f}x")

    print()
    backend = os.environ.get("QUGRAD_KERNELS", "numba")
    t = bench_middle_out(min(14, max_qubits), 40)
    print(f"middle-out gradient, 14 qubits x 40 gates, backend={backend}: "
          f"{t * 1e3:.1f} ms")
    print("(set QUGRAD_KERNELS=numpy and rerun to compare the full pipeline)")


if __name__ == "__main__":
    main()
