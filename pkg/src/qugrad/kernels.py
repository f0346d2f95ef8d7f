"""Kernel backend selection.

The hot inner loops (gate application, local-operator matrix elements) have
two interchangeable implementations: numba-compiled loops and a pure-numpy
fallback. Selection happens once at import time via the ``QUGRAD_KERNELS``
environment variable:

    QUGRAD_KERNELS=numba   use the compiled kernels (default when numba imports)
    QUGRAD_KERNELS=numpy   force the pure-numpy path

``benchmarks/bench_kernels.py`` compares the two head to head.
"""
import os

from . import _kernels_numpy

_requested = os.environ.get("QUGRAD_KERNELS", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"QUGRAD_KERNELS must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numba":
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        _impl = _kernels_numpy
        BACKEND = "numpy"
else:
    _impl = _kernels_numpy
    BACKEND = "numpy"

apply_1q = _impl.apply_1q
apply_2q = _impl.apply_2q
matrix_element_1q = _impl.matrix_element_1q
matrix_element_2q = _impl.matrix_element_2q


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
