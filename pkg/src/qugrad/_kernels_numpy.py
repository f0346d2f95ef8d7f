"""Pure-numpy statevector kernels.

Fallback path for the numba kernels; same signatures, same semantics.
All `apply_*` functions modify ``amps`` in place. Bit positions count from
the least-significant bit of the basis index.
"""
import numpy as np


def apply_1q(amps: np.ndarray, m: np.ndarray, pos: int) -> None:
    """Apply a 2x2 matrix to the qubit at bit position ``pos``."""
    r = amps.reshape(-1, 2, 1 << pos)
    a0 = r[:, 0, :].copy()
    a1 = r[:, 1, :]
    r[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    r[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1


def apply_2q(amps: np.ndarray, m: np.ndarray, pos0: int, pos1: int) -> None:
    """Apply a 4x4 matrix to the qubits at bit positions ``pos0``, ``pos1``.

    ``pos0`` carries the high bit of the 4x4 matrix index, ``pos1`` the low
    bit, matching a basis ordering of |b0 b1>.
    """
    hi, lo = (pos0, pos1) if pos0 > pos1 else (pos1, pos0)
    r = amps.reshape(-1, 2, 1 << (hi - 1 - lo), 2, 1 << lo)
    if pos0 > pos1:
        blocks = [r[:, 0, :, 0, :].copy(), r[:, 0, :, 1, :].copy(),
                  r[:, 1, :, 0, :].copy(), r[:, 1, :, 1, :].copy()]
        views = [(0, 0), (0, 1), (1, 0), (1, 1)]
    else:
        blocks = [r[:, 0, :, 0, :].copy(), r[:, 1, :, 0, :].copy(),
                  r[:, 0, :, 1, :].copy(), r[:, 1, :, 1, :].copy()]
        views = [(0, 0), (1, 0), (0, 1), (1, 1)]
    for g, (i, j) in enumerate(views):
        r[:, i, :, j, :] = (m[g, 0] * blocks[0] + m[g, 1] * blocks[1]
                            + m[g, 2] * blocks[2] + m[g, 3] * blocks[3])


def matrix_element_1q(bra: np.ndarray, m: np.ndarray, pos: int,
                      ket: np.ndarray) -> complex:
    """<bra| M |ket> for a 2x2 operator at bit position ``pos``, no temporaries."""
    b = bra.reshape(-1, 2, 1 << pos)
    k = ket.reshape(-1, 2, 1 << pos)
    return complex(np.einsum("piq,ij,pjq->", b.conj(), m, k))


def matrix_element_2q(bra: np.ndarray, m: np.ndarray, pos0: int, pos1: int,
                      ket: np.ndarray) -> complex:
    """<bra| M |ket> for a 4x4 operator at bit positions ``pos0``, ``pos1``."""
    hi, lo = (pos0, pos1) if pos0 > pos1 else (pos1, pos0)
    shape = (-1, 2, 1 << (hi - 1 - lo), 2, 1 << lo)
    b = bra.reshape(shape)
    k = ket.reshape(shape)
    m4 = m.reshape(2, 2, 2, 2)
    if pos0 > pos1:
        # axis 1 is the high matrix bit
        return complex(np.einsum("paqbr,abcd,pcqdr->", b.conj(), m4, k))
    return complex(np.einsum("pbqar,abcd,pdqcr->", b.conj(), m4, k))
