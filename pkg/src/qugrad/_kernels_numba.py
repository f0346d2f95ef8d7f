"""Numba-compiled statevector kernels.

Same contracts as ``_kernels_numpy``: in-place application, bit positions
from the least-significant bit. Index pairs are enumerated with the usual
insert-a-zero-bit masks so no index array is materialized.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def apply_1q(amps, m, pos):
    step = 1 << pos
    lower = step - 1
    m00, m01, m10, m11 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    for i in range(amps.size >> 1):
        i0 = ((i & ~lower) << 1) | (i & lower)
        i1 = i0 + step
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = m00 * a0 + m01 * a1
        amps[i1] = m10 * a0 + m11 * a1


@njit(cache=True)
def apply_2q(amps, m, pos0, pos1):
    off0 = 1 << pos0
    off1 = 1 << pos1
    lo = pos1 if pos1 < pos0 else pos0
    hi = pos0 if pos1 < pos0 else pos1
    mask_lo = (1 << lo) - 1
    mask_hi = (1 << hi) - 1
    for i in range(amps.size >> 2):
        x = ((i & ~mask_lo) << 1) | (i & mask_lo)
        base = ((x & ~mask_hi) << 1) | (x & mask_hi)
        i1 = base + off1
        i2 = base + off0
        i3 = i2 + off1
        a0 = amps[base]
        a1 = amps[i1]
        a2 = amps[i2]
        a3 = amps[i3]
        amps[base] = m[0, 0] * a0 + m[0, 1] * a1 + m[0, 2] * a2 + m[0, 3] * a3
        amps[i1] = m[1, 0] * a0 + m[1, 1] * a1 + m[1, 2] * a2 + m[1, 3] * a3
        amps[i2] = m[2, 0] * a0 + m[2, 1] * a1 + m[2, 2] * a2 + m[2, 3] * a3
        amps[i3] = m[3, 0] * a0 + m[3, 1] * a1 + m[3, 2] * a2 + m[3, 3] * a3


@njit(cache=True)
def matrix_element_1q(bra, m, pos, ket):
    step = 1 << pos
    lower = step - 1
    m00, m01, m10, m11 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    acc = 0.0 + 0.0j
    for i in range(bra.size >> 1):
        i0 = ((i & ~lower) << 1) | (i & lower)
        i1 = i0 + step
        k0 = ket[i0]
        k1 = ket[i1]
        acc += np.conj(bra[i0]) * (m00 * k0 + m01 * k1)
        acc += np.conj(bra[i1]) * (m10 * k0 + m11 * k1)
    return acc


@njit(cache=True)
def matrix_element_2q(bra, m, pos0, pos1, ket):
    off0 = 1 << pos0
    off1 = 1 << pos1
    lo = pos1 if pos1 < pos0 else pos0
    hi = pos0 if pos1 < pos0 else pos1
    mask_lo = (1 << lo) - 1
    mask_hi = (1 << hi) - 1
    acc = 0.0 + 0.0j
    for i in range(bra.size >> 2):
        x = ((i & ~mask_lo) << 1) | (i & mask_lo)
        base = ((x & ~mask_hi) << 1) | (x & mask_hi)
        i1 = base + off1
        i2 = base + off0
        i3 = i2 + off1
        k0 = ket[base]
        k1 = ket[i1]
        k2 = ket[i2]
        k3 = ket[i3]
        acc += np.conj(bra[base]) * (m[0, 0] * k0 + m[0, 1] * k1 + m[0, 2] * k2 + m[0, 3] * k3)
        acc += np.conj(bra[i1]) * (m[1, 0] * k0 + m[1, 1] * k1 + m[1, 2] * k2 + m[1, 3] * k3)
        acc += np.conj(bra[i2]) * (m[2, 0] * k0 + m[2, 1] * k1 + m[2, 2] * k2 + m[2, 3] * k3)
        acc += np.conj(bra[i3]) * (m[3, 0] * k0 + m[3, 1] * k1 + m[3, 2] * k2 + m[3, 3] * k3)
    return acc
