"""Numba-compiled statevector kernels.

All kernels operate in place on a flat complex128 array of length 2**n.
Qubit 0 is the most significant bit of the basis index, so qubit t lives
at bit position n-1-t.  The wrappers in :mod:`qroute.qsim` own that
translation; everything here speaks bit positions.

The kernels are deliberately scalar and sequential: results are
bit-for-bit reproducible regardless of thread count or platform.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def apply_1q(amps, bitpos, u00, u01, u10, u11):
    """Apply a 2x2 unitary to the qubit at `bitpos` (complex scalars)."""
    step = 1 << bitpos
    n_amps = amps.shape[0]
    for base in range(0, n_amps, 2 * step):
        for i in range(base, base + step):
            j = i + step
            a = amps[i]
            b = amps[j]
            amps[i] = u00 * a + u01 * b
            amps[j] = u10 * a + u11 * b


@njit(cache=True)
def apply_cnot(amps, control_pos, target_pos):
    """Swap amplitude pairs that differ in the target bit, where control=1."""
    n_amps = amps.shape[0]
    tmask = 1 << target_pos
    cmask = 1 << control_pos
    for i in range(n_amps):
        if (i & cmask) != 0 and (i & tmask) == 0:
            j = i | tmask
            tmp = amps[i]
            amps[i] = amps[j]
            amps[j] = tmp


@njit(cache=True)
def apply_phase_factors(amps, factors):
    """Multiply each amplitude by a precomputed unit-modulus factor."""
    for i in range(amps.shape[0]):
        amps[i] = amps[i] * factors[i]


@njit(cache=True)
def permute_into(src, perm, dst):
    """dst[perm[i]] = src[i] — one pass, used for fused CNOT rings."""
    for i in range(src.shape[0]):
        dst[perm[i]] = src[i]


@njit(cache=True)
def expectation_diag(amps, energies):
    """Sum of |amps[b]|^2 * energies[b] (serial, deterministic order)."""
    acc = 0.0
    for i in range(amps.shape[0]):
        a = amps[i]
        acc += (a.real * a.real + a.imag * a.imag) * energies[i]
    return acc


@njit(cache=True)
def norm_sq(amps):
    acc = 0.0
    for i in range(amps.shape[0]):
        a = amps[i]
        acc += a.real * a.real + a.imag * a.imag
    return acc


@njit(cache=True)
def flip_overlap(bra, ket, bitpos):
    """<bra| X_at_bitpos |ket> = sum_b conj(bra[b]) * ket[b ^ mask]."""
    mask = 1 << bitpos
    acc = 0.0 + 0.0j
    for i in range(bra.shape[0]):
        acc += np.conj(bra[i]) * ket[i ^ mask]
    return acc


@njit(cache=True)
def weighted_overlap(bra, ket, weights):
    """<bra| diag(weights) |ket> for a real weight vector."""
    acc = 0.0 + 0.0j
    for i in range(bra.shape[0]):
        acc += np.conj(bra[i]) * weights[i] * ket[i]
    return acc
