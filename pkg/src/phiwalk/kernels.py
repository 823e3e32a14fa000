"""Hot evolution kernels with numba acceleration and a pure-numpy fallback.

A walk step conjugates the density matrix by the coin rotation (a 2x2 block
rotation over position blocks), permutes indices for the shift, and sums the
lifted Kraus branches. All three are O(N^2) per step and dominate sweep
runtime, so they are jitted when numba is importable. Set PHIWALK_NO_NUMBA=1
to force the numpy implementations (same semantics, einsum plus fancy
indexing); benchmarks/bench_step.py compares the two paths.

Kernel inputs are complex128 arrays: rho of shape (2L, 2L) in coin (x)
position ordering (coin is the slow index), coin matrices of shape (2, 2),
Kraus stacks of shape (k, 2, 2), and int64 permutations of length 2L.
"""

from __future__ import annotations

import os

import numpy as np

_FORCED_NUMPY = os.environ.get("PHIWALK_NO_NUMBA", "") not in ("", "0")

HAS_NUMBA = False
if not _FORCED_NUMPY:
    try:
        import numba

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False

_JIT_OPTIONS = {"cache": True, "fastmath": True, "nogil": True}


def coin_block_conjugate_numpy(rho: np.ndarray, m: np.ndarray) -> np.ndarray:
    """(m (x) I) rho (m (x) I)^dag via einsum over the coin indices."""
    half = rho.shape[0] // 2
    r4 = rho.reshape(2, half, 2, half)
    out = np.einsum("ac,cxdy,bd->axby", m, r4, m.conj(), optimize=True)
    return np.ascontiguousarray(out.reshape(rho.shape))


def permute_conjugate_numpy(rho: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """out[i, j] = rho[inv[i], inv[j]] (conjugation by a permutation matrix)."""
    return np.ascontiguousarray(rho[np.ix_(inv, inv)])


def kraus_block_sum_numpy(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    """sum_j (A_j (x) I) rho (A_j (x) I)^dag for a stack of coin operators."""
    out = np.zeros_like(rho)
    for k in range(ops.shape[0]):
        out += coin_block_conjugate_numpy(rho, ops[k])
    return out


if HAS_NUMBA:

    @numba.njit(**_JIT_OPTIONS)
    def _coin_block_conjugate_jit(rho, m):  # pragma: no cover - numba path
        n = rho.shape[0]
        half = n // 2
        out = np.empty((n, n), dtype=np.complex128)
        m00, m01, m10, m11 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        c00, c01 = np.conj(m00), np.conj(m01)
        c10, c11 = np.conj(m10), np.conj(m11)
        for x in range(half):
            for y in range(half):
                r00 = rho[x, y]
                r01 = rho[x, half + y]
                r10 = rho[half + x, y]
                r11 = rho[half + x, half + y]
                t00 = m00 * r00 + m01 * r10
                t01 = m00 * r01 + m01 * r11
                t10 = m10 * r00 + m11 * r10
                t11 = m10 * r01 + m11 * r11
                out[x, y] = t00 * c00 + t01 * c01
                out[x, half + y] = t00 * c10 + t01 * c11
                out[half + x, y] = t10 * c00 + t11 * c01
                out[half + x, half + y] = t10 * c10 + t11 * c11
        return out

    @numba.njit(**_JIT_OPTIONS)
    def _permute_conjugate_jit(rho, inv):  # pragma: no cover - numba path
        n = rho.shape[0]
        out = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            src = inv[i]
            for j in range(n):
                out[i, j] = rho[src, inv[j]]
        return out

    @numba.njit(**_JIT_OPTIONS)
    def _kraus_block_sum_jit(rho, ops):  # pragma: no cover - numba path
        n = rho.shape[0]
        half = n // 2
        out = np.zeros((n, n), dtype=np.complex128)
        for k in range(ops.shape[0]):
            m00, m01 = ops[k, 0, 0], ops[k, 0, 1]
            m10, m11 = ops[k, 1, 0], ops[k, 1, 1]
            c00, c01 = np.conj(m00), np.conj(m01)
            c10, c11 = np.conj(m10), np.conj(m11)
            for x in range(half):
                for y in range(half):
                    r00 = rho[x, y]
                    r01 = rho[x, half + y]
                    r10 = rho[half + x, y]
                    r11 = rho[half + x, half + y]
                    t00 = m00 * r00 + m01 * r10
                    t01 = m00 * r01 + m01 * r11
                    t10 = m10 * r00 + m11 * r10
                    t11 = m10 * r01 + m11 * r11
                    out[x, y] += t00 * c00 + t01 * c01
                    out[x, half + y] += t00 * c10 + t01 * c11
                    out[half + x, y] += t10 * c00 + t11 * c01
                    out[half + x, half + y] += t10 * c10 + t11 * c11
        return out

    def coin_block_conjugate_numba(rho: np.ndarray, m: np.ndarray) -> np.ndarray:
        return _coin_block_conjugate_jit(
            np.ascontiguousarray(rho, dtype=np.complex128),
            np.ascontiguousarray(m, dtype=np.complex128),
        )

    def permute_conjugate_numba(rho: np.ndarray, inv: np.ndarray) -> np.ndarray:
        return _permute_conjugate_jit(
            np.ascontiguousarray(rho, dtype=np.complex128),
            np.ascontiguousarray(inv, dtype=np.int64),
        )

    def kraus_block_sum_numba(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
        return _kraus_block_sum_jit(
            np.ascontiguousarray(rho, dtype=np.complex128),
            np.ascontiguousarray(ops, dtype=np.complex128),
        )

    coin_block_conjugate = coin_block_conjugate_numba
    permute_conjugate = permute_conjugate_numba
    kraus_block_sum = kraus_block_sum_numba
    ACTIVE_BACKEND = "numba"
else:
    coin_block_conjugate = coin_block_conjugate_numpy
    permute_conjugate = permute_conjugate_numpy
    kraus_block_sum = kraus_block_sum_numpy
    ACTIVE_BACKEND = "numpy"
