"""Validated quantum states and the constructors the measures act on."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, ValidationError


class PureState:
    """State vector with unit norm (within 1e-10)."""

    def __init__(self, amplitudes: Sequence[complex] | np.ndarray):
        v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if v.size == 0:
            raise ValidationError("pure state needs at least one amplitude")
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise ValidationError("pure state contains non-finite amplitudes")
        norm_sq = float(np.sum(v.real**2 + v.imag**2))
        if abs(norm_sq - 1.0) > linalg.HERMITIAN_TOL:
            raise ValidationError(
                f"pure state is not normalized: sum |amp|^2 = {norm_sq!r}"
            )
        self.amplitudes = v
        self.dim = v.size

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


class DensityOperator:
    """Density operator validated at construction.

    Invariants checked eagerly: Hermitian (max |m - m^dag| <= 1e-10), unit
    trace (|tr - 1| <= 1e-9), and positive semidefinite (min eigenvalue
    >= -1e-9, leaving rounding headroom over long evolutions). Downstream
    code assumes these hold and treats the matrix as immutable.
    """

    def __init__(self, matrix: np.ndarray):
        m = linalg.as_operator(matrix, "density matrix")
        defect = linalg.hermiticity_defect(m)
        if defect > linalg.HERMITIAN_TOL:
            raise ValidationError(
                f"density matrix is not Hermitian: defect {defect:.3e}"
            )
        tr = np.trace(m)
        if abs(tr - 1.0) > linalg.TRACE_TOL:
            raise ValidationError(f"density matrix trace {tr!r} is not 1")
        eigs = linalg.hermitian_eigenvalues(m)
        if eigs[0] < linalg.PSD_TOL:
            raise ValidationError(
                f"density matrix is not PSD: min eigenvalue {eigs[0]:.3e}"
            )
        self.matrix = m
        self.dim = m.shape[0]
        self.validated = True

    def purity(self) -> float:
        """Tr(rho^2), 1 for pure states."""
        return float(np.sum(np.abs(self.matrix) ** 2))

    def __repr__(self) -> str:
        return f"DensityOperator(dim={self.dim})"


def density_from_pure(psi: PureState | Sequence[complex] | np.ndarray) -> DensityOperator:
    """Rank-1 projector |psi><psi| of a normalized vector."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    v = psi.amplitudes
    return DensityOperator(np.outer(v, v.conj()))


def mixture(weights: Sequence[float], states: Sequence[DensityOperator]) -> DensityOperator:
    """Convex combination sum_j w_j rho_j of same-dimension states."""
    w = np.asarray(weights, dtype=np.float64)
    if len(states) == 0 or w.size != len(states):
        raise ValidationError(
            f"got {w.size} weights for {len(states)} states"
        )
    if np.any(w < 0):
        raise ValidationError("mixture weights must be nonnegative")
    if abs(float(w.sum()) - 1.0) > linalg.HERMITIAN_TOL:
        raise ValidationError(f"mixture weights sum to {w.sum()!r}, not 1")
    dim = states[0].dim
    for s in states:
        if s.dim != dim:
            raise DimensionMismatchError(
                f"mixture states have mixed dims {dim} vs {s.dim}"
            )
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for wj, s in zip(w, states):
        acc += wj * s.matrix
    return DensityOperator(acc)


def rotated_pure_pair(theta: float) -> tuple[DensityOperator, DensityOperator]:
    """Projectors onto |0> and cos(theta)|0> + sin(theta)|1>.

    The pair's overlap angle is theta; intended domain [0, pi/2].
    """
    first = density_from_pure(np.array([1.0, 0.0], dtype=np.complex128))
    second = density_from_pure(
        np.array([np.cos(theta), np.sin(theta)], dtype=np.complex128)
    )
    return first, second


def mub_pair(d: int) -> tuple[DensityOperator, DensityOperator]:
    """|0><0| and the uniform-superposition projector in dimension d >= 2."""
    if d < 2:
        raise ValidationError(f"mub_pair needs dimension >= 2, got {d}")
    basis = np.zeros(d, dtype=np.complex128)
    basis[0] = 1.0
    uniform = np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)
    return density_from_pure(basis), density_from_pure(uniform)
