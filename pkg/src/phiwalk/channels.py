"""Kraus-operator channels: amplitude damping, validation, lattice lifting.

A channel is a tuple of same-dimension Kraus operators. Constructors here
produce trace-preserving sets; arbitrary operator lists can still be wrapped
in a KrausChannel so that validate() can report how badly they fail
completeness (the guard that catches non-trace-preserving operator pairs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, ValidationError
from .states import DensityOperator

# Operators whose squared HS norm falls below this are dropped by channel
# constructors so branch enumeration never carries dead branches.
ZERO_OP_TOL = 1e-30


@dataclass(frozen=True)
class KrausChannel:
    """Immutable list of Kraus operators with a label and named parameters."""

    operators: tuple[np.ndarray, ...]
    label: str = "channel"
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.operators) == 0:
            raise ValidationError("channel needs at least one Kraus operator")
        ops = tuple(linalg.as_operator(op, "Kraus operator") for op in self.operators)
        dim = ops[0].shape[0]
        for op in ops:
            if op.shape[0] != dim:
                raise DimensionMismatchError(
                    f"Kraus operators have mixed dims {dim} vs {op.shape[0]}"
                )
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


@dataclass(frozen=True)
class ChannelReport:
    """Completeness check result: max elementwise deviation of sum A^dag A from I."""

    ok: bool
    max_deviation: float
    message: str


def validate(ch: KrausChannel, tol: float = linalg.HERMITIAN_TOL) -> ChannelReport:
    """Check trace preservation: sum_j A_j^dag A_j = I within tol elementwise."""
    acc = np.zeros((ch.dim, ch.dim), dtype=np.complex128)
    for op in ch.operators:
        acc += op.conj().T @ op
    deviation = float(np.max(np.abs(acc - np.eye(ch.dim))))
    if deviation <= tol:
        return ChannelReport(True, deviation, f"{ch.label}: completeness ok")
    return ChannelReport(
        False,
        deviation,
        f"{ch.label}: sum A^dag A deviates from I by {deviation:.3e}",
    )


def _prune_zero_ops(ops: Sequence[np.ndarray]) -> tuple[np.ndarray, ...]:
    kept = tuple(
        op for op in ops if float(np.sum(op.real**2 + op.imag**2)) > ZERO_OP_TOL
    )
    return kept if kept else tuple(ops[:1])


def amplitude_damping(mu: float) -> KrausChannel:
    """Coin amplitude damping of strength mu in [0, 1].

    A_0 = diag(sqrt(1-mu), 1) and A_1 = sqrt(mu)|1><0|, the rank-1 completion
    that damps the |0> population into |1>; together they satisfy
    A_0^dag A_0 + A_1^dag A_1 = I exactly. At mu=0 the zero operator is
    dropped and the channel is the identity map with a single branch.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValidationError(f"damping strength mu={mu!r} outside [0, 1]")
    a0 = np.array([[np.sqrt(1.0 - mu), 0.0], [0.0, 1.0]], dtype=np.complex128)
    a1 = np.array([[0.0, 0.0], [np.sqrt(mu), 0.0]], dtype=np.complex128)
    return KrausChannel(_prune_zero_ops([a0, a1]), "amplitude_damping", {"mu": mu})


def amplitude_damping_conventional(mu: float) -> KrausChannel:
    """Amplitude damping in the conventional direction (|1> decays to |0>).

    A_0 = diag(1, sqrt(1-mu)), A_1 = sqrt(mu)|0><1|. Exposed alongside
    amplitude_damping for comparison; both classicalize the walk.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValidationError(f"damping strength mu={mu!r} outside [0, 1]")
    a0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - mu)]], dtype=np.complex128)
    a1 = np.array([[0.0, np.sqrt(mu)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel(
        _prune_zero_ops([a0, a1]), "amplitude_damping_conventional", {"mu": mu}
    )


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=np.complex128),), "identity", {})


def named_channel(
    name: str, mu: float, custom_ops: Sequence[np.ndarray] | None = None
) -> KrausChannel:
    """Resolve a channel by config name.

    Known names: amplitude_damping, amplitude_damping_conventional, identity,
    custom (requires explicit operators, which are completeness-checked).
    """
    if name == "amplitude_damping":
        return amplitude_damping(mu)
    if name == "amplitude_damping_conventional":
        return amplitude_damping_conventional(mu)
    if name == "identity":
        return identity_channel()
    if name == "custom":
        if not custom_ops:
            raise ValidationError("custom channel requires explicit Kraus operators")
        ch = KrausChannel(_prune_zero_ops(list(custom_ops)), "custom", {"mu": mu})
        report = validate(ch)
        if not report.ok:
            raise ValidationError(f"custom channel rejected: {report.message}")
        return ch
    raise ValidationError(f"unknown channel name {name!r}")


def lift_to_walk(ch: KrausChannel, lattice_size: int) -> KrausChannel:
    """Lift a coin channel to coin (x) position: each A_j becomes A_j (x) I_L."""
    if ch.dim != 2:
        raise ValidationError(
            f"only coin (dim-2) channels can be lifted, got dim {ch.dim}"
        )
    if lattice_size < 1:
        raise ValidationError(f"lattice size must be positive, got {lattice_size}")
    eye = np.eye(lattice_size, dtype=np.complex128)
    lifted = tuple(linalg.kron(op, eye) for op in ch.operators)
    return KrausChannel(lifted, ch.label, dict(ch.params))


def apply(ch: KrausChannel, rho: DensityOperator) -> DensityOperator:
    """Kraus sum sum_j A_j rho A_j^dag, revalidated as a DensityOperator."""
    if ch.dim != rho.dim:
        raise DimensionMismatchError(
            f"channel dim {ch.dim} does not match state dim {rho.dim}"
        )
    acc = np.zeros_like(rho.matrix)
    for op in ch.operators:
        acc += op @ rho.matrix @ op.conj().T
    return DensityOperator(acc)


def branch_apply(ch: KrausChannel, rho: np.ndarray) -> list[np.ndarray]:
    """Per-operator branches A_j rho A_j^dag, unnormalized and unsummed.

    The input may itself be an unnormalized branch; branch traces always sum
    to trace(rho) for a trace-preserving channel.
    """
    rho = linalg.as_operator(rho, "rho")
    if ch.dim != rho.shape[0]:
        raise DimensionMismatchError(
            f"channel dim {ch.dim} does not match matrix dim {rho.shape[0]}"
        )
    return [op @ rho @ op.conj().T for op in ch.operators]
