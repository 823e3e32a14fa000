"""Discrete-time quantum walk on a 1-D lattice with a noisy coin.

One step is rho -> E(U rho U^dag) with U = W (C(alpha) (x) I) and E the coin
channel lifted to the full space. The lattice holds positions -T..T with
cyclic wraparound so W is exactly unitary; configs enforce T >= steps, which
keeps the boundary unreachable and the results identical to the infinite
line. Composite indices follow coin (x) position ordering (coin is the slow
index): index = coin * L + (x + T), L = 2T + 1.

The production path runs the permutation-form kernels from the kernels
module; evolve_dense is the dense-matmul cross-check of the same map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels, kernels, linalg
from .errors import DimensionMismatchError, ResourceLimitError, ValidationError
from .states import DensityOperator, PureState

# Trajectory enumeration refuses to materialize more than this many branches.
BRANCH_CAP = 2**12

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one walk run.

    lattice_half_width defaults to max(steps, 1) so the walker never reaches
    the boundary; passing a smaller value is rejected. seed only matters for
    sampled estimators.
    """

    steps: int
    alpha: float = np.pi / 4
    mu: float = 0.0
    delta: int = 2
    coin_init: tuple[complex, complex] = (_INV_SQRT2, _INV_SQRT2 * 1j)
    lattice_half_width: int | None = None
    channel_name: str = "amplitude_damping"
    seed: int = 0
    channel_ops: tuple | None = None

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 0:
            raise ValidationError(f"steps must be a nonnegative integer, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if not np.isfinite(self.alpha):
            raise ValidationError(f"coin angle must be finite, got {self.alpha!r}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValidationError(f"noise strength mu={self.mu!r} outside [0, 1]")
        if int(self.delta) != self.delta or self.delta < 0:
            raise ValidationError(f"lag delta must be a nonnegative integer, got {self.delta!r}")
        object.__setattr__(self, "delta", int(self.delta))
        init = tuple(complex(c) for c in self.coin_init)
        if len(init) != 2:
            raise ValidationError("coin_init must have exactly two amplitudes")
        PureState(init)
        object.__setattr__(self, "coin_init", init)
        half = self.lattice_half_width
        if half is None:
            half = max(self.steps, 1)
        if int(half) != half or half < max(self.steps, 1):
            raise ValidationError(
                f"lattice_half_width {half!r} must be an integer >= max(steps, 1)"
            )
        object.__setattr__(self, "lattice_half_width", int(half))
        if self.channel_ops is not None:
            object.__setattr__(self, "channel_ops", tuple(self.channel_ops))
        # Resolve the channel now so unknown names and incomplete custom
        # operator sets fail at construction, not mid-evolution.
        channels.named_channel(self.channel_name, self.mu, self.channel_ops)

    @property
    def lattice_size(self) -> int:
        return 2 * self.lattice_half_width + 1

    @property
    def dim(self) -> int:
        return 2 * self.lattice_size

    def positions(self) -> np.ndarray:
        t = self.lattice_half_width
        return np.arange(-t, t + 1)


@dataclass(frozen=True)
class WalkHistory:
    """States of one evolution, indexed by time 0..steps."""

    states: tuple[DensityOperator, ...]
    config: WalkConfig

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class PositionDistribution:
    """P(x) over x in [-T, T] at a given time."""

    probabilities: np.ndarray
    time: int

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=np.float64)
        if p.ndim != 1 or p.size % 2 == 0:
            raise ValidationError(
                f"position distribution must cover -T..T, got {p.size} entries"
            )
        if float(p.min(initial=0.0)) < linalg.PSD_TOL:
            raise ValidationError(f"negative probability {p.min():.3e}")
        if abs(float(p.sum()) - 1.0) > linalg.TRACE_TOL:
            raise ValidationError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probabilities", p)

    @property
    def half_width(self) -> int:
        return (self.probabilities.size - 1) // 2

    def positions(self) -> np.ndarray:
        t = self.half_width
        return np.arange(-t, t + 1)

    def mean(self) -> float:
        return float(np.dot(self.positions(), self.probabilities))

    def std(self) -> float:
        x = self.positions()
        m = self.mean()
        return float(np.sqrt(np.dot((x - m) ** 2, self.probabilities)))


@dataclass(frozen=True)
class ShiftOperator:
    """Dense shift matrix plus its permutation form.

    permutation maps source index to target: W|i> = |permutation[i]>.
    inverse undoes it; conjugation by W gathers via the inverse,
    (W rho W^dag)[i, j] = rho[inverse[i], inverse[j]].
    """

    matrix: np.ndarray
    permutation: np.ndarray
    inverse: np.ndarray


def coin_operator(alpha: float) -> np.ndarray:
    """Real symmetric coin rotation; alpha = pi/4 gives the Hadamard coin."""
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def shift_operator(lattice_half_width: int) -> ShiftOperator:
    """Coin-conditioned cyclic shift: coin 0 moves x -> x-1, coin 1 moves x -> x+1."""
    if lattice_half_width < 1:
        raise ValidationError(
            f"lattice half-width must be >= 1, got {lattice_half_width}"
        )
    size = 2 * lattice_half_width + 1
    dim = 2 * size
    perm = np.empty(dim, dtype=np.int64)
    for coin in (0, 1):
        offset = 2 * coin - 1
        for p in range(size):
            perm[coin * size + p] = coin * size + (p + offset) % size
    inv = np.empty_like(perm)
    inv[perm] = np.arange(dim, dtype=np.int64)
    dense = np.zeros((dim, dim), dtype=np.complex128)
    dense[perm, np.arange(dim)] = 1.0
    return ShiftOperator(dense, perm, inv)


def coin_channel(config: WalkConfig) -> channels.KrausChannel:
    """The coin-space channel selected by the config."""
    return channels.named_channel(config.channel_name, config.mu, config.channel_ops)


def initial_state(config: WalkConfig) -> DensityOperator:
    """Pure product state coin_init (x) |x=0>."""
    size = config.lattice_size
    vec = np.zeros(2 * size, dtype=np.complex128)
    center = config.lattice_half_width
    vec[center] = config.coin_init[0]
    vec[size + center] = config.coin_init[1]
    return DensityOperator(np.outer(vec, vec.conj()))


class _StepEngine:
    """Precomputed operators for repeated permutation-form steps."""

    def __init__(self, config: WalkConfig):
        self.coin = coin_operator(config.alpha)
        self.shift_inverse = shift_operator(config.lattice_half_width).inverse
        self.ops = np.stack(coin_channel(config).operators)
        self.dim = config.dim

    def advance(self, rho: np.ndarray) -> np.ndarray:
        rho = kernels.coin_block_conjugate(rho, self.coin)
        rho = kernels.permute_conjugate(rho, self.shift_inverse)
        return kernels.kraus_block_sum(rho, self.ops)


def step(rho: DensityOperator, config: WalkConfig) -> DensityOperator:
    """One noisy step E(U rho U^dag); trace is preserved within 1e-9."""
    engine = _StepEngine(config)
    if rho.dim != engine.dim:
        raise DimensionMismatchError(
            f"state dim {rho.dim} does not match lattice dim {engine.dim}"
        )
    return DensityOperator(engine.advance(rho.matrix))


def evolve(config: WalkConfig) -> WalkHistory:
    """Exact Kraus-sum evolution for config.steps steps, all states validated."""
    if config.dim > linalg.DIM_LIMIT:
        raise ResourceLimitError(
            f"walk dimension {config.dim} exceeds the dense limit {linalg.DIM_LIMIT}"
        )
    engine = _StepEngine(config)
    states = [initial_state(config)]
    rho = states[0].matrix
    for _ in range(config.steps):
        rho = engine.advance(rho)
        states.append(DensityOperator(rho))
    return WalkHistory(tuple(states), config)


def evolve_dense(config: WalkConfig) -> list[np.ndarray]:
    """Dense-matmul evolution, the cross-check path for the kernel pipeline."""
    size = config.lattice_size
    walk_unitary = shift_operator(config.lattice_half_width).matrix @ linalg.kron(
        coin_operator(config.alpha), np.eye(size, dtype=np.complex128)
    )
    lifted = channels.lift_to_walk(coin_channel(config), size)
    rho = initial_state(config).matrix
    history = [rho]
    for _ in range(config.steps):
        rho = walk_unitary @ rho @ walk_unitary.conj().T
        rho = sum(op @ rho @ op.conj().T for op in lifted.operators)
        history.append(rho)
    return history


def position_distribution(rho: DensityOperator, time: int = 0) -> PositionDistribution:
    """P(x) = sum_coin <coin, x| rho |coin, x>."""
    if rho.dim % 2 != 0 or rho.dim < 6:
        raise DimensionMismatchError(
            f"state dim {rho.dim} is not a coin (x) lattice space"
        )
    size = rho.dim // 2
    diag = np.real(np.diag(rho.matrix)).reshape(2, size)
    return PositionDistribution(diag.sum(axis=0), time)


def trajectory_branches(
    config: WalkConfig, t: int, branch_cap: int = BRANCH_CAP
) -> list[np.ndarray]:
    """All unnormalized Kraus branches of the walk state at time t.

    Branch (j_1..j_t) is A_{j_t} U ... A_{j_1} U rho_0 U^dag A^dag ... ;
    branches carry their statistical weight as their trace, and their sum is
    the Kraus-sum state at t. Enumerates k^t matrices, refusing beyond
    branch_cap (use the sampled estimator past that point). Returned in
    lexicographic order of the index tuple with j_t varying fastest.
    """
    if int(t) != t or t < 0:
        raise ValidationError(f"branch time must be a nonnegative integer, got {t!r}")
    t = int(t)
    if t > config.lattice_half_width:
        raise ValidationError(
            f"branch time {t} exceeds the lattice half-width {config.lattice_half_width}"
        )
    ops = coin_channel(config).operators
    count = len(ops) ** t
    if count > branch_cap:
        raise ResourceLimitError(
            f"{len(ops)}^{t} = {count} branches exceed the cap {branch_cap}; "
            "use the sampled estimator (phi_av_sampled) instead"
        )
    coin = coin_operator(config.alpha)
    inverse = shift_operator(config.lattice_half_width).inverse
    branches = [initial_state(config).matrix]
    for _ in range(t):
        sheared = [
            kernels.permute_conjugate(kernels.coin_block_conjugate(b, coin), inverse)
            for b in branches
        ]
        branches = [kernels.coin_block_conjugate(b, op) for b in sheared for op in ops]
    return branches
