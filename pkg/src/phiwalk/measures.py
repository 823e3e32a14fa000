"""Commutator-based quantumness measures.

The base measure of a state pair is twice the squared Hilbert-Schmidt norm
of their commutator; it lives in [0, 1], vanishes exactly for commuting
pairs, and peaks at 1 for pure qubit-subspace pairs at overlap angle pi/4.
On walk histories it is evaluated between lagged states (phi_delta_series),
between all trajectory branches (phi_av and its sampled estimator), and as
a noisy-to-noiseless ratio (phi_relative).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, linalg
from .errors import DimensionMismatchError, ValidationError
from .states import DensityOperator
from .walk import (
    WalkConfig,
    WalkHistory,
    coin_channel,
    coin_operator,
    initial_state,
    shift_operator,
    trajectory_branches,
)

# Measured values may undershoot 0 or overshoot 1 by rounding only.
PHI_MIN = -1e-12
PHI_MAX = 1.0 + 1e-12

# Denominators below this are treated as zero by phi_relative.
RATIO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class QuantumnessSeries:
    """Phi values on a strictly increasing integer time grid."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.int64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValidationError(
                f"series needs matching 1-d grids, got {t.shape} and {v.shape}"
            )
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValidationError("series times must be strictly increasing")
        if v.size and (v.min() < PHI_MIN or v.max() > PHI_MAX):
            raise ValidationError(
                f"series values outside [{PHI_MIN}, {PHI_MAX}]: "
                f"min {v.min():.3e}, max {v.max():.3e}"
            )
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.times.size

    def value_at(self, t: int) -> float:
        idx = np.nonzero(self.times == t)[0]
        if idx.size == 0:
            raise ValidationError(f"time {t} is not on the series grid")
        return float(self.values[idx[0]])


def _as_matrix(state) -> np.ndarray:
    if isinstance(state, DensityOperator):
        return state.matrix
    return linalg.as_operator(state, "state")


def _phi_raw(a: np.ndarray, b: np.ndarray) -> float:
    return 2.0 * linalg.hs_norm_sq(linalg.commutator(a, b))


def phi(rho, sigma) -> float:
    """2 ||[rho, sigma]||^2_HS; symmetric, in [0, 1] for density operators."""
    a = _as_matrix(rho)
    b = _as_matrix(sigma)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError(
            f"state dims differ: {a.shape[0]} vs {b.shape[0]}"
        )
    return _phi_raw(a, b)


def phi_pure_analytic(theta: float) -> float:
    """Closed form sin^2(2 theta) for a pure pair with overlap cos(theta)."""
    return float(np.sin(2.0 * theta) ** 2)


def phi_mub_analytic(d: int) -> float:
    """Closed form 4(d-1)/d^2 for the mutually unbiased pair in dimension d."""
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    return 4.0 * (d - 1) / float(d * d)


def phi_delta_series(history: WalkHistory, delta: int) -> QuantumnessSeries:
    """Phi between rho(t) and rho(t - delta) for t = delta .. t_max.

    delta=0 compares each state with itself and is identically zero.
    """
    if int(delta) != delta or delta < 0:
        raise ValidationError(f"lag must be a nonnegative integer, got {delta!r}")
    delta = int(delta)
    n = len(history.states)
    if delta >= n:
        raise ValidationError(f"lag {delta} is not below the history length {n}")
    t_max = n - 1
    times = np.arange(delta, t_max + 1, dtype=np.int64)
    if delta == 0:
        values = np.zeros(times.size, dtype=np.float64)
    else:
        values = np.array(
            [
                _phi_raw(history.states[t].matrix, history.states[t - delta].matrix)
                for t in times
            ]
        )
    label = f"mu={history.config.mu:g},delta={delta}"
    return QuantumnessSeries(times, values, label)


def phi_av(config: WalkConfig, t: int, normalized: bool = False) -> float:
    """Sum of phi over all ordered pairs of unnormalized trajectory branches.

    Branch weights enter through the matrices themselves (each branch carries
    its statistical weight), so the double sum needs no probability
    prefactors; diagonal pairs vanish. With normalized=True each branch is
    normalized and its pair term is weighted by the product of branch traces
    instead (a study variant, not the default convention).
    """
    branches = trajectory_branches(config, t)
    total = 0.0
    if normalized:
        traces = [float(np.trace(b).real) for b in branches]
        for j in range(len(branches)):
            if traces[j] <= 0.0:
                continue
            for k in range(j + 1, len(branches)):
                if traces[k] <= 0.0:
                    continue
                total += 2.0 * _phi_raw(branches[j], branches[k]) / (traces[j] * traces[k])
        return total
    for j in range(len(branches)):
        for k in range(j + 1, len(branches)):
            total += 2.0 * _phi_raw(branches[j], branches[k])
    return total


def phi_av_sampled(
    config: WalkConfig, t: int, n_samples: int, seed: int | None = None
) -> tuple[float, float]:
    """Monte Carlo estimate of phi_av with its standard error.

    Trajectory pairs are drawn with probability proportional to branch
    traces and reweighted so the estimator is unbiased for the exact ordered
    double sum. Deterministic for a fixed seed (config.seed when omitted).
    """
    if int(t) != t or t < 0:
        raise ValidationError(f"branch time must be a nonnegative integer, got {t!r}")
    if n_samples < 2:
        raise ValidationError(f"need at least 2 samples, got {n_samples}")
    t = int(t)
    if t > config.lattice_half_width:
        raise ValidationError(
            f"branch time {t} exceeds the lattice half-width {config.lattice_half_width}"
        )
    ops = coin_channel(config).operators
    if len(ops) == 1:
        return 0.0, 0.0
    coin = coin_operator(config.alpha)
    inverse = shift_operator(config.lattice_half_width).inverse
    rho0 = initial_state(config).matrix
    rng = np.random.default_rng(config.seed if seed is None else seed)

    def draw() -> tuple[np.ndarray, float]:
        state = rho0
        weight = 1.0
        for _ in range(t):
            state = kernels.permute_conjugate(
                kernels.coin_block_conjugate(state, coin), inverse
            )
            options = [kernels.coin_block_conjugate(state, op) for op in ops]
            traces = np.array([max(float(np.trace(b).real), 0.0) for b in options])
            total = traces.sum()
            probs = traces / total
            j = int(rng.choice(len(ops), p=probs))
            weight *= probs[j]
            state = options[j] / traces[j]
        return state, weight

    samples = np.empty(n_samples, dtype=np.float64)
    for i in range(n_samples):
        left, w_left = draw()
        right, w_right = draw()
        samples[i] = w_left * w_right * _phi_raw(left, right)
    estimate = float(samples.mean())
    std_error = float(samples.std(ddof=1) / np.sqrt(n_samples))
    return estimate, std_error


def phi_relative(
    noisy: QuantumnessSeries,
    noiseless: QuantumnessSeries,
    threshold: float = RATIO_THRESHOLD,
) -> QuantumnessSeries:
    """Pointwise noisy/noiseless ratio on the shared time grid.

    Points whose noiseless value is below threshold are dropped (undefined)
    rather than divided; a delta=0 input therefore yields an empty series.
    """
    if noisy.times.size != noiseless.times.size or not np.array_equal(
        noisy.times, noiseless.times
    ):
        raise ValidationError("relative series need identical time grids")
    defined = noiseless.values > threshold
    values = noisy.values[defined] / noiseless.values[defined]
    return QuantumnessSeries(
        noisy.times[defined], values, f"{noisy.label},relative"
    )
