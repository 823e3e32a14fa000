"""Self-contained invariant suite behind the `validate` CLI subcommand.

Each check re-derives an expected value independently (hand-computed
constants, dense-matrix reference paths, analytic closed forms) and compares
the library against it. Sample counts are sized so the whole suite finishes
in well under a minute; the test suite runs the same properties at full
acceptance-scale counts.
"""

from __future__ import annotations

import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import channels, kernels, linalg, measures, states, walk
from .experiments import ExperimentConfig, read_sweep_csv, run_noise_sweep, write_sweep_csv

_SEED = 20260817


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _random_pure(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def _random_density(rng: np.random.Generator, dim: int, max_rank: int = 4) -> np.ndarray:
    rank = int(rng.integers(1, max_rank + 1))
    weights = rng.random(rank)
    weights /= weights.sum()
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for w in weights:
        v = _random_pure(rng, dim)
        acc += w * np.outer(v, v.conj())
    return acc


def check_algebra_oracles() -> CheckResult:
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    comm = linalg.commutator(sx, sz)
    if not np.allclose(comm, -2j * sy, atol=1e-14):
        return CheckResult("algebra_oracles", False, "commutator(sx, sz) != -2i sy")
    if abs(linalg.hs_norm_sq(comm) - 8.0) > 1e-13:
        return CheckResult("algebra_oracles", False, "hs_norm_sq oracle 8 failed")
    if not np.array_equal(
        linalg.kron(sz, np.eye(2)), np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
    ):
        return CheckResult("algebra_oracles", False, "kron(sz, I2) mismatch")
    rng = np.random.default_rng(_SEED)
    for _ in range(50):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        if abs(linalg.trace(a @ b) - linalg.trace(b @ a)) > 1e-10:
            return CheckResult("algebra_oracles", False, "trace cyclicity failed")
    eigs = linalg.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]).astype(complex))
    if not np.allclose(eigs, [1.0, 2.0, 3.0], atol=1e-12):
        return CheckResult("algebra_oracles", False, "diag eigenvalues mismatch")
    return CheckResult("algebra_oracles", True, "commutator, norm, kron, trace, eigs")


def check_analytic_oracles() -> CheckResult:
    worst = 0.0
    for theta in np.linspace(0.0, np.pi / 2, 50):
        pair = states.rotated_pure_pair(theta)
        worst = max(worst, abs(measures.phi(*pair) - measures.phi_pure_analytic(theta)))
    for d in range(2, 9):
        pair = states.mub_pair(d)
        worst = max(worst, abs(measures.phi(*pair) - measures.phi_mub_analytic(d)))
    ok = worst <= 1e-10
    return CheckResult("analytic_oracles", ok, f"max deviation {worst:.2e}")


def check_phi_range() -> CheckResult:
    rng = np.random.default_rng(_SEED)
    lo, hi = np.inf, -np.inf
    for _ in range(2000):
        dim = int(rng.integers(2, 9))
        value = measures.phi(_random_density(rng, dim), _random_density(rng, dim))
        lo, hi = min(lo, value), max(hi, value)
    ok = lo >= measures.PHI_MIN and hi <= measures.PHI_MAX
    return CheckResult("phi_range", ok, f"phi in [{lo:.2e}, {hi:.6f}] over 2000 pairs")


def check_phi_convexity() -> CheckResult:
    rng = np.random.default_rng(_SEED + 1)
    worst = -np.inf
    for _ in range(300):
        dim = int(rng.integers(2, 7))
        sizes = (int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        ensembles = []
        for n in sizes:
            w = rng.random(n)
            w /= w.sum()
            ensembles.append((w, [_random_pure(rng, dim) for _ in range(n)]))
        (p, psis), (q, phis) = ensembles
        mix_a = sum(
            wj * np.outer(v, v.conj()) for wj, v in zip(p, psis)
        )
        mix_b = sum(
            wk * np.outer(v, v.conj()) for wk, v in zip(q, phis)
        )
        bound = sum(
            wj * wk * measures.phi(np.outer(u, u.conj()), np.outer(v, v.conj()))
            for wj, u in zip(p, psis)
            for wk, v in zip(q, phis)
        )
        worst = max(worst, measures.phi(mix_a, mix_b) - bound)
    ok = worst <= 1e-10
    return CheckResult("phi_convexity", ok, f"max (phi - bound) = {worst:.2e}")


def check_channel_completeness() -> CheckResult:
    worst = 0.0
    for mu in np.linspace(0.0, 1.0, 101):
        for ctor in (channels.amplitude_damping, channels.amplitude_damping_conventional):
            report = channels.validate(ctor(float(mu)))
            worst = max(worst, report.max_deviation)
            if not report.ok:
                return CheckResult("channel_completeness", False, report.message)
    # The non-trace-preserving diagonal pair must be flagged, deviation mu.
    bad = channels.KrausChannel(
        (
            np.diag([np.sqrt(0.7), 1.0]).astype(complex),
            np.diag([0.0, np.sqrt(0.3)]).astype(complex),
        ),
        "diagonal_pair",
    )
    report = channels.validate(bad)
    if report.ok or abs(report.max_deviation - 0.3) > 1e-12:
        return CheckResult(
            "channel_completeness", False, "diagonal pair not flagged at 0.3"
        )
    ok = worst <= 1e-14
    return CheckResult("channel_completeness", ok, f"max deviation {worst:.2e}")


def check_channel_actions() -> CheckResult:
    ground = states.density_from_pure([1.0, 0.0])
    flipped = channels.apply(channels.amplitude_damping(1.0), ground)
    if not np.allclose(flipped.matrix, np.diag([0.0, 1.0]), atol=1e-14):
        return CheckResult("channel_actions", False, "mu=1 does not map |0><0| to |1><1|")
    for mu in (0.0, 0.3, 0.8, 1.0):
        mixed = states.DensityOperator(np.eye(2, dtype=complex) / 2)
        out = channels.apply(channels.amplitude_damping(mu), mixed)
        expected = np.diag([(1 - mu) / 2, (1 + mu) / 2]).astype(complex)
        if not np.allclose(out.matrix, expected, atol=1e-14):
            return CheckResult("channel_actions", False, f"I/2 image wrong at mu={mu}")
    excited = states.density_from_pure([0.0, 1.0])
    branches = channels.branch_apply(channels.amplitude_damping(0.5), excited.matrix)
    if not (
        len(branches) == 2
        and np.allclose(branches[0], excited.matrix, atol=1e-14)
        and np.allclose(branches[1], 0.0, atol=1e-14)
    ):
        return CheckResult("channel_actions", False, "branch_apply on |1><1| wrong")
    return CheckResult("channel_actions", True, "damping action and branches")


def check_walk_unitarity() -> CheckResult:
    shift = walk.shift_operator(5)
    dim = shift.matrix.shape[0]
    if not np.allclose(shift.matrix @ shift.matrix.conj().T, np.eye(dim), atol=1e-14):
        return CheckResult("walk_unitarity", False, "shift is not unitary")
    for alpha in np.linspace(0.0, np.pi, 9):
        coin = walk.coin_operator(alpha)
        if not np.allclose(coin @ coin.conj().T, np.eye(2), atol=1e-14):
            return CheckResult("walk_unitarity", False, f"coin not unitary at {alpha}")
        unitary = shift.matrix @ linalg.kron(coin, np.eye(11, dtype=complex))
        if not np.allclose(unitary.conj().T @ unitary, np.eye(dim), atol=1e-13):
            return CheckResult("walk_unitarity", False, f"U not unitary at {alpha}")
    return CheckResult("walk_unitarity", True, "C, W, and U unitary at T=5")


def check_walk_first_steps() -> CheckResult:
    cfg = walk.WalkConfig(steps=2)
    history = walk.evolve(cfg)
    dist1 = walk.position_distribution(history.states[1], 1)
    x = dist1.positions()
    p_left = float(dist1.probabilities[x == -1][0])
    p_right = float(dist1.probabilities[x == 1][0])
    if abs(p_left - 0.5) > 1e-12 or abs(p_right - 0.5) > 1e-12:
        return CheckResult("walk_first_steps", False, "one-step split is not 1/2, 1/2")
    dist2 = walk.position_distribution(history.states[2], 2)
    off_support = dist2.probabilities[np.isin(dist2.positions(), [-2, 0, 2], invert=True)]
    if np.any(off_support > 1e-12):
        return CheckResult("walk_first_steps", False, "two-step support beyond {-2,0,2}")
    return CheckResult("walk_first_steps", True, "P(+-1)=1/2 then parity support")


def check_parity_and_range() -> CheckResult:
    cfg = walk.WalkConfig(steps=8)
    history = walk.evolve(cfg)
    for t, state in enumerate(history.states):
        dist = walk.position_distribution(state, t)
        x = dist.positions()
        bad_parity = dist.probabilities[(x + t) % 2 == 1]
        beyond = dist.probabilities[np.abs(x) > t]
        if np.any(bad_parity > 1e-12) or np.any(beyond > 1e-12):
            return CheckResult("parity_and_range", False, f"support leak at t={t}")
    return CheckResult("parity_and_range", True, "parity zeros exact through t=8")


def check_dense_crosscheck() -> CheckResult:
    cfg = walk.WalkConfig(steps=20, mu=0.15, lattice_half_width=20)
    fast = walk.evolve(cfg)
    dense = walk.evolve_dense(cfg)
    worst = max(
        float(np.max(np.abs(fast.states[t].matrix - dense[t])))
        for t in range(len(dense))
    )
    ok = worst <= 1e-11
    return CheckResult("dense_crosscheck", ok, f"max |perm - dense| = {worst:.2e}")


def check_kernel_backends() -> CheckResult:
    if not kernels.HAS_NUMBA:
        return CheckResult("kernel_backends", True, "numpy backend only (numba off)")
    rng = np.random.default_rng(_SEED)
    half = 17
    dim = 2 * (2 * half + 1)
    rho = _random_density(rng, dim)
    coin = walk.coin_operator(0.9)
    inv = walk.shift_operator(half).inverse
    ops = np.stack(channels.amplitude_damping(0.35).operators)
    pairs = (
        (kernels.coin_block_conjugate_numba(rho, coin), kernels.coin_block_conjugate_numpy(rho, coin)),
        (kernels.permute_conjugate_numba(rho, inv), kernels.permute_conjugate_numpy(rho, inv)),
        (kernels.kraus_block_sum_numba(rho, ops), kernels.kraus_block_sum_numpy(rho, ops)),
    )
    worst = max(float(np.max(np.abs(a - b))) for a, b in pairs)
    ok = worst <= 1e-13
    return CheckResult("kernel_backends", ok, f"numba vs numpy max diff {worst:.2e}")


def check_trace_and_purity() -> CheckResult:
    for mu in (0.0, 0.3):
        history = walk.evolve(walk.WalkConfig(steps=30, mu=mu))
        traces = [abs(float(np.trace(s.matrix).real) - 1.0) for s in history.states]
        if max(traces) > 1e-9:
            return CheckResult("trace_and_purity", False, f"trace drift {max(traces):.2e}")
        purities = [s.purity() for s in history.states]
        if mu > 0 and any(
            later > earlier + 1e-9 for earlier, later in zip(purities, purities[1:])
        ):
            return CheckResult("trace_and_purity", False, "purity increased under noise")
    return CheckResult("trace_and_purity", True, "trace 1e-9, purity non-increasing")


def check_branch_consistency() -> CheckResult:
    cfg = walk.WalkConfig(steps=3, mu=0.3)
    branches = walk.trajectory_branches(cfg, 3)
    if len(branches) != 8:
        return CheckResult("branch_consistency", False, f"expected 8 branches, got {len(branches)}")
    trace_sum = sum(float(np.trace(b).real) for b in branches)
    if abs(trace_sum - 1.0) > 1e-8:
        return CheckResult("branch_consistency", False, f"branch traces sum to {trace_sum!r}")
    total = sum(branches)
    target = walk.evolve(cfg).states[3].matrix
    worst = float(np.max(np.abs(total - target)))
    ok = worst <= 1e-10
    return CheckResult("branch_consistency", ok, f"sum vs evolve diff {worst:.2e}")


def _phi_av_brute(cfg: walk.WalkConfig, t: int) -> float:
    """Naive dense-matrix enumeration, independent of the kernel pipeline."""
    import itertools

    size = cfg.lattice_size
    unitary = walk.shift_operator(cfg.lattice_half_width).matrix @ np.kron(
        walk.coin_operator(cfg.alpha), np.eye(size, dtype=complex)
    )
    lifted = [np.kron(op, np.eye(size, dtype=complex)) for op in walk.coin_channel(cfg).operators]
    rho0 = walk.initial_state(cfg).matrix
    branches = []
    for combo in itertools.product(range(len(lifted)), repeat=t):
        rho = rho0
        for j in combo:
            rho = unitary @ rho @ unitary.conj().T
            rho = lifted[j] @ rho @ lifted[j].conj().T
        branches.append(rho)
    total = 0.0
    for a in branches:
        for b in branches:
            comm = a @ b - b @ a
            total += 2.0 * float(np.sum(np.abs(comm) ** 2))
    return total


def check_phi_av() -> CheckResult:
    cfg = walk.WalkConfig(steps=4, mu=0.3)
    exact = measures.phi_av(cfg, 4)
    brute = _phi_av_brute(cfg, 4)
    if abs(exact - brute) > 1e-10:
        return CheckResult("phi_av", False, f"exact {exact!r} vs brute {brute!r}")
    estimate, err = measures.phi_av_sampled(cfg, 4, n_samples=3000, seed=_SEED)
    if err <= 0 or abs(estimate - exact) > 5 * err:
        return CheckResult(
            "phi_av", False, f"sampled {estimate:.6f} +- {err:.6f} vs exact {exact:.6f}"
        )
    if measures.phi_av(walk.WalkConfig(steps=4, mu=0.0), 4) != 0.0:
        return CheckResult("phi_av", False, "unitary phi_av is not 0")
    return CheckResult("phi_av", True, "brute match, sampled within 5 SE")


def check_series_and_relative() -> CheckResult:
    history = walk.evolve(walk.WalkConfig(steps=12))
    zero = measures.phi_delta_series(history, 0)
    if np.any(zero.values != 0.0):
        return CheckResult("series_and_relative", False, "delta=0 series not all zero")
    series = measures.phi_delta_series(history, 2)
    ones = measures.phi_relative(series, series)
    if not np.all(ones.values == 1.0):
        return CheckResult("series_and_relative", False, "self-ratio is not 1")
    empty = measures.phi_relative(zero, zero)
    if len(empty) != 0:
        return CheckResult("series_and_relative", False, "zero/zero points not dropped")
    return CheckResult("series_and_relative", True, "lagged series and ratios behave")


def check_csv_roundtrip() -> CheckResult:
    cfg = ExperimentConfig(
        walk=walk.WalkConfig(steps=8), sweep_kind="noise_sweep", mu_values=(0.0, 0.4)
    )
    result = run_noise_sweep(cfg)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "sweep.csv"
        write_sweep_csv(result, path)
        first = path.read_bytes()
        metadata, columns = read_sweep_csv(path)
        write_sweep_csv(result, path)
        second = path.read_bytes()
    if first != second:
        return CheckResult("csv_roundtrip", False, "rewrite is not byte-identical")
    for name, col in result.columns.items():
        if not np.array_equal(columns[name], col.astype(np.float64)):
            return CheckResult("csv_roundtrip", False, f"column {name} not exact")
    if metadata.get("sweep.kind") != "noise_sweep":
        return CheckResult("csv_roundtrip", False, "metadata echo missing")
    return CheckResult("csv_roundtrip", True, "byte-identical, exact round-trip")


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_algebra_oracles,
    check_analytic_oracles,
    check_phi_range,
    check_phi_convexity,
    check_channel_completeness,
    check_channel_actions,
    check_walk_unitarity,
    check_walk_first_steps,
    check_parity_and_range,
    check_dense_crosscheck,
    check_kernel_backends,
    check_trace_and_purity,
    check_branch_consistency,
    check_phi_av,
    check_series_and_relative,
    check_csv_roundtrip,
)


def run_suite(emit=print) -> int:
    """Run every check; report one line each; return the failure count."""
    failures = 0
    for check in ALL_CHECKS:
        try:
            result = check()
        except Exception as exc:  # a crashed check is a failed check
            result = CheckResult(check.__name__, False, f"raised {exc!r}")
        status = "ok  " if result.ok else "FAIL"
        emit(f"{status} {result.name}: {result.detail}")
        if not result.ok:
            failures += 1
    emit(
        f"{len(ALL_CHECKS) - failures}/{len(ALL_CHECKS)} checks passed"
        + (f", {failures} FAILED" if failures else "")
    )
    return failures
