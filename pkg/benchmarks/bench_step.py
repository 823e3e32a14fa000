#!/usr/bin/env python3
"""Benchmark the evolution-step kernels: compiled backend vs numpy fallback.

Times the three per-step operations (coin-block conjugation, shift
permutation, Kraus block sum) and one full noisy evolution at a
figure-scale lattice, verifies both backends agree, and prints a summary.

Run:
    python3 benchmarks/bench_step.py [--steps 100] [--iterations 50]
"""

import argparse
import time

import numpy as np

from phiwalk import kernels
from phiwalk.channels import amplitude_damping
from phiwalk.walk import WalkConfig, coin_operator, evolve, initial_state, shift_operator


def time_call(fn, *args, iterations: int, warmup: int = 3) -> float:
    for _ in range(warmup):
        fn(*args)
    start = time.perf_counter()
    for _ in range(iterations):
        fn(*args)
    return (time.perf_counter() - start) / iterations * 1000.0


def random_state(dim: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def bench_kernels(half_width: int, mu: float, iterations: int) -> list[tuple[str, float, float, float]]:
    dim = 2 * (2 * half_width + 1)
    rho = random_state(dim)
    coin = coin_operator(np.pi / 4)
    inverse = shift_operator(half_width).inverse
    ops = np.stack(amplitude_damping(mu).operators)

    rows = []
    cases = [
        ("coin_block_conjugate", (rho, coin),
         kernels.coin_block_conjugate_numpy,
         getattr(kernels, "coin_block_conjugate_numba", None)),
        ("permute_conjugate", (rho, inverse),
         kernels.permute_conjugate_numpy,
         getattr(kernels, "permute_conjugate_numba", None)),
        ("kraus_block_sum", (rho, ops),
         kernels.kraus_block_sum_numpy,
         getattr(kernels, "kraus_block_sum_numba", None)),
    ]
    for name, args, numpy_fn, numba_fn in cases:
        numpy_ms = time_call(numpy_fn, *args, iterations=iterations)
        if numba_fn is not None:
            assert np.allclose(numba_fn(*args), numpy_fn(*args), atol=1e-12), name
            numba_ms = time_call(numba_fn, *args, iterations=iterations)
        else:
            numba_ms = float("nan")
        speedup = numpy_ms / numba_ms if numba_ms == numba_ms else float("nan")
        rows.append((name, numpy_ms, numba_ms, speedup))
    return rows


def bench_evolution(steps: int, mu: float) -> float:
    start = time.perf_counter()
    evolve(WalkConfig(steps=steps, mu=mu))
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=100, help="walk steps for the full-evolution timing")
    parser.add_argument("--mu", type=float, default=0.1, help="damping strength")
    parser.add_argument("--iterations", type=int, default=50, help="timing iterations per kernel")
    args = parser.parse_args()

    half = max(args.steps, 1)
    dim = 2 * (2 * half + 1)
    print(f"backend: {kernels.ACTIVE_BACKEND} (numba available: {kernels.HAS_NUMBA})")
    print(f"lattice half-width {half}, density matrix {dim}x{dim}, mu={args.mu}")
    print()

    if kernels.HAS_NUMBA:
        t0 = time.perf_counter()
        rho = random_state(dim)
        kernels.coin_block_conjugate_numba(rho, coin_operator(np.pi / 4))
        print(f"numba first-call (compile/load) time: {time.perf_counter() - t0:.3f} s")
        print()

    rows = bench_kernels(half, args.mu, args.iterations)
    print("RESULTS SUMMARY")
    print(f"{'kernel':<24}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, numpy_ms, numba_ms, speedup in rows:
        numba_txt = f"{numba_ms:12.3f}" if numba_ms == numba_ms else f"{'n/a':>12}"
        speed_txt = f"{speedup:9.1f}x" if speedup == speedup else f"{'n/a':>10}"
        print(f"{name:<24}{numpy_ms:12.3f}{numba_txt}{speed_txt}")

    print()
    elapsed = bench_evolution(args.steps, args.mu)
    print(
        f"full evolution ({args.steps} steps, {kernels.ACTIVE_BACKEND} backend, "
        f"validation included): {elapsed:.2f} s"
    )


if __name__ == "__main__":
    main()
