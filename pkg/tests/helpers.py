"""Shared random-state constructors for the test suite."""

import numpy as np


def random_pure(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, dim: int, max_rank: int = 4) -> np.ndarray:
    """Random mixture of up to max_rank random pure states."""
    rank = int(rng.integers(1, max_rank + 1))
    weights = rng.random(rank)
    weights /= weights.sum()
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for w in weights:
        v = random_pure(rng, dim)
        acc += w * np.outer(v, v.conj())
    return acc


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))
