"""Dense complex-matrix algebra: commutators, norms, Kronecker products.

All operators are square numpy arrays of complex128. Helpers here are the
only place allowed to reject malformed matrices; downstream modules assume
validated inputs. The Hermitian eigensolver sits on validation paths only,
never inside the evolution loop.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, ResourceLimitError, ValidationError

# Tolerance conventions used across the package.
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
PSD_TOL = -1e-9
ELEMENTWISE_TOL = 1e-12

# Largest operator dimension the dense layer will materialize.
DIM_LIMIT = 4096


def as_operator(a: np.ndarray, name: str = "operator") -> np.ndarray:
    """Coerce to a square, finite complex128 array or raise ValidationError."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    return m


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError(
            f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}"
        )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return ab - ba; anti-Hermitian whenever a and b are Hermitian."""
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    _check_same_dim(a, b)
    return a @ b - b @ a


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm: sum of |a_jk|^2, equal to Tr(A^dag A)."""
    a = as_operator(a)
    return float(np.sum(a.real**2 + a.imag**2))


def kron(a: np.ndarray, b: np.ndarray, dim_limit: int = DIM_LIMIT) -> np.ndarray:
    """Kronecker product a (x) b; the left factor is the slow index.

    Raises ResourceLimitError when the product dimension would exceed
    dim_limit (the dense layer refuses to materialize such matrices).
    """
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    out_dim = a.shape[0] * b.shape[0]
    if out_dim > dim_limit:
        raise ResourceLimitError(
            f"kron output dim {out_dim} exceeds the configured limit {dim_limit}"
        )
    return np.kron(a, b)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.ascontiguousarray(as_operator(a).conj().T)


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(as_operator(a)))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    _check_same_dim(a, b)
    return a @ b


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    _check_same_dim(a, b)
    return a + b


def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_operator(a, "a")
    b = as_operator(b, "b")
    _check_same_dim(a, b)
    return a - b


def scale(c: complex, a: np.ndarray) -> np.ndarray:
    return complex(c) * as_operator(a)


def hermiticity_defect(a: np.ndarray) -> float:
    """Max elementwise |a - a^dag|, the distance from the Hermitian cone."""
    a = as_operator(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitian_eigenvalues(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """All real eigenvalues of a Hermitian matrix, in nondecreasing order.

    Rejects inputs whose Hermiticity defect exceeds tol. The eigenvalue sum
    matches the trace to 1e-9 * dim; used for PSD validation of states, not
    by the evolution hot path.
    """
    a = as_operator(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValidationError(
            f"matrix is not Hermitian: max |a - a^dag| = {defect:.3e} > {tol:.1e}"
        )
    return np.linalg.eigvalsh((a + a.conj().T) / 2)
