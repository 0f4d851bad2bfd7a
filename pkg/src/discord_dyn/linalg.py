"""
Dense complex matrix helpers and Hermitian spectral primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. Composite
indices follow the product basis ``|ij>`` with the first factor major, i.e.
``k = i * dim_b + j``.
"""

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NegativeEigenvalue, NoConvergence, NonHermitian

Subsystem = Literal["A", "B"]

HERMITIAN_TOL = 1e-12
ENTROPY_CLAMP = 1e-10


@dataclass(frozen=True)
class BipartiteIndex:
    """Dimensions of a bipartite Hilbert space; defaults to qubit x qutrit."""

    dim_a: int = 2
    dim_b: int = 3

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def flat(self, i: int, j: int) -> int:
        return i * self.dim_b + j

    def check(self, m: np.ndarray) -> None:
        if m.ndim != 2 or m.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"expected {self.dim}x{self.dim} matrix for {self.dim_a}x{self.dim_b} system, got {m.shape}")


QUBIT_QUTRIT = BipartiteIndex(2, 3)


class HermitianSpectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


def as_matrix(m) -> np.ndarray:
    return np.asarray(m, dtype=np.complex128)


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def hermitian_eigen(m, tol: float = HERMITIAN_TOL) -> HermitianSpectrum:
    """
    Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix.
    tol : float
        Maximum allowed ``|m - m^dagger|`` entry.

    Returns
    -------
    HermitianSpectrum
        Eigenvalues ascending; eigenvectors as orthonormal columns.
    """
    m = as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"hermitian_eigen needs a square matrix, got {m.shape}")
    err = hermiticity_error(m)
    if err > tol:
        raise NonHermitian(f"matrix deviates from its adjoint by {err:.3e}")
    m = 0.5 * (m + m.conj().T)
    w, v, sweeps = _kernels.jacobi_eigh(m)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi iteration exceeded {_kernels.JACOBI_MAX_SWEEPS} sweeps")
    return HermitianSpectrum(w, v, int(sweeps))


def eigvalsh(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    return hermitian_eigen(m, tol).eigenvalues


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``(A (x) B)[(i j),(k l)] = A[i,k] B[j,l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def _blocks(rho: np.ndarray, idx: BipartiteIndex) -> np.ndarray:
    # axes (i, j, i', j')
    idx.check(rho)
    return rho.reshape(idx.dim_a, idx.dim_b, idx.dim_a, idx.dim_b)


def partial_trace(rho, idx: BipartiteIndex = QUBIT_QUTRIT, keep: Subsystem = "A") -> np.ndarray:
    """Reduced matrix on the ``keep`` subsystem."""
    r = _blocks(as_matrix(rho), idx)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, idx: BipartiteIndex = QUBIT_QUTRIT, on: Subsystem = "A") -> np.ndarray:
    """Transpose the indices of one factor: ``rho^{T_A}[(i j),(i' j')] = rho[(i' j),(i j')]``."""
    r = _blocks(as_matrix(rho), idx)
    if on == "A":
        out = r.transpose(2, 1, 0, 3)
    elif on == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"on must be 'A' or 'B', got {on!r}")
    return np.ascontiguousarray(out).reshape(idx.dim, idx.dim)


def entropy_from_eigenvalues(w: np.ndarray, clamp_tol: float = ENTROPY_CLAMP) -> float:
    """``-sum w log2 w`` with ``0 log 0 = 0``; small negatives are clamped."""
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -clamp_tol:
        raise NegativeEigenvalue(f"eigenvalue {w.min():.3e} below -{clamp_tol:g}")
    w = w[w > 0.0]
    return float(-(w * np.log2(w)).sum()) if w.size else 0.0


def von_neumann_entropy(rho, clamp_tol: float = ENTROPY_CLAMP) -> float:
    """Von Neumann entropy in bits."""
    return entropy_from_eigenvalues(eigvalsh(rho), clamp_tol)
