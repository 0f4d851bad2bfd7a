"""
Density-matrix constructors and validation.

The workhorse is :func:`family_state`, the one-parameter qubit-qutrit family

    rho(p) = p/2 (|00><00| + |01><01| + |11><11| + |12><12|
                  + |01><11| + |11><01| + |00><12| + |12><00|)
             + (1-2p)/2 (|02><02| + |10><10| + |02><10| + |10><02|),

valid for ``0 <= p <= 1/2`` and separable only at ``p = 1/3``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonHermitian, NotPositive, ParameterOutOfRange, TraceNotOne
from .linalg import QUBIT_QUTRIT, BipartiteIndex, as_matrix, eigvalsh, hermiticity_error, partial_trace

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10

P_MIN, P_MAX = 0.0, 0.5


@dataclass(frozen=True)
class DensityMatrix:
    """A validated bipartite state. Construct through :func:`validate`."""

    matrix: np.ndarray = field(repr=False)
    idx: BipartiteIndex = QUBIT_QUTRIT

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.idx.dim

    def reduced(self, keep: str) -> np.ndarray:
        return partial_trace(self.matrix, self.idx, keep)

    def to_json(self) -> dict:
        return {
            "dimA": self.idx.dim_a,
            "dimB": self.idx.dim_b,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DensityMatrix":
        idx = BipartiteIndex(int(obj["dimA"]), int(obj["dimB"]))
        m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return validate(m, idx)


def check_density(m: np.ndarray) -> None:
    """Raise unless ``m`` is Hermitian, unit-trace and positive semidefinite."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
    err = hermiticity_error(m)
    if err > HERMITIAN_TOL:
        raise NonHermitian(f"matrix deviates from its adjoint by {err:.3e}")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr.real:.15g}{tr.imag:+.3g}j")
    lo = eigvalsh(m)[0]
    if lo < -POSITIVITY_TOL:
        raise NotPositive(f"smallest eigenvalue {lo:.3e}")


def validate(rho, idx: BipartiteIndex = QUBIT_QUTRIT) -> DensityMatrix:
    m = np.array(as_matrix(rho), copy=True)
    idx.check(m)
    check_density(m)
    return DensityMatrix(m, idx)


def family_state(p: float) -> DensityMatrix:
    if not (P_MIN <= p <= P_MAX):
        raise ParameterOutOfRange(f"family parameter p={p} outside p in [0, 0.5]")
    a = p / 2.0
    b = (1.0 - 2.0 * p) / 2.0
    # basis order |00>, |01>, |02>, |10>, |11>, |12>
    m = np.zeros((6, 6), dtype=np.complex128)
    for k in (0, 1, 4, 5):
        m[k, k] = a
    m[2, 2] = m[3, 3] = b
    m[1, 4] = m[4, 1] = a
    m[0, 5] = m[5, 0] = a
    m[2, 3] = m[3, 2] = b
    return validate(m)


def maximally_mixed(idx: BipartiteIndex = QUBIT_QUTRIT) -> DensityMatrix:
    return validate(np.eye(idx.dim) / idx.dim, idx)


def product_state(rho_a, rho_b) -> DensityMatrix:
    ra, rb = as_matrix(rho_a), as_matrix(rho_b)
    check_density(ra)
    check_density(rb)
    idx = BipartiteIndex(ra.shape[0], rb.shape[0])
    return validate(np.kron(ra, rb), idx)


def pure_state(psi, idx: BipartiteIndex = QUBIT_QUTRIT) -> DensityMatrix:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != idx.dim:
        raise DimensionMismatch(f"state vector length {psi.size} != {idx.dim}")
    psi = psi / np.linalg.norm(psi)
    return validate(np.outer(psi, psi.conj()), idx)


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    """Ginibre-sampled density matrix; used for fixtures and self-checks."""
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real
