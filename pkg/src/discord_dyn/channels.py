"""
Operator-sum channels and the local qutrit dephasing model.

Two evolution routes exist on purpose. :func:`apply` runs the generic Kraus
sum with the dephasing operators lifted to ``I_2 (x) M_i``; :func:`evolve_closed_form`
multiplies entries by the damping factors of the evolved 6x6 matrix written
out in the product basis. Each is used to check the other.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CompletenessViolation, DimensionMismatch, NegativeParameter, ParameterOutOfRange
from .linalg import QUBIT_QUTRIT, BipartiteIndex, as_matrix
from .states import DensityMatrix, validate

COMPLETENESS_TOL = 1e-12
GAMMA_FLOOR = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple
    dim: int

    def __post_init__(self):
        for k in self.operators:
            if k.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Kraus operator of shape {k.shape} on a {self.dim}-dim space")
            k.setflags(write=False)

    @classmethod
    def from_operators(cls, ops) -> "KrausChannel":
        ops = tuple(np.array(as_matrix(k), copy=True) for k in ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        return cls(ops, ops[0].shape[0])

    @classmethod
    def identity(cls, dim: int) -> "KrausChannel":
        return cls.from_operators([np.eye(dim)])


@dataclass(frozen=True)
class DephasingParams:
    decay_rate: float
    time: float

    def __post_init__(self):
        if self.decay_rate < 0 or self.time < 0:
            raise NegativeParameter(f"decay rate and time must be >= 0, got {self.decay_rate}, {self.time}")

    @property
    def gamma_t(self) -> float:
        return self.decay_rate * self.time

    @property
    def gamma(self) -> float:
        return coherence_factor(self.gamma_t)

    @property
    def omega(self) -> float:
        return float(np.sqrt(1.0 - self.gamma ** 2))


def coherence_factor(gamma_t: float) -> float:
    """``exp(-Gamma t / 2)``, floored at 1e-9 for the asymptotic regime."""
    if gamma_t < 0:
        raise NegativeParameter(f"Gamma t must be >= 0, got {gamma_t}")
    return max(float(np.exp(-0.5 * gamma_t)), GAMMA_FLOOR)


def dephasing_operators(gamma: float, omega: float | None = None) -> list[np.ndarray]:
    """``diag(1, g, g)``, ``diag(0, w, 0)``, ``diag(0, 0, w)`` with ``w = sqrt(1 - g^2)`` by default."""
    if omega is None:
        omega = np.sqrt(1.0 - gamma * gamma)
    return [
        np.diag([1.0, gamma, gamma]).astype(np.complex128),
        np.diag([0.0, omega, 0.0]).astype(np.complex128),
        np.diag([0.0, 0.0, omega]).astype(np.complex128),
    ]


def qutrit_dephasing(decay_rate: float, time: float) -> KrausChannel:
    """Equal-rate qutrit dephasing channel after time ``time``."""
    params = DephasingParams(decay_rate, time)
    return KrausChannel.from_operators(dephasing_operators(params.gamma))


def qutrit_dephasing_at(gamma_t: float) -> KrausChannel:
    """Same channel parameterised by dimensionless ``Gamma t``."""
    return qutrit_dephasing(1.0, gamma_t)


def completeness_residual(ch: KrausChannel) -> float:
    """``max |sum_i K_i^dagger K_i - I|``."""
    acc = sum(k.conj().T @ k for k in ch.operators)
    return float(np.abs(acc - np.eye(ch.dim)).max())


def lift_to_composite(ch: KrausChannel, idx: BipartiteIndex = QUBIT_QUTRIT) -> KrausChannel:
    """Act with ``ch`` on the second factor only: ``K_i -> I_A (x) K_i``."""
    if ch.dim != idx.dim_b:
        raise DimensionMismatch(f"channel acts on dim {ch.dim}, second factor has dim {idx.dim_b}")
    eye = np.eye(idx.dim_a)
    return KrausChannel.from_operators([np.kron(eye, k) for k in ch.operators])


def apply_matrix(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho, dtype=np.complex128)
    for k in ch.operators:
        out += k @ rho @ k.conj().T
    return out


def apply(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Operator-sum map ``rho -> sum_i K_i rho K_i^dagger``."""
    if ch.dim != rho.dim:
        raise DimensionMismatch(f"channel dim {ch.dim} vs state dim {rho.dim}")
    res = completeness_residual(ch)
    if res > COMPLETENESS_TOL:
        raise CompletenessViolation(res)
    return validate(apply_matrix(ch, rho.matrix), rho.idx)


# Power of gamma multiplying each entry of the evolved state, basis |00>..|12>.
DAMPING_EXPONENTS = np.array([
    [0, 1, 1, 0, 1, 1],
    [1, 0, 2, 1, 0, 2],
    [1, 2, 0, 1, 2, 0],
    [0, 1, 1, 0, 1, 1],
    [1, 0, 2, 1, 0, 2],
    [1, 2, 0, 1, 2, 0],
])


def damping_pattern(gamma: float) -> np.ndarray:
    return float(gamma) ** DAMPING_EXPONENTS


def evolve_closed_form_matrix(rho0: np.ndarray, gamma: float) -> np.ndarray:
    if rho0.shape != (6, 6):
        raise DimensionMismatch(f"closed-form evolution is defined for 6x6 states, got {rho0.shape}")
    if not (0.0 < gamma <= 1.0):
        raise ParameterOutOfRange(f"coherence factor must lie in (0, 1], got {gamma}")
    return rho0 * damping_pattern(gamma)


def evolve_closed_form(rho0: DensityMatrix, gamma: float) -> DensityMatrix:
    if rho0.idx != QUBIT_QUTRIT:
        raise DimensionMismatch("closed-form evolution needs a qubit-qutrit state")
    return validate(evolve_closed_form_matrix(rho0.matrix, gamma), rho0.idx)


def kraus_vs_closed_form(rho0: DensityMatrix, gamma_t: float) -> float:
    """Max entrywise gap between the two evolution routes at ``Gamma t``."""
    lifted = lift_to_composite(qutrit_dephasing_at(gamma_t))
    a = apply_matrix(lifted, rho0.matrix)
    b = evolve_closed_form_matrix(rho0.matrix, coherence_factor(gamma_t))
    return float(np.abs(a - b).max())
