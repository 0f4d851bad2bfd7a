"""
Correlation functionals of a qubit-qutrit state: negativity, mutual
information, classical correlation and quantum discord (all entropies in bits).

Classical correlation is optimised over rank-1 projective measurements on the
qubit, ``Pi_{1,2} = (I +/- n.sigma)/2`` with ``n = (sin t cos f, sin t sin f, cos t)``.
The search is a coarse (theta, phi) grid followed by a Nelder-Mead polish
started from the best grid cell.
"""

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, ParameterOutOfRange
from .linalg import entropy_from_eigenvalues, eigvalsh, partial_transpose
from .states import DensityMatrix

TWO_PI = 2.0 * np.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class MeasurementSetting:
    """Bloch angles of the qubit projector pair; theta in [0, pi), phi in [0, 2 pi)."""

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta < np.pi) or not (0.0 <= self.phi < TWO_PI):
            raise ParameterOutOfRange(
                f"measurement angles outside theta in [0, pi), phi in [0, 2pi): ({self.theta}, {self.phi})")

    @property
    def direction(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "MeasurementSetting":
        """Fold arbitrary real angles onto the canonical ranges.

        The projector pair is unordered, so ``n`` and ``-n`` name the same
        measurement; directions are folded onto the upper hemisphere so that
        ``theta`` lands in ``[0, pi/2]``.
        """
        st = np.sin(theta)
        n = np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])
        n /= np.linalg.norm(n)
        if n[2] < 0.0:
            n = -n
        if np.hypot(n[0], n[1]) < 1e-15:
            return cls(0.0, 0.0)
        t = float(np.arctan2(np.hypot(n[0], n[1]), n[2]))
        f = float(np.arctan2(n[1], n[0]) % TWO_PI)
        if f >= TWO_PI:
            f = 0.0
        return cls(t, f)


@dataclass(frozen=True)
class OptimizerConfig:
    coarse_grid_theta: int = 61
    coarse_grid_phi: int = 121
    refine_iterations: int = 200
    refine_tolerance: float = 1e-10

    def __post_init__(self):
        if self.coarse_grid_theta < 2 or self.coarse_grid_phi < 2:
            raise ValueError("coarse grid needs at least 2 points per angle")
        if self.refine_tolerance <= 0:
            raise ValueError("refine_tolerance must be positive")
        if self.refine_iterations < 0:
            raise ValueError("refine_iterations must be >= 0")

    def to_json(self) -> dict:
        return {
            "coarseGridTheta": self.coarse_grid_theta,
            "coarseGridPhi": self.coarse_grid_phi,
            "refineIterations": self.refine_iterations,
            "refineTolerance": self.refine_tolerance,
        }


@dataclass(frozen=True)
class CorrelationReport:
    negativity: float
    mutual_information: float
    classical: float
    discord: float
    optimal_setting: MeasurementSetting
    optimizer_evals: int

    def to_json(self) -> dict:
        return {
            "negativity": self.negativity,
            "mutualInformation": self.mutual_information,
            "classical": self.classical,
            "discord": self.discord,
            "optimalSetting": asdict(self.optimal_setting),
            "optimizerEvals": self.optimizer_evals,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CorrelationReport":
        return cls(
            negativity=obj["negativity"],
            mutual_information=obj["mutualInformation"],
            classical=obj["classical"],
            discord=obj["discord"],
            optimal_setting=MeasurementSetting(**obj["optimalSetting"]),
            optimizer_evals=obj["optimizerEvals"],
        )


class Minimum(NamedTuple):
    value: float
    setting: MeasurementSetting
    coarse_value: float
    evaluations: int


def negativity(rho: DensityMatrix) -> float:
    """Sum of ``|eta| - eta`` over the partial-transpose spectrum (smaller factor transposed)."""
    side = "A" if rho.idx.dim_a <= rho.idx.dim_b else "B"
    eta = eigvalsh(partial_transpose(rho.matrix, rho.idx, side))
    return float(np.sum(np.abs(eta) - eta))


def mutual_information(rho: DensityMatrix) -> float:
    s_a = entropy_from_eigenvalues(eigvalsh(rho.reduced("A")))
    s_b = entropy_from_eigenvalues(eigvalsh(rho.reduced("B")))
    s_ab = entropy_from_eigenvalues(eigvalsh(rho.matrix))
    return s_a + s_b - s_ab


def projectors(s: MeasurementSetting) -> tuple[np.ndarray, np.ndarray]:
    nx, ny, nz = s.direction
    n_sigma = nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
    eye = np.eye(2, dtype=np.complex128)
    p1 = 0.5 * (eye + n_sigma)
    return p1, eye - p1


def _objective_blocks(rho: DensityMatrix):
    if rho.idx.dim_a != 2:
        raise DimensionMismatch("measurements are parameterised for a qubit first factor")
    db = rho.idx.dim_b
    r = rho.matrix.reshape(2, db, 2, db)
    r00, r11 = r[0, :, 0, :], r[1, :, 1, :]
    return 0.5 * (r00 + r11), r00 - r11, r[1, :, 0, :], r[0, :, 1, :]


def _evaluate(blocks, thetas, phis) -> np.ndarray:
    vals, status = _kernels.conditional_entropy_batch(*blocks, thetas, phis)
    if status < 0:
        raise NoConvergence("Jacobi iteration failed inside the conditional-entropy objective")
    return vals


def measured_conditional_entropy(rho: DensityMatrix, s: MeasurementSetting) -> float:
    """``sum_k p_k S(rho_k^B)`` after measuring the qubit with the projector pair of ``s``."""
    return float(_evaluate(_objective_blocks(rho), np.array([s.theta]), np.array([s.phi]))[0])


def coarse_grid(cfg: OptimizerConfig) -> tuple[np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, np.pi, cfg.coarse_grid_theta)
    phis = np.linspace(0.0, TWO_PI, cfg.coarse_grid_phi, endpoint=False)
    return thetas, phis


def minimize_conditional_entropy(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> Minimum:
    blocks = _objective_blocks(rho)
    thetas, phis = coarse_grid(cfg)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    grid_vals = _evaluate(blocks, tt.ravel(), pp.ravel())
    best = int(np.argmin(grid_vals))
    coarse = float(grid_vals[best])
    x0 = np.array([tt.ravel()[best], pp.ravel()[best]])
    evals = grid_vals.size
    if cfg.refine_iterations == 0:
        return Minimum(coarse, MeasurementSetting.from_angles(*x0), coarse, evals)

    def f(x):
        return float(_evaluate(blocks, x[:1], x[1:])[0])

    step = np.array([thetas[1] - thetas[0], phis[1] - phis[0]])
    simplex = np.array([x0, x0 + [step[0], 0.0], x0 + [0.0, step[1]]])
    res = minimize(f, x0, method="Nelder-Mead", options=dict(
        initial_simplex=simplex, maxiter=cfg.refine_iterations,
        fatol=cfg.refine_tolerance, xatol=1e-9))
    evals += int(res.nfev)
    if res.fun <= coarse:
        value, x = float(res.fun), res.x
    else:
        value, x = coarse, x0
    return Minimum(value, MeasurementSetting.from_angles(*x), coarse, evals)


def classical_correlation(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> tuple[float, MeasurementSetting]:
    m = minimize_conditional_entropy(rho, cfg)
    s_b = entropy_from_eigenvalues(eigvalsh(rho.reduced("B")))
    return s_b - m.value, m.setting


def discord(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> CorrelationReport:
    """Full correlation report; discord is computed as ``I - C``."""
    m = minimize_conditional_entropy(rho, cfg)
    s_b = entropy_from_eigenvalues(eigvalsh(rho.reduced("B")))
    total = mutual_information(rho)
    disc = total - (s_b - m.value)
    # round-trip so that discord + classical == mutual_information in floating point
    classical = total - disc
    return CorrelationReport(
        negativity=negativity(rho),
        mutual_information=total,
        classical=classical,
        discord=disc,
        optimal_setting=m.setting,
        optimizer_evals=m.evaluations,
    )
