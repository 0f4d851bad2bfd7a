"""
Self-check suites run by ``discord-dyn verify``.

Each check returns a :class:`CheckResult` holding the worst residual it saw;
all randomness comes from fixed seeds.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .channels import (
    KrausChannel, coherence_factor, completeness_residual, dephasing_operators,
    kraus_vs_closed_form, lift_to_composite, apply_matrix, evolve_closed_form_matrix,
)
from .correlations import OptimizerConfig, discord, negativity
from .dynamics import default_grid, negativity_closed_form
from .linalg import QUBIT_QUTRIT, hermitian_eigen, partial_trace, partial_transpose
from .states import family_state, product_state, random_density, validate

SEED = 20120917


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    limit: float
    detail: str = ""


def _result(name, residual, limit, detail=""):
    return CheckResult(name, bool(residual <= limit), float(residual), float(limit), detail)


def check_completeness(corrupt_omega: bool = False) -> CheckResult:
    worst = 0.0
    for gt in np.linspace(0.0, 10.0, 41):
        g = coherence_factor(gt)
        w = np.sqrt(1.0 - g * g) * (2.0 if corrupt_omega else 1.0)
        ch = KrausChannel.from_operators(dephasing_operators(g, w))
        worst = max(worst, completeness_residual(ch), completeness_residual(lift_to_composite(ch)))
    return _result("kraus completeness", worst, 1e-14, "omega doubled" if corrupt_omega else "")


def check_dual_paths() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(100):
        rho = validate(random_density(rng, 6))
        for gt in np.linspace(0.0, 10.0, 20):
            worst = max(worst, kraus_vs_closed_form(rho, gt))
    return _result("kraus sum vs closed form", worst, 1e-12)


def check_populations() -> CheckResult:
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(50):
        rho = random_density(rng, 6)
        for gt in (0.5, 2.0, 10.0):
            ch = lift_to_composite(KrausChannel.from_operators(dephasing_operators(coherence_factor(gt))))
            out = apply_matrix(ch, rho)
            worst = max(worst, np.abs(np.diag(out) - np.diag(rho)).max())
    return _result("population invariance", worst, 1e-14)


def check_eigensolver() -> CheckResult:
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for n in (2, 3, 6):
        for _ in range(200):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = a + a.conj().T
            w, v, _ = hermitian_eigen(h)
            worst = max(worst,
                        np.abs(v @ np.diag(w) @ v.conj().T - h).max(),
                        np.abs(v.conj().T @ v - np.eye(n)).max(),
                        abs(w.sum() - np.trace(h).real))
    return _result(f"jacobi eigensolver ({_kernels.BACKEND})", worst, 1e-10)


def check_partial_ops() -> CheckResult:
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(100):
        rho = random_density(rng, 6)
        pt = partial_transpose(rho, QUBIT_QUTRIT, "A")
        worst = max(worst,
                    np.abs(partial_transpose(pt, QUBIT_QUTRIT, "A") - rho).max(),
                    np.abs(pt - pt.conj().T).max(),
                    abs(np.trace(partial_trace(rho, QUBIT_QUTRIT, "A")) - 1.0),
                    abs(np.linalg.norm(pt) - np.linalg.norm(rho)))
    return _result("partial trace / transpose", worst, 1e-12)


def check_negativity_closed_form() -> CheckResult:
    worst = 0.0
    grid = default_grid()
    for p in (0.10, 0.15, 0.23, 0.30, 1.0 / 3.0, 0.40):
        rho0 = family_state(p).matrix
        for gt in grid[::10]:
            g = coherence_factor(gt)
            rho = validate(evolve_closed_form_matrix(rho0, g))
            worst = max(worst, abs(negativity(rho) - negativity_closed_form(p, g)))
    return _result("negativity closed form", worst, 1e-9)


def check_product_discord() -> CheckResult:
    rng = np.random.default_rng(SEED + 4)
    cfg = OptimizerConfig(coarse_grid_theta=13, coarse_grid_phi=25)
    worst = 0.0
    for _ in range(5):
        rep = discord(product_state(random_density(rng, 2), random_density(rng, 3)), cfg)
        worst = max(worst, abs(rep.discord), abs(rep.mutual_information))
    return _result("product-state discord", worst, 1e-6)


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_eigensolver,
    check_partial_ops,
    check_completeness,
    check_dual_paths,
    check_populations,
    check_negativity_closed_form,
    check_product_discord,
)


def run_all(corrupt_omega: bool = False) -> list[CheckResult]:
    out = []
    for check in CHECKS:
        if check is check_completeness:
            out.append(check(corrupt_omega))
        else:
            out.append(check())
    return out


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  max residual  limit"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  ({r.detail})" if r.detail else ""
        lines.append(f"{r.name:<{width}}  {status:<6}  {r.residual:.3e}     {r.limit:.0e}{extra}")
    return "\n".join(lines)
