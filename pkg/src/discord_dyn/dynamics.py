"""
Trajectories over the dimensionless time grid ``Gamma t`` and detection of
entanglement sudden death and frozen / invariant discord.
"""

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from .channels import coherence_factor, evolve_closed_form, kraus_vs_closed_form
from .correlations import CorrelationReport, OptimizerConfig, discord
from .errors import OracleMismatch, ParameterOutOfRange
from .states import P_MAX, P_MIN, DensityMatrix, family_state

DEATH_TOL = 1e-9
FLAT_TOL = 1e-3
ORACLE_TOL = 1e-12

CSV_HEADER = ("gamma_t", "negativity", "mutual_info", "classical", "discord", "theta_opt", "phi_opt")
SWEEP_HEADER = ("p", "sudden_death_time", "discord_class", "asymptotic_discord")
DEFAULT_SWEEP = tuple(round(0.05 * k, 2) for k in range(11))

DiscordClass = Literal["invariant", "frozen-then-decay", "decaying"]


def fmt(x: float) -> str:
    """Shortest representation with at most 12 significant digits."""
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def make_grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Points ``start, start+step, ...`` up to ``stop``, inclusive when step divides the span."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    if stop < start:
        raise ValueError("grid stop must not precede start")
    n = (stop - start) / step
    count = int(math.floor(n + 1e-9)) + 1
    return tuple(round(start + k * step, 12) for k in range(count))


def default_grid() -> tuple[float, ...]:
    return make_grid(0.0, 10.0, 0.05)


def worker_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("DISCORD_DYN_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def death_time_closed_form(p: float) -> float | None:
    """Sudden-death time of the family state under qutrit dephasing.

    Negativity is ``max(0, (1-2p) g - p) + max(0, p g - (1-2p))`` with
    ``g = exp(-Gamma t / 2)``, so it vanishes at ``Gamma t = 2 |ln((1-2p)/p)|``.
    ``None`` where it never vanishes (``p = 0`` and ``p = 1/2``).
    """
    if p <= 0.0 or p >= 0.5:
        return None
    t = abs(2.0 * math.log((1.0 - 2.0 * p) / p))
    return 0.0 if t < 1e-12 else t


def negativity_closed_form(p: float, gamma: float) -> float:
    return max(0.0, (1 - 2 * p) * gamma - p) + max(0.0, p * gamma - (1 - 2 * p))


@dataclass(frozen=True)
class TrajectoryConfig:
    p: float | None
    gamma_t: tuple[float, ...] = field(default_factory=default_grid)
    optimizer: OptimizerConfig = OptimizerConfig()
    initial_state: DensityMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma_t", tuple(float(g) for g in self.gamma_t))
        g = np.asarray(self.gamma_t)
        if g.size == 0 or g[0] != 0.0:
            raise ValueError("time grid must start at Gamma t = 0")
        if np.any(np.diff(g) <= 0):
            raise ValueError("time grid must be strictly ascending")
        if self.initial_state is None:
            if self.p is None:
                raise ValueError("need either p or an initial state")
            if not (P_MIN <= self.p <= P_MAX):
                raise ParameterOutOfRange(f"family parameter p={self.p} outside p in [0, 0.5]")

    def initial(self) -> DensityMatrix:
        return self.initial_state if self.initial_state is not None else family_state(self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "gammaT": list(self.gamma_t), "optimizer": self.optimizer.to_json()}


@dataclass(frozen=True)
class Trajectory:
    config: TrajectoryConfig
    points: tuple[tuple[float, CorrelationReport], ...]

    @property
    def gamma_t(self) -> np.ndarray:
        return np.array([g for g, _ in self.points])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for _, r in self.points])

    @property
    def negativity(self) -> np.ndarray:
        return self.column("negativity")

    @property
    def discord(self) -> np.ndarray:
        return self.column("discord")

    @property
    def mutual_information(self) -> np.ndarray:
        return self.column("mutual_information")

    def rows(self):
        for g, r in self.points:
            s = r.optimal_setting
            yield (g, r.negativity, r.mutual_information, r.classical, r.discord, s.theta, s.phi)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows():
            w.writerow([fmt(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "points": [{"gammaT": g, "report": r.to_json()} for g, r in self.points],
        }


def read_trajectory_csv(text: str) -> dict[str, np.ndarray]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected trajectory header {header}")
    data = np.array([[float(x) for x in row] for row in reader])
    return {name: data[:, k] for k, name in enumerate(header)}


@dataclass(frozen=True)
class PhenomenonSummary:
    sudden_death_time: float | None
    discord_class: DiscordClass
    frozen_until: float | None
    asymptotic_discord: float

    def to_json(self) -> dict:
        return {
            "suddenDeathTime": self.sudden_death_time,
            "discordClass": self.discord_class,
            "frozenUntil": self.frozen_until,
            "asymptoticDiscord": self.asymptotic_discord,
        }


def run_trajectory(cfg: TrajectoryConfig, workers: int | None = None) -> Trajectory:
    """Evolve the initial state over the grid and report correlations at every point.

    States come from the closed-form damping; the Kraus-sum route is compared
    against it at the first, middle and last grid points.
    """
    rho0 = cfg.initial()
    grid = cfg.gamma_t
    for k in sorted({0, len(grid) // 2, len(grid) - 1}):
        gap = kraus_vs_closed_form(rho0, grid[k])
        if gap > ORACLE_TOL:
            raise OracleMismatch(f"Kraus and closed-form evolution differ by {gap:.3e} at Gamma t = {grid[k]}")

    def point(gt: float) -> tuple[float, CorrelationReport]:
        rho = evolve_closed_form(rho0, coherence_factor(gt))
        return gt, discord(rho, cfg.optimizer)

    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = tuple(pool.map(point, grid))
    else:
        points = tuple(point(g) for g in grid)
    return Trajectory(cfg, points)


def detect_sudden_death(tr: Trajectory, death_tol: float = DEATH_TOL) -> float | None:
    """First grid time from which negativity stays at or below ``death_tol``."""
    neg = tr.negativity
    g = tr.gamma_t
    if neg[-1] > death_tol:
        return None
    k = len(neg) - 1
    while k > 0 and neg[k - 1] <= death_tol:
        k -= 1
    return float(g[k])


def classify_discord(tr: Trajectory, flat_tol: float = FLAT_TOL,
                     death_tol: float = DEATH_TOL) -> PhenomenonSummary:
    d = tr.discord
    g = tr.gamma_t
    dev = np.abs(d - d[0])
    final = float(d[-1])
    death = detect_sudden_death(tr, death_tol)
    off = np.flatnonzero(dev > flat_tol)
    if off.size == 0:
        return PhenomenonSummary(death, "invariant", None, final)
    first = int(off[0])
    if first >= 2 and final > flat_tol:
        return PhenomenonSummary(death, "frozen-then-decay", float(g[first - 1]), final)
    return PhenomenonSummary(death, "decaying", None, final)


def sweep_p(p_values: Sequence[float], grid: Sequence[float] | None = None,
            opt: OptimizerConfig = OptimizerConfig(), flat_tol: float = FLAT_TOL,
            death_tol: float = DEATH_TOL, workers: int | None = None) -> list[tuple[float, PhenomenonSummary]]:
    if not p_values:
        raise ValueError("empty p list")
    grid = default_grid() if grid is None else tuple(grid)
    cfgs = [TrajectoryConfig(p, grid, opt) for p in p_values]
    out = []
    for cfg in cfgs:
        tr = run_trajectory(cfg, workers)
        out.append((cfg.p, classify_discord(tr, flat_tol, death_tol)))
    return out


def sweep_csv(results: Sequence[tuple[float, PhenomenonSummary]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for p, s in results:
        death = "" if s.sudden_death_time is None else fmt(s.sudden_death_time)
        w.writerow([fmt(p), death, s.discord_class, fmt(s.asymptotic_discord)])
    return buf.getvalue()


def sweep_json(results: Sequence[tuple[float, PhenomenonSummary]]) -> list[dict]:
    return [{"p": p, **s.to_json()} for p, s in results]


def dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n")
