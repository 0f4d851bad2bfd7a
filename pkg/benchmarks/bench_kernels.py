"""Compare the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times one 6x6 Jacobi eigendecomposition, one coarse-grid objective sweep
(61 x 121 directions) and a short trajectory on each backend, and checks that
both backends agree.
"""
import argparse
import time

import numpy as np

from discord_dyn import _kernels
from discord_dyn.correlations import OptimizerConfig, _objective_blocks, coarse_grid
from discord_dyn.dynamics import TrajectoryConfig, make_grid, run_trajectory
from discord_dyn.states import family_state, random_density


def best_of(fn, repeat):
    fn()  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    m = random_density(np.random.default_rng(0), 6)
    blocks = _objective_blocks(family_state(0.15))
    tt, pp = (a.ravel() for a in np.meshgrid(*coarse_grid(OptimizerConfig()), indexing="ij"))
    cfg = TrajectoryConfig(0.15, make_grid(0, 2, 0.1))

    rows, outputs = [], {}
    for backend in ("numba", "numpy"):
        eig = best_of(lambda: _kernels.jacobi_eigh(m, backend=backend), args.repeat)
        sweep = best_of(lambda: _kernels.conditional_entropy_batch(*blocks, tt, pp, backend=backend), args.repeat)
        saved = _kernels.BACKEND
        _kernels.BACKEND = backend
        try:
            traj = best_of(lambda: run_trajectory(cfg, workers=1), 1)
            outputs[backend] = run_trajectory(cfg, workers=1).discord
        finally:
            _kernels.BACKEND = saved
        rows.append((backend, eig, sweep, traj))

    print(f"{'backend':8s} {'eigh 6x6':>12s} {'grid 61x121':>12s} {'21-pt traj':>12s}")
    for backend, eig, sweep, traj in rows:
        print(f"{backend:8s} {eig * 1e6:10.1f}us {sweep * 1e3:10.2f}ms {traj:11.3f}s")
    (_, e1, s1, t1), (_, e2, s2, t2) = rows
    print(f"speedup  {e2 / e1:11.1f}x {s2 / s1:11.1f}x {t2 / t1:11.1f}x")
    print(f"max |D_numba - D_numpy| = {np.abs(outputs['numba'] - outputs['numpy']).max():.1e}")


if __name__ == "__main__":
    main()
