"""
Hot numeric kernels: cyclic complex Jacobi eigensolver and the batched
measured-conditional-entropy objective.

Every kernel exists twice: a numba ``@njit`` version (scalar loops) and a
pure-numpy version (vectorised over a batch axis). Both run the same
algorithm. The numba path is used when numba imports and the environment
variable ``DISCORD_DYN_NUMBA`` is not set to ``0``/``false``/``off``.
"""

import os

import numpy as np

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PROB_EPS = 1e-12

_flag = os.environ.get("DISCORD_DYN_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "false", "off", "no")

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _want_numba
BACKEND = "numba" if USE_NUMBA else "numpy"


def _njit(**kw):
    opts = dict(cache=True, nogil=True, fastmath=False)
    opts.update(kw)
    if HAVE_NUMBA:
        return numba.njit(**opts)
    return lambda f: f


###############################################################################
# numba path

@_njit()
def _jacobi_inplace_nb(a, v, want_vectors, tol, max_sweeps):
    """Diagonalise Hermitian ``a`` in place; returns sweeps used or -1."""
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = tol * max(1.0, np.sqrt(scale))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off = max(off, abs(a[i, j]))
        if off <= thresh:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= thresh * 1e-3:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                sgn = 1.0 if tau >= 0.0 else -1.0
                t = sgn / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ec = np.conj(apq / r)
                jpp = c + 0j
                jpq = s + 0j
                jqp = -s * ec
                jqq = c * ec
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * jpp + akq * jqp
                    a[k, q] = akp * jpq + akq * jqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(jpp) * apk + np.conj(jqp) * aqk
                    a[q, k] = np.conj(jpq) * apk + np.conj(jqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = vkp * jpp + vkq * jqp
                        v[k, q] = vkp * jpq + vkq * jqq
    return -1


@_njit()
def _jacobi_eigh_nb(m, tol, max_sweeps):
    n = m.shape[0]
    a = m.astype(np.complex128).copy()
    v = np.eye(n).astype(np.complex128)
    sweeps = _jacobi_inplace_nb(a, v, True, tol, max_sweeps)
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w)
    return w[order], v[:, order].copy(), sweeps


@_njit()
def _cond_entropy_nb(half_b, bz, r10, r01, thetas, phis, tol, max_sweeps):
    m = thetas.shape[0]
    d = half_b.shape[0]
    out = np.empty(m)
    a = np.empty((d, d), dtype=np.complex128)
    dummy = np.empty((1, 1), dtype=np.complex128)
    inv_ln2 = 1.0 / np.log(2.0)
    status = 0
    for idx in range(m):
        st = np.sin(thetas[idx])
        nx = st * np.cos(phis[idx])
        ny = st * np.sin(phis[idx])
        nz = np.cos(thetas[idx])
        cm = complex(nx, -ny)
        cp = complex(nx, ny)
        total = 0.0
        for sign in (1.0, -1.0):
            for i in range(d):
                for j in range(d):
                    x = nz * bz[i, j] + cm * r10[i, j] + cp * r01[i, j]
                    a[i, j] = half_b[i, j] + 0.5 * sign * x
            pk = 0.0
            for i in range(d):
                pk += a[i, i].real
            if pk <= PROB_EPS:
                continue
            sw = _jacobi_inplace_nb(a, dummy, False, tol, max_sweeps)
            if sw < 0:
                status = -1
            h = 0.0
            for i in range(d):
                mu = a[i, i].real
                if mu > 0.0:
                    h -= mu * np.log(mu)
            total += (h + pk * np.log(pk)) * inv_ln2
        out[idx] = total
    return out, status


###############################################################################
# numpy path

def _jacobi_batch_np(a, want_vectors, tol, max_sweeps):
    """Vectorised cyclic Jacobi over a stack ``a`` of shape (b, n, n)."""
    a = np.array(a, dtype=np.complex128, copy=True)
    nb, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy() if want_vectors else None
    thresh = tol * np.maximum(1.0, np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2))))
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        off = np.abs(a[:, iu[0], iu[1]]).max(axis=1) if n > 1 else np.zeros(nb)
        if np.all(off <= thresh):
            return a.diagonal(axis1=1, axis2=2).real.copy(), v, sweep
        if sweep == max_sweeps:
            return a.diagonal(axis1=1, axis2=2).real.copy(), v, -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                r = np.abs(apq)
                active = r > thresh * 1e-3
                rs = np.where(active, r, 1.0)
                tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * rs)
                sgn = np.where(tau >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                c = np.where(active, 1.0 / np.sqrt(1.0 + t * t), 1.0)
                s = np.where(active, t * c, 0.0)
                ec = np.where(active, np.conj(apq) / rs, 1.0)
                jpp, jpq, jqp, jqq = c, s, -s * ec, c * ec
                ap = a[:, :, p].copy()
                aq = a[:, :, q]
                a[:, :, p] = ap * jpp[:, None] + aq * jqp[:, None]
                a[:, :, q] = ap * jpq[:, None] + aq * jqq[:, None]
                ap = a[:, p, :].copy()
                aq = a[:, q, :]
                a[:, p, :] = jpp[:, None] * ap + np.conj(jqp)[:, None] * aq
                a[:, q, :] = jpq[:, None] * ap + np.conj(jqq)[:, None] * aq
                a[:, p, q] = np.where(active, 0.0, a[:, p, q])
                a[:, q, p] = np.where(active, 0.0, a[:, q, p])
                a[:, p, p] = a[:, p, p].real
                a[:, q, q] = a[:, q, q].real
                if want_vectors:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q]
                    v[:, :, p] = vp * jpp[:, None] + vq * jqp[:, None]
                    v[:, :, q] = vp * jpq[:, None] + vq * jqq[:, None]
    raise AssertionError("unreachable")


def _jacobi_eigh_np(m, tol, max_sweeps):
    w, v, sweeps = _jacobi_batch_np(m[None], True, tol, max_sweeps)
    order = np.argsort(w[0], kind="stable")
    return w[0][order], v[0][:, order], sweeps


def _cond_entropy_np(half_b, bz, r10, r01, thetas, phis, tol, max_sweeps):
    st = np.sin(thetas)
    nx, ny, nz = st * np.cos(phis), st * np.sin(phis), np.cos(thetas)
    x = (nz[:, None, None] * bz
         + (nx - 1j * ny)[:, None, None] * r10
         + (nx + 1j * ny)[:, None, None] * r01)
    total = np.zeros(thetas.shape[0])
    status = 0
    for sign in (1.0, -1.0):
        a = half_b + 0.5 * sign * x
        pk = np.trace(a, axis1=1, axis2=2).real
        mu, _, sw = _jacobi_batch_np(a, False, tol, max_sweeps)
        if sw < 0:
            status = -1
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -np.where(mu > 0.0, mu * np.log2(np.where(mu > 0.0, mu, 1.0)), 0.0).sum(axis=1)
            h += pk * np.log2(np.where(pk > PROB_EPS, pk, 1.0))
        total += np.where(pk > PROB_EPS, h, 0.0)
    return total, status


###############################################################################
# dispatch

def jacobi_eigh(m, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS, backend=None):
    """
    Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(eigenvalues ascending, eigenvectors as columns, sweeps)``;
    ``sweeps == -1`` signals that the sweep budget ran out.
    """
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if (backend or BACKEND) == "numba":
        return _jacobi_eigh_nb(m, tol, max_sweeps)
    return _jacobi_eigh_np(m, tol, max_sweeps)


def conditional_entropy_batch(half_b, bz, r10, r01, thetas, phis,
                              tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS,
                              backend=None):
    """
    Post-measurement conditional entropy of the qutrit, in bits, for a batch
    of qubit measurement directions.

    The 6x6 state enters through four 3x3 blocks: ``half_b`` is half the qutrit
    marginal, ``bz = R00 - R11``, ``r10 = R10`` and ``r01 = R01`` where
    ``Rii'`` is the qutrit block at qubit indices (i, i'). For direction ``n``
    the unnormalised conditional states are ``half_b +/- (n_z bz +
    (n_x - i n_y) r10 + (n_x + i n_y) r01) / 2``.

    Returns ``(values, status)``; ``status == -1`` flags a Jacobi failure.
    """
    thetas = np.ascontiguousarray(thetas, dtype=np.float64).ravel()
    phis = np.ascontiguousarray(phis, dtype=np.float64).ravel()
    blocks = [np.ascontiguousarray(b, dtype=np.complex128) for b in (half_b, bz, r10, r01)]
    if (backend or BACKEND) == "numba":
        return _cond_entropy_nb(*blocks, thetas, phis, tol, max_sweeps)
    return _cond_entropy_np(*blocks, thetas, phis, tol, max_sweeps)
