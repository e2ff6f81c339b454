"""Integer hot loops: lattice-point counting and twist-matrix composition.

Two interchangeable backends.  The numba one compiles explicit loops; the
numpy one vectorises the same arithmetic.  Set ``LCY_NO_NUMBA=1`` to force
numpy (also used automatically when numba is missing).  Both work in int64;
inputs in this package stay many orders of magnitude below overflow.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("LCY_NO_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _count_points_loop(minv, rays, bound, s_lo, s_hi, t_lo, t_hi):
    # u = minv @ (s, t); keep u with <u, v_i> >= -bound_i for every ray
    count = 0
    k = rays.shape[0]
    for s in range(s_lo, s_hi + 1):
        for t in range(t_lo, t_hi + 1):
            ux = minv[0, 0] * s + minv[0, 1] * t
            uy = minv[1, 0] * s + minv[1, 1] * t
            ok = True
            for i in range(k):
                if ux * rays[i, 0] + uy * rays[i, 1] < -bound[i]:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def _compose_loop(cycles):
    n, dim = cycles.shape
    out = np.eye(dim, dtype=np.int64)
    tmp = np.zeros((dim, dim), dtype=np.int64)
    for c in range(n):
        # T_c = I - c phi_c^T with phi_c = (-sum d_c, r_c, ..., r_c); out <- out @ T_c
        r = cycles[c, 0]
        sd = 0
        for j in range(1, dim):
            sd += cycles[c, j]
        for a in range(dim):
            oc = 0
            for b in range(dim):
                oc += out[a, b] * cycles[c, b]
            for b in range(dim):
                phi = -sd if b == 0 else r
                tmp[a, b] = out[a, b] - oc * phi
        for a in range(dim):
            for b in range(dim):
                out[a, b] = tmp[a, b]
    return out


def count_points_numpy(minv, rays, bound, s_lo, s_hi, t_lo, t_hi):
    if s_hi < s_lo or t_hi < t_lo:
        return 0
    s, t = np.meshgrid(np.arange(s_lo, s_hi + 1, dtype=np.int64),
                       np.arange(t_lo, t_hi + 1, dtype=np.int64), indexing="ij")
    st = np.stack([s.ravel(), t.ravel()])
    u = minv @ st
    vals = rays @ u
    return int(np.count_nonzero(np.all(vals >= -bound[:, None], axis=0)))


def compose_numpy(cycles):
    dim = cycles.shape[1]
    out = np.eye(dim, dtype=np.int64)
    for c in cycles:
        phi = np.full(dim, c[0], dtype=np.int64)
        phi[0] = -c[1:].sum()
        out = out - np.outer(out @ c, phi)
    return out


if numba is not None:
    count_points_numba = numba.njit(cache=True)(_count_points_loop)
    compose_numba = numba.njit(cache=True)(_compose_loop)
else:  # pragma: no cover
    count_points_numba = count_points_numpy
    compose_numba = compose_numpy


def count_points(minv, rays, bound, s_lo, s_hi, t_lo, t_hi):
    args = (np.ascontiguousarray(minv, dtype=np.int64), np.ascontiguousarray(rays, dtype=np.int64),
            np.ascontiguousarray(bound, dtype=np.int64), int(s_lo), int(s_hi), int(t_lo), int(t_hi))
    if USE_NUMBA:
        return int(count_points_numba(*args))
    return count_points_numpy(*args)


def compose_twists(cycles):
    """Matrix of tau_{c_0} o tau_{c_1} o ... o tau_{c_n} on Z^{1+k}."""
    cycles = np.ascontiguousarray(cycles, dtype=np.int64)
    if cycles.ndim != 2:
        raise ValueError("cycles must be a 2-d array")
    if USE_NUMBA:
        return compose_numba(cycles)
    return compose_numpy(cycles)
