"""Hot loops: one query segment against many candidate segments on the hyperboloid.

Two implementations share one contract. The numba one is used unless
``TEICHFORM_NO_JIT=1`` is set or numba cannot be imported; the numpy one is
always importable and is what the JIT path is checked against.

Status codes returned by ``segment_crossings``:

    0  disjoint
    1  transverse crossing of the two open segments
    2  degenerate point contact (near an endpoint, or near-tangent lines)
    3  collinear; ``sq`` then holds the signed overlap length
"""

from __future__ import annotations

import os

import numpy as np

NONE, CROSS, DEGENERATE, COLLINEAR = 0, 1, 2, 3

_SIGN = np.array([1.0, 1.0, -1.0])


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:  # pragma: no cover - exercised implicitly depending on the environment
    import warnings

    with warnings.catch_warnings():
        # old system TBB: numba falls back to another threading layer on its own
        warnings.filterwarnings("ignore", message=".*TBB.*")
        import numba
        import numba.np.ufunc.parallel  # noqa: F401

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # try OpenMP before TBB so an outdated system TBB is never probed
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_JIT = HAVE_NUMBA and not _env_flag("TEICHFORM_NO_JIT")

if HAVE_NUMBA and os.environ.get("TEICHFORM_THREADS"):
    try:
        numba.set_num_threads(max(1, min(int(os.environ["TEICHFORM_THREADS"]), numba.config.NUMBA_NUM_THREADS)))
    except ValueError:
        pass


def segment_crossings_numpy(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol):
    """Vectorised reference implementation (see module docstring)."""
    n = A.shape[0]
    status = np.zeros(n, dtype=np.int8)
    P = np.zeros((n, 3))
    sq = np.zeros(n)
    sc = np.zeros(n)
    if n == 0:
        return status, P, sq, sc

    Jqx = qx * _SIGN
    c = X @ Jqx

    near_par = np.abs(c) >= 1.0 - tol
    on_line = (np.abs(A @ Jqx) < tol) & (np.abs(B @ Jqx) < tol)
    col = near_par & on_line
    if col.any():
        Jua = qua * _SIGN
        s1 = np.arcsinh(A[col] @ Jua)
        s2 = np.arcsinh(B[col] @ Jua)
        lo = np.minimum(s1, s2)
        hi = np.maximum(s1, s2)
        overlap = np.minimum(hi, qlen) - np.maximum(lo, 0.0)
        idx = np.nonzero(col)[0]
        hit = overlap >= -tol
        status[idx[hit]] = COLLINEAR
        sq[idx[hit]] = overlap[hit]

    live = (~col) & (np.abs(c) < 1.0)
    if live.any():
        idx = np.nonzero(live)[0]
        p = np.cross(qx, X[idx]) * _SIGN
        n2 = -(p[:, 0] ** 2 + p[:, 1] ** 2 - p[:, 2] ** 2)
        ok = n2 > 0
        idx, p, n2 = idx[ok], p[ok], n2[ok]
        p = p / np.sqrt(n2)[:, None]
        p[p[:, 2] < 0] *= -1.0
        Jp = p * _SIGN
        sa = np.arcsinh(Jp @ qua)
        sb = np.arcsinh(Jp @ qub)
        ta = np.arcsinh(np.einsum("ij,ij->i", UA[idx], Jp))
        tb = np.arcsinh(np.einsum("ij,ij->i", UB[idx], Jp))
        outside = (sa < -tol) | (sb < -tol) | (ta < -tol) | (tb < -tol)
        inside = (sa > tol) & (sb > tol) & (ta > tol) & (tb > tol)
        tangent = near_par[idx]
        st = np.where(outside, NONE, np.where(inside & ~tangent, CROSS, DEGENERATE)).astype(np.int8)
        status[idx] = st
        P[idx] = p
        sq[idx] = sa
        sc[idx] = ta
    return status, P, sq, sc


if HAVE_NUMBA:

    @numba.njit(cache=True, parallel=True)
    def _segment_crossings_jit(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol):
        n = A.shape[0]
        status = np.zeros(n, dtype=np.int8)
        P = np.zeros((n, 3))
        sq = np.zeros(n)
        sc = np.zeros(n)
        jx0, jx1, jx2 = qx[0], qx[1], -qx[2]
        for j in numba.prange(n):
            c = X[j, 0] * jx0 + X[j, 1] * jx1 + X[j, 2] * jx2
            near_par = abs(c) >= 1.0 - tol
            da = A[j, 0] * jx0 + A[j, 1] * jx1 + A[j, 2] * jx2
            db = B[j, 0] * jx0 + B[j, 1] * jx1 + B[j, 2] * jx2
            if near_par and abs(da) < tol and abs(db) < tol:
                s1 = np.arcsinh(A[j, 0] * qua[0] + A[j, 1] * qua[1] - A[j, 2] * qua[2])
                s2 = np.arcsinh(B[j, 0] * qua[0] + B[j, 1] * qua[1] - B[j, 2] * qua[2])
                lo = min(s1, s2)
                hi = max(s1, s2)
                overlap = min(hi, qlen) - max(lo, 0.0)
                if overlap >= -tol:
                    status[j] = COLLINEAR
                    sq[j] = overlap
                continue
            if abs(c) >= 1.0:
                continue
            p0 = qx[1] * X[j, 2] - qx[2] * X[j, 1]
            p1 = qx[2] * X[j, 0] - qx[0] * X[j, 2]
            p2 = -(qx[0] * X[j, 1] - qx[1] * X[j, 0])
            n2 = -(p0 * p0 + p1 * p1 - p2 * p2)
            if n2 <= 0.0:
                continue
            s = 1.0 / np.sqrt(n2)
            if p2 < 0:
                s = -s
            p0 *= s
            p1 *= s
            p2 *= s
            sa = np.arcsinh(p0 * qua[0] + p1 * qua[1] - p2 * qua[2])
            sb = np.arcsinh(p0 * qub[0] + p1 * qub[1] - p2 * qub[2])
            ta = np.arcsinh(p0 * UA[j, 0] + p1 * UA[j, 1] - p2 * UA[j, 2])
            tb = np.arcsinh(p0 * UB[j, 0] + p1 * UB[j, 1] - p2 * UB[j, 2])
            P[j, 0] = p0
            P[j, 1] = p1
            P[j, 2] = p2
            sq[j] = sa
            sc[j] = ta
            if sa < -tol or sb < -tol or ta < -tol or tb < -tol:
                status[j] = NONE
            elif sa > tol and sb > tol and ta > tol and tb > tol and not near_par:
                status[j] = CROSS
            else:
                status[j] = DEGENERATE
        return status, P, sq, sc

    def segment_crossings_jit(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol):
        return _segment_crossings_jit(
            np.ascontiguousarray(qa, dtype=np.float64),
            np.ascontiguousarray(qx, dtype=np.float64),
            np.ascontiguousarray(qua, dtype=np.float64),
            np.ascontiguousarray(qub, dtype=np.float64),
            float(qlen),
            np.ascontiguousarray(A, dtype=np.float64),
            np.ascontiguousarray(B, dtype=np.float64),
            np.ascontiguousarray(X, dtype=np.float64),
            np.ascontiguousarray(UA, dtype=np.float64),
            np.ascontiguousarray(UB, dtype=np.float64),
            float(tol),
        )

else:  # pragma: no cover
    segment_crossings_jit = None


def segment_crossings(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol):
    if USE_JIT:
        return segment_crossings_jit(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol)
    return segment_crossings_numpy(qa, qx, qua, qub, qlen, A, B, X, UA, UB, tol)


def point_segment_position(Q, x, ua, ub):
    """For points Q (n, 3): sinh-distance to the line and arclengths of the foot from both ends."""
    Q = np.atleast_2d(Q)
    d = Q @ (x * _SIGN)
    foot = Q - d[:, None] * x[None, :]
    n2 = -(foot[:, 0] ** 2 + foot[:, 1] ** 2 - foot[:, 2] ** 2)
    foot = foot / np.sqrt(np.maximum(n2, 1e-300))[:, None]
    Jf = foot * _SIGN
    return np.abs(d), np.arcsinh(Jf @ ua), np.arcsinh(Jf @ ub)
