"""Hot numeric kernels: cocycle walks and triangle rasterization.

Each kernel has a scalar version (numba-compiled when the backend allows)
and a vectorized numpy fallback; `lyapunov_logs` and `fill_triangles`
dispatch on the active backend. Both paths consume the same pre-drawn
edge choices, so results agree to floating rounding.
"""

from __future__ import annotations

import numpy as np

from .backend import NUMBA_ENABLED, njit_maybe

# ---------------------------------------------------------------------------
# Lyapunov walk


def _walk_trial(edges, mats, wedges, renorm_every):
    """Accumulate log growth of a cocycle product and its 2nd compound.

    edges: uint8 array, 0 = state-preserving letter, 1 = state swap.
    mats/wedges: (4,3,3) letter matrices and their minor matrices, indexed
    by 2*state + edge. Kahan-compensated log accumulators.
    """
    p = np.eye(3)
    w = np.eye(3)
    log1 = 0.0
    comp1 = 0.0
    log2 = 0.0
    comp2 = 0.0
    state = 0
    n = edges.shape[0]
    for i in range(n):
        k = 2 * state + edges[i]
        p = p @ mats[k]
        w = w @ wedges[k]
        if edges[i] == 1:
            state = 1 - state
        if (i + 1) % renorm_every == 0:
            s1 = np.abs(p).max()
            p = p / s1
            y = np.log(s1) - comp1
            t = log1 + y
            comp1 = (t - log1) - y
            log1 = t
            s2 = np.abs(w).max()
            w = w / s2
            y = np.log(s2) - comp2
            t = log2 + y
            comp2 = (t - log2) - y
            log2 = t
    log1 += np.log(np.abs(p).max())
    log2 += np.log(np.abs(w).max())
    return log1, log2


_walk_trial_jit = njit_maybe(_walk_trial)


def _walk_batch(edges, mats, wedges, renorm_every):
    """Vectorized-over-trials numpy version of `_walk_trial`."""
    trials, n = edges.shape
    p = np.broadcast_to(np.eye(3), (trials, 3, 3)).copy()
    w = p.copy()
    log1 = np.zeros(trials)
    log2 = np.zeros(trials)
    state = np.zeros(trials, dtype=np.uint8)
    for i in range(n):
        k = 2 * state + edges[:, i]
        p = p @ mats[k]
        w = w @ wedges[k]
        state = np.where(edges[:, i] == 1, 1 - state, state)
        if (i + 1) % renorm_every == 0:
            s1 = np.abs(p).max(axis=(1, 2))
            p /= s1[:, None, None]
            log1 += np.log(s1)
            s2 = np.abs(w).max(axis=(1, 2))
            w /= s2[:, None, None]
            log2 += np.log(s2)
    log1 += np.log(np.abs(p).max(axis=(1, 2)))
    log2 += np.log(np.abs(w).max(axis=(1, 2)))
    return log1, log2


def lyapunov_logs(edges: np.ndarray, mats, wedges, renorm_every: int):
    """Per-trial (log ||P_n||, log ||wedge^2 P_n||) for an edge-choice array.

    edges has shape (trials, steps).
    """
    mats = np.ascontiguousarray(mats, dtype=np.float64)
    wedges = np.ascontiguousarray(wedges, dtype=np.float64)
    edges = np.ascontiguousarray(edges, dtype=np.uint8)
    if NUMBA_ENABLED:
        out1 = np.empty(edges.shape[0])
        out2 = np.empty(edges.shape[0])
        for t in range(edges.shape[0]):
            out1[t], out2[t] = _walk_trial_jit(edges[t], mats, wedges, renorm_every)
        return out1, out2
    return _walk_batch(edges, mats, wedges, renorm_every)


# ---------------------------------------------------------------------------
# Rasterization


def _fill_triangles_scalar(buf, tris):
    """Paint each triangle (pixel coordinates, (n,3,2)) into a uint8 buffer."""
    h, w = buf.shape
    for t in range(tris.shape[0]):
        x0, y0 = tris[t, 0, 0], tris[t, 0, 1]
        x1, y1 = tris[t, 1, 0], tris[t, 1, 1]
        x2, y2 = tris[t, 2, 0], tris[t, 2, 1]
        xmin = int(max(0.0, np.floor(min(x0, min(x1, x2)))))
        xmax = int(min(w - 1.0, np.ceil(max(x0, max(x1, x2)))))
        ymin = int(max(0.0, np.floor(min(y0, min(y1, y2)))))
        ymax = int(min(h - 1.0, np.ceil(max(y0, max(y1, y2)))))
        d = (y1 - y2) * (x0 - x2) + (x2 - x1) * (y0 - y2)
        if d == 0.0:
            continue
        for py in range(ymin, ymax + 1):
            yy = py + 0.5
            for px in range(xmin, xmax + 1):
                xx = px + 0.5
                l0 = ((y1 - y2) * (xx - x2) + (x2 - x1) * (yy - y2)) / d
                l1 = ((y2 - y0) * (xx - x2) + (x0 - x2) * (yy - y2)) / d
                l2 = 1.0 - l0 - l1
                if l0 >= 0.0 and l1 >= 0.0 and l2 >= 0.0:
                    buf[py, px] = 1

_fill_triangles_jit = njit_maybe(_fill_triangles_scalar)


def _fill_triangles_numpy(buf, tris):
    h, w = buf.shape
    for t in range(tris.shape[0]):
        (x0, y0), (x1, y1), (x2, y2) = tris[t]
        xmin = int(max(0, np.floor(min(x0, x1, x2))))
        xmax = int(min(w - 1, np.ceil(max(x0, x1, x2))))
        ymin = int(max(0, np.floor(min(y0, y1, y2))))
        ymax = int(min(h - 1, np.ceil(max(y0, y1, y2))))
        if xmax < xmin or ymax < ymin:
            continue
        d = (y1 - y2) * (x0 - x2) + (x2 - x1) * (y0 - y2)
        if d == 0.0:
            continue
        ys, xs = np.mgrid[ymin : ymax + 1, xmin : xmax + 1]
        xx = xs + 0.5
        yy = ys + 0.5
        l0 = ((y1 - y2) * (xx - x2) + (x2 - x1) * (yy - y2)) / d
        l1 = ((y2 - y0) * (xx - x2) + (x0 - x2) * (yy - y2)) / d
        l2 = 1.0 - l0 - l1
        mask = (l0 >= 0.0) & (l1 >= 0.0) & (l2 >= 0.0)
        region = buf[ymin : ymax + 1, xmin : xmax + 1]
        region[mask] = 1


def fill_triangles(buf: np.ndarray, tris: np.ndarray) -> None:
    """Rasterize triangles into buf (uint8, set to 1), center sampling."""
    tris = np.ascontiguousarray(tris, dtype=np.float64)
    if NUMBA_ENABLED:
        _fill_triangles_jit(buf, tris)
    else:
        _fill_triangles_numpy(buf, tris)
