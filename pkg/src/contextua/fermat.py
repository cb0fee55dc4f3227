"""
Fermat-Torricelli point (geometric median) of a finite point set in R^3.

Weiszfeld iteration started from the centroid, safeguarded by Newton steps,
with explicit handling of the data points themselves, where the plain
iteration is undefined. A data point is the minimiser iff the summed unit
vectors pointing from it to the other points have norm at most its
multiplicity.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ContextuaError

VERTEX_RADIUS = 1e-9
STEP_TOL = 1e-12
STATIONARITY_TOL = 1e-10
MAX_ITER = 100_000


@dataclass(frozen=True, eq=False)
class FtResult:
    point: np.ndarray
    total_distance: float
    at_vertex: Optional[int]
    iterations: int
    stationarity: float
    degenerate: bool = False
    history: list = field(default_factory=list, repr=False)


def _norms(v):
    return np.sqrt(np.einsum("ij,ij->i", v, v))


def total_distance(points, x):
    return float(_norms(np.asarray(points, dtype=float) - x).sum())


def _pull(points, weights, x, skip=None):
    """Weighted sum of unit vectors from `x` towards each point."""
    diff = points - x
    d = _norms(diff)
    mask = d > 0
    if skip is not None:
        mask[skip] = False
    return (weights[mask, None] * diff[mask] / d[mask, None]).sum(axis=0)


def vertex_certificate(points, v, weights=None):
    """Norm of the pull at data point `v` minus its weight (<= 0 means optimal)."""
    points = np.asarray(points, dtype=float)
    weights = np.ones(len(points)) if weights is None else np.asarray(weights, dtype=float)
    return float(np.linalg.norm(_pull(points, weights, points[v], skip=v)) - weights[v])


def _objective(points, weights, x):
    return float(weights @ _norms(points - x))


def _descent_step(points, weights, x, d):
    """Weiszfeld update, or a Newton step when that lowers the objective more.

    Weiszfeld alone converges linearly and crawls when the median sits close
    to a data point; the Newton candidate restores fast local convergence,
    and taking the better of the two keeps the objective monotone.
    """
    inv = weights / d
    x_w = (inv[:, None] * points).sum(axis=0) / inv.sum()
    u = (points - x) / d[:, None]
    grad = -(weights[:, None] * u).sum(axis=0)
    hess = inv.sum() * np.eye(3) - np.einsum("k,ki,kj->ij", inv, u, u)
    try:
        x_n = x - np.linalg.solve(hess, grad)
    except np.linalg.LinAlgError:
        return x_w
    if np.all(np.isfinite(x_n)) and _objective(points, weights, x_n) < _objective(points, weights, x_w):
        return x_n
    return x_w


def _merge_duplicates(points, radius=1e-12):
    uniq, weights, index = [], [], []
    for i, p in enumerate(points):
        for k, q in enumerate(uniq):
            if np.linalg.norm(p - q) <= radius:
                weights[k] += 1
                break
        else:
            uniq.append(p)
            weights.append(1.0)
            index.append(i)
    return np.array(uniq), np.array(weights), index


def fermat_torricelli(points, track=False, max_iter=MAX_ITER):
    """Geometric median of three or more points.

    Parameters
    ----------
    points : array_like, shape (n, 3)
    track : bool
        Record the objective after every iterate in ``result.history``.

    Returns
    -------
    FtResult
        ``at_vertex`` is the index (into `points`) of the input point that is
        itself the median, or None when the median is a smooth stationary point.
        If all points coincide the result is flagged ``degenerate``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ContextuaError(f"expected shape (n, 3), got {pts.shape}")
    if len(pts) < 3:
        raise ContextuaError("need at least three points")
    if not np.all(np.isfinite(pts)):
        raise ContextuaError("non-finite input point")

    uniq, w, index = _merge_duplicates(pts)
    if len(uniq) == 1:
        return FtResult(pts[0].copy(), 0.0, 0, 0, 0.0, degenerate=True)

    def result(x, vertex, it, hist):
        stat = 0.0 if vertex is not None else float(np.linalg.norm(_pull(uniq, w, x)))
        return FtResult(
            x.copy(), total_distance(pts, x), None if vertex is None else index[vertex], it, stat, history=hist
        )

    # a vertex certificate is exact, so settle those cases up front
    for v in range(len(uniq)):
        if np.linalg.norm(_pull(uniq, w, uniq[v], skip=v)) <= w[v]:
            x = uniq[v]
            return result(x, v, 0, [total_distance(pts, x)] if track else [])

    x = (w[:, None] * uniq).sum(axis=0) / w.sum()
    hist = [total_distance(pts, x)] if track else []
    for it in range(1, max_iter + 1):
        d = _norms(uniq - x)
        near = np.flatnonzero(d < VERTEX_RADIUS)
        if near.size:
            v = int(near[0])
            x = uniq[v]
            pull = _pull(uniq, w, x, skip=v)
            excess = np.linalg.norm(pull) - w[v]
            if excess <= 0:
                return result(x, v, it, hist)
            # move off the vertex along the descent direction, halving until the objective drops
            others = np.delete(np.arange(len(uniq)), v)
            t = excess / np.sum(w[others] / np.linalg.norm(uniq[others] - x, axis=1))
            f0 = total_distance(pts, x)
            direction = pull / np.linalg.norm(pull)
            while total_distance(pts, x + t * direction) >= f0 and t > 1e-18:
                t /= 2
            x_new = x + t * direction
        else:
            x_new = _descent_step(uniq, w, x, d)
        step = np.linalg.norm(x_new - x)
        x = x_new
        if track:
            hist.append(total_distance(pts, x))
        if step < STEP_TOL or np.linalg.norm(_pull(uniq, w, x)) < STATIONARITY_TOL:
            return result(x, None, it, hist)
    return result(x, None, max_iter, hist)
