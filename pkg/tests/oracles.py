"""Brute-force reference computations, kept independent of the library."""

import numba
import numpy as np

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def effect_matrix(a, b):
    return a * np.eye(2) + sum(bk * s for bk, s in zip(b, SIGMA))


def min_eig(a, b):
    return float(np.linalg.eigvalsh(effect_matrix(a, b))[0])


@numba.njit(cache=True)
def _grid_argmin(pts, xs, ys, zs):
    best, bi, bj, bk = np.inf, 0, 0, 0
    for i in range(xs.size):
        for j in range(ys.size):
            for k in range(zs.size):
                f = 0.0
                for p in range(pts.shape[0]):
                    f += np.sqrt((xs[i] - pts[p, 0]) ** 2 + (ys[j] - pts[p, 1]) ** 2 + (zs[k] - pts[p, 2]) ** 2)
                if f < best:
                    best, bi, bj, bk = f, i, j, k
    return best, bi, bj, bk


def grid_median(points, n=50, levels=5):
    """Minimum total distance by nested grid search.

    Level one is an n^3 grid on a cube around the centroid containing every
    point; each later level is an n^3 grid on the cube of five old spacings
    around the previous best. The input points are scored as candidates too,
    since a median sitting on a data point is a kink no finite grid reaches.
    """
    pts = np.ascontiguousarray(points, dtype=float)
    center = pts.mean(axis=0)
    half = float(np.max(np.abs(pts - center))) + 1e-12
    dists = [float(np.linalg.norm(pts - p, axis=1).sum()) for p in pts]
    best_f = min(dists)
    best_x = pts[int(np.argmin(dists))]
    for _ in range(levels):
        axes = [np.linspace(c - half, c + half, n) for c in center]
        f, i, j, k = _grid_argmin(pts, *axes)
        center = np.array([axes[0][i], axes[1][j], axes[2][k]])
        if f < best_f:
            best_x, best_f = center, f
        half = 5 * half / (n - 1)
    return best_x, best_f


def min_third_cosine(x1, x2, samples=3601):
    """Smallest ``v1.v2`` over unit vectors with ``v1.u = x2`` and ``v2.u = x1``,
    scanning the relative azimuth about ``u``."""
    psi = np.linspace(0, 2 * np.pi, samples)
    s1, s2 = np.sqrt(1 - x1**2), np.sqrt(1 - x2**2)
    v1 = np.stack([np.full_like(psi, s2), np.zeros_like(psi), np.full_like(psi, x2)], axis=1)
    v2 = np.stack([s1 * np.cos(psi), s1 * np.sin(psi), np.full_like(psi, x1)], axis=1)
    return float(np.min(np.sum(v1 * v2, axis=1)))


def random_ball(rng, n, radius=1.0):
    """`n` points uniform in the ball of given radius."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * radius * rng.uniform(0, 1, size=(n, 1)) ** (1 / 3)


TRIPLE_SIGNS = [(m1, m2, m3) for m1 in (1, -1) for m2 in (1, -1) for m3 in (1, -1)]
PAIRS = ((0, 1), (0, 2), (1, 2))


def triple_slacks(lams, Z, z, zij):
    """``1 + sum mu_i mu_j Z_ij - |sum mu_i l_i + sum mu_i mu_j z_ij - mu1 mu2 mu3 z|``
    for each of the eight sign patterns of the most general triple joint."""
    out = []
    for mu in TRIPLE_SIGNS:
        a = 1 + sum(mu[i] * mu[j] * Z[k] for k, (i, j) in enumerate(PAIRS))
        b = sum(mu[i] * lams[i] for i in range(3))
        b = b + sum(mu[i] * mu[j] * zij[k] for k, (i, j) in enumerate(PAIRS)) - mu[0] * mu[1] * mu[2] * z
        out.append(a - np.linalg.norm(b))
    return np.array(out)


def best_triple_slack(lams, z_points):
    """Best worst-case slack over the given ``z`` candidates (with ``z_ij = 0``).

    For fixed ``z`` the right-hand sides are constants, so maximising the
    smallest slack over ``Z_ij`` is a linear programme in ``(Z12, Z13, Z23, t)``.
    Nonnegative iff some candidate supports an eight-outcome joint POVM.
    """
    from scipy.optimize import linprog

    lams = [np.asarray(l, dtype=float) for l in lams]
    coeff = np.array([[mu[i] * mu[j] for i, j in PAIRS] for mu in TRIPLE_SIGNS], dtype=float)
    # -sum mu_i mu_j Z_ij + t <= 1 - |b_mu|
    A = np.hstack([-coeff, np.ones((8, 1))])
    best = -np.inf
    for z in z_points:
        norms = -triple_slacks(lams, np.zeros(3), z, np.zeros((3, 3))) + 1
        res = linprog([0, 0, 0, -1], A_ub=A, b_ub=1 - norms, bounds=[(-1, 1)] * 3 + [(None, None)], method="highs")
        best = max(best, -res.fun)
    return best
