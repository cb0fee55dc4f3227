"""
Triplewise joint measurability of three unbiased qubit observables.

With ``L0 = l1 + l2 + l3`` and ``Lk = 2 lk - L0`` the three observables admit a
common joint POVM iff the four points ``L0..L3`` have total distance at most 4
from their Fermat-Torricelli point.
"""

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import TOL, Effect, Povm, as_vec3, check_sharpness, outcome_labels
from .errors import NotCoplanar, NotOrthogonal, NotTriplewiseMeasurable
from .fermat import FtResult, fermat_torricelli
from .pairwise import pairwise_compat

TRIPLE_LABELS = outcome_labels(3)
COPLANAR_TOL = 1e-9
PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True, eq=False)
class LambdaSystem:
    l1: np.ndarray
    l2: np.ndarray
    l3: np.ndarray

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            object.__setattr__(self, name, as_vec3(getattr(self, name)))

    @property
    def lambdas(self):
        return np.array([self.l1, self.l2, self.l3])

    @property
    def big_lambdas(self):
        """Array of shape (4, 3): ``L0`` followed by ``L1, L2, L3``."""
        l0 = self.l1 + self.l2 + self.l3
        return np.array([l0, 2 * self.l1 - l0, 2 * self.l2 - l0, 2 * self.l3 - l0])


class TriplewiseCheck(NamedTuple):
    margin: float
    measurable: bool
    ft: FtResult
    system: LambdaSystem

    def to_dict(self):
        return {
            "margin": float(self.margin),
            "ft_point": self.ft.point.tolist(),
            "lambdas": self.system.lambdas.tolist(),
            "measurable": bool(self.measurable),
        }


@dataclass(frozen=True, eq=False)
class TriplewiseJoint:
    system: LambdaSystem
    Z12: float
    Z13: float
    Z23: float
    z: np.ndarray
    effects: Povm

    @property
    def Z(self):
        return {(0, 1): self.Z12, (0, 2): self.Z13, (1, 2): self.Z23}

    def to_dict(self):
        return {
            "lambdas": self.system.lambdas.tolist(),
            "Z12": self.Z12,
            "Z13": self.Z13,
            "Z23": self.Z23,
            "z": self.z.tolist(),
            "effects": [e.to_dict() for e in self.effects.effects],
        }


def triplewise_compat(l1, l2, l3, tol=TOL):
    """Margin ``4 - sum_a |L_a - L_FT|``; measurable iff ``margin >= -tol``."""
    system = LambdaSystem(*(check_sharpness(l, tol) for l in (l1, l2, l3)))
    ft = fermat_torricelli(system.big_lambdas)
    margin = 4.0 - ft.total_distance
    return TriplewiseCheck(margin, margin >= -tol, ft, system)


def build_triplewise_jm(l1, l2, l3, tol=TOL):
    """Eight-outcome joint POVM with the three observables as marginals.

    Uses ``z = L_FT``, no pair-specific vectors and
    ``Z_ij = 1 - (|L_i - L_FT| + |L_j - L_FT|) / 2``. The six outcomes with
    mixed signs are then rank one, and the two uniform-sign outcomes are
    positive exactly when the criterion holds.
    """
    check = triplewise_compat(l1, l2, l3, tol)
    if not check.measurable:
        raise NotTriplewiseMeasurable(f"margin {check.margin:.6g} < 0")
    lam = check.system.lambdas
    z = check.ft.point
    d = np.linalg.norm(check.system.big_lambdas - z, axis=1)
    Z = {(i, j): 1 - (d[i + 1] + d[j + 1]) / 2 for i, j in PAIRS}
    effects = []
    for mu in TRIPLE_LABELS:
        a = 1 + sum(mu[i] * mu[j] * Z[i, j] for i, j in PAIRS)
        b = sum(mu[i] * lam[i] for i in range(3)) - mu[0] * mu[1] * mu[2] * z
        effects.append(Effect(a / 8, b / 8))
    return TriplewiseJoint(check.system, Z[0, 1], Z[0, 2], Z[1, 2], as_vec3(z), Povm(effects, TRIPLE_LABELS))


class Branch(enum.Enum):
    IN_HULL = "InHull"
    OUT_OF_HULL = "OutOfHull"


def _plane_basis(vectors, tol=1e-12):
    nonzero = [v for v in vectors if np.linalg.norm(v) > tol]
    if not nonzero:
        return np.eye(3)[0], np.eye(3)[1]
    best = max(
        ((u, v) for i, u in enumerate(nonzero) for v in nonzero[i + 1 :]),
        key=lambda uv: np.linalg.norm(np.cross(uv[0], uv[1])),
        default=(nonzero[0], nonzero[0]),
    )
    e1 = best[0] / np.linalg.norm(best[0])
    w = best[1] - (best[1] @ e1) * e1
    if np.linalg.norm(w) <= tol:
        w = np.eye(3)[np.argmin(np.abs(e1))]
        w = w - (w @ e1) * e1
    return e1, w / np.linalg.norm(w)


def is_coplanar(l1, l2, l3, tol=COPLANAR_TOL):
    units = [v / np.linalg.norm(v) for v in map(as_vec3, (l1, l2, l3)) if np.linalg.norm(v) > 1e-12]
    if len(units) < 3:
        return True
    return abs(float(np.dot(units[0], np.cross(units[1], units[2])))) < tol


def _half_plane_representations(flat):
    """Yield ``(outer_a, outer_b, middle)`` for each way of placing three
    lines through the origin in a common half plane (one per choice of middle)."""
    order = sorted(range(3), key=lambda k: flat[k][0])
    vecs = {k: flat[k][1] for k in range(3)}
    for shift in range(3):
        w = dict(vecs)
        for k in order[:shift]:
            w[k] = -w[k]
        rot = order[shift:] + order[:shift]
        yield w[rot[0]], w[rot[2]], w[rot[1]]


def _in_triangle(a, b, c, eps=1e-12):
    """Whether `c` lies in the triangle spanned by 0, `a`, `b` (2-d)."""
    cross = a[0] * b[1] - a[1] * b[0]
    if abs(cross) > eps:
        s, t = np.linalg.solve(np.column_stack([a, b]), c)
        return s >= -eps and t >= -eps and s + t <= 1 + eps
    return np.linalg.norm(c) <= max(np.linalg.norm(a), np.linalg.norm(b)) + eps


def coplanar_condition(l1, l2, l3, tol=TOL):
    """Closed-form triplewise criterion for coplanar observables.

    Signs may be flipped freely (that only relabels outcomes), so the three
    vectors can be placed in a common half plane in three ways, one per
    choice of the angularly middle vector ``l3``. If in some placement ``l3``
    lies in the triangle spanned by the origin and the outer two, the
    criterion is the pairwise one for the outer pair. Otherwise it is
    ``|l1 + l2| + |l1 - l3| + |l2 - l3| <= 2`` for the placement minimising
    the left side, which is the one where ``L3`` is the FT point.

    Returns
    -------
    (measurable, branch)
    """
    lam = [check_sharpness(l, tol) for l in (l1, l2, l3)]
    if not is_coplanar(*lam):
        raise NotCoplanar("observables are not coplanar")
    e1, e2 = _plane_basis(lam)
    flat = []
    for v in lam:
        x, y = v @ e1, v @ e2
        ang = np.arctan2(y, x)
        if ang < 0 or ang >= np.pi:
            x, y, ang = -x, -y, ang + np.pi if ang < 0 else ang - np.pi
        flat.append((ang, np.array([x, y])))

    zero = [k for k in range(3) if np.linalg.norm(flat[k][1]) <= 1e-12]
    if zero:
        a, b = (np.append(flat[k][1], 0.0) for k in range(3) if k != zero[0])
        return pairwise_compat(a, b, tol)[1], Branch.IN_HULL

    best = np.inf
    for a, b, c in _half_plane_representations(flat):
        if _in_triangle(a, b, c):
            return pairwise_compat(np.append(a, 0.0), np.append(b, 0.0), tol)[1], Branch.IN_HULL
        best = min(best, np.linalg.norm(a + b) + np.linalg.norm(a - c) + np.linalg.norm(b - c))
    return bool(best <= 2 + tol), Branch.OUT_OF_HULL


def equal_length_config(eta, phi1, phi2):
    """Three coplanar vectors of length `eta`: ``l3`` on the x axis, ``l1`` at
    angle `phi1` above it and ``l2`` at `phi2` below it."""
    return (
        eta * np.array([np.cos(phi1), np.sin(phi1), 0.0]),
        eta * np.array([np.cos(phi2), -np.sin(phi2), 0.0]),
        eta * np.array([1.0, 0.0, 0.0]),
    )


def trine(eta):
    return equal_length_config(eta, 2 * np.pi / 3, 2 * np.pi / 3)


def sharpness_threshold(make_triple, tol=1e-12):
    """Largest scale in [0, 1] at which ``make_triple(s)`` is triplewise
    measurable, found by bisection (measurability is monotone under scaling)."""
    if triplewise_compat(*make_triple(1.0)).measurable:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if triplewise_compat(*make_triple(mid)).measurable:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def equal_length_coplanar_bound(phi1, phi2):
    """Largest common sharpness for coplanar observables at angles `phi1`,
    `phi2` from the middle one.

    For ``phi1 + phi2 <= pi`` (all three in a half plane) this is
    ``1 / (cos((phi1 + phi2)/2) + sin(phi1/2) + sin(phi2/2))``. Past that the
    closed form no longer describes the configuration (the middle vector is
    not between the others within a half plane), so the threshold is located
    by bisection on the general criterion instead.
    """
    if not (phi1 > 0 and phi2 > 0 and phi1 + phi2 <= 2 * np.pi + 1e-12):
        raise ValueError("need 0 < phi1, phi2 and phi1 + phi2 <= 2 pi")
    if phi1 + phi2 <= np.pi:
        return 1.0 / (np.cos((phi1 + phi2) / 2) + np.sin(phi1 / 2) + np.sin(phi2 / 2))
    return sharpness_threshold(lambda s: equal_length_config(s, phi1, phi2))


def orthogonal_case_ft(l1, l2, l3):
    """Closed-form FT point of ``L0..L3`` when ``l3`` is orthogonal to ``l1, l2``.

    The points are ``+-(l1 + l2)`` offset by ``+l3`` and ``+-(l1 - l2)`` offset
    by ``-l3``. By symmetry the median lies on the ``l3`` axis, where the
    segment from ``(p, +l3)`` to ``(-m, -l3)`` crosses it, giving
    ``(m - p)/(p + m) l3`` with ``p = |l1 + l2|`` and ``m = |l1 - l2|``.
    """
    l1, l2, l3 = map(as_vec3, (l1, l2, l3))
    p, m = np.linalg.norm(l1 + l2), np.linalg.norm(l1 - l2)
    if p + m == 0:
        return np.zeros(3)
    return (m - p) / (p + m) * l3


def orthogonal_case_check(l1, l2, l3, tol=TOL):
    """``|l1 + l2| + |l1 - l2| <= 2 sqrt(1 - |l3|^2)`` for ``l3`` orthogonal to both."""
    l1, l2, l3 = (check_sharpness(l, tol) for l in (l1, l2, l3))
    if abs(l3 @ l1) > 1e-9 or abs(l3 @ l2) > 1e-9:
        raise NotOrthogonal(f"l3.l1 = {l3 @ l1:.3e}, l3.l2 = {l3 @ l2:.3e}")
    lhs = np.linalg.norm(l1 + l2) + np.linalg.norm(l1 - l2)
    return bool(lhs <= 2 * np.sqrt(max(1 - l3 @ l3, 0.0)) + tol)
