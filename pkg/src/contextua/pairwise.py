"""
Joint measurements of two unbiased qubit observables.

The general joint POVM of ``O(l_i)`` and ``O(l_j)`` is

    M[mu, nu] = ((1 + mu*nu*Z) I + (mu*l_i + nu*l_j - mu*nu*z).sigma) / 4

parametrised by a real ``Z`` and a vector ``z``.
"""

from dataclasses import dataclass

import numpy as np

from .bloch import TOL, Effect, Povm, QubitState, as_vec3, check_sharpness, outcome_labels, outcome_probability
from .errors import NotJointlyMeasurable, NotPositive, StateNotOrthogonal

PAIR_LABELS = outcome_labels(2)
# H values below this are rounding noise of the inputs; sqrt would amplify them
H_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class PairwiseJoint:
    lambda_i: np.ndarray
    lambda_j: np.ndarray
    Z: float
    z: np.ndarray
    effects: Povm

    def to_dict(self):
        return {
            "lambda_i": self.lambda_i.tolist(),
            "lambda_j": self.lambda_j.tolist(),
            "Z": float(self.Z),
            "z": self.z.tolist(),
            "effects": [e.to_dict() for e in self.effects.effects],
        }


def busch_h(l_i, l_j):
    l_i, l_j = as_vec3(l_i), as_vec3(l_j)
    return float(1 - l_i @ l_i - l_j @ l_j + (l_i @ l_j) ** 2)


def root_h(h):
    return 0.0 if h < H_FLOOR else float(np.sqrt(h))


def pairwise_compat(l_i, l_j, tol=TOL):
    """Return ``(H, measurable)`` for the two-observable criterion ``H >= 0``."""
    l_i, l_j = check_sharpness(l_i, tol), check_sharpness(l_j, tol)
    h = busch_h(l_i, l_j)
    return h, h >= -tol


def l_bounds(l_i, l_j, Z):
    """``L_mu(Z) = (1 + mu Z)^2 - |l_i + mu l_j|^2`` for mu = +1, -1."""
    l_i, l_j = as_vec3(l_i), as_vec3(l_j)
    s, d = l_i + l_j, l_i - l_j
    return float((1 + Z) ** 2 - s @ s), float((1 - Z) ** 2 - d @ d)


def _pair_effect(l_i, l_j, Z, z, mu, nu):
    return Effect((1 + mu * nu * Z) / 4, (mu * l_i + nu * l_j - mu * nu * z) / 4)


def build_pairwise_jm(l_i, l_j, Z, z, tol=TOL):
    """Joint POVM from the general two-observable family.

    Raises
    ------
    NotPositive
        If some ``M[mu, nu]`` has a negative eigenvalue below ``-tol``; the
        exception carries the offending label and the size of the deficit.
    """
    l_i, l_j, z = as_vec3(l_i), as_vec3(l_j), as_vec3(z)
    Z = float(Z)
    effects = [_pair_effect(l_i, l_j, Z, z, mu, nu) for mu, nu in PAIR_LABELS]
    for lab, e in zip(PAIR_LABELS, effects):
        if e.min_eigenvalue < -tol:
            raise NotPositive(
                f"effect M{lab} has min eigenvalue {e.min_eigenvalue:.3e}",
                label=lab,
                deficit=-e.min_eigenvalue,
            )
    return PairwiseJoint(l_i, l_j, Z, z, Povm(effects, PAIR_LABELS))


def max_anticorrelation_pair(l_i, l_j, tol=TOL):
    """Largest anti-correlation over all joint measurements and states.

    Equals ``(1 - l_i.l_j + sqrt(H)) / 2``.
    """
    h, ok = pairwise_compat(l_i, l_j, tol)
    if not ok:
        raise NotJointlyMeasurable(f"H = {h:.6g} < 0")
    return (1 - float(as_vec3(l_i) @ as_vec3(l_j)) + root_h(h)) / 2


def orthogonal_direction(l_i, l_j, r=None, tol=1e-12):
    """Unit vector orthogonal to both `l_i` and `l_j`.

    When the two vectors are collinear (or vanish) the admissible directions
    form a plane or the whole sphere; the one closest to `r` is returned so the
    overlap ``r.z`` is maximal.
    """
    l_i, l_j = as_vec3(l_i), as_vec3(l_j)
    basis = []
    for v in (l_i, l_j):
        w = v - sum((v @ b) * b for b in basis)
        if np.linalg.norm(w) > tol:
            basis.append(w / np.linalg.norm(w))
    ref = np.array([0.0, 0.0, 1.0]) if r is None else as_vec3(r)
    if len(basis) == 2:
        n = np.cross(basis[0], basis[1])
        n /= np.linalg.norm(n)
        return n if n @ ref >= 0 else -n
    for cand in (ref, np.eye(3)[0], np.eye(3)[1], np.eye(3)[2]):
        w = cand - sum((cand @ b) * b for b in basis)
        if np.linalg.norm(w) > 1e-6:
            return w / np.linalg.norm(w)
    raise AssertionError("unreachable: some axis is always off a single line")


def build_optimal_pairwise_jm(l_i, l_j, r, tol=TOL):
    """Rank-one joint measurement maximising anti-correlation in state `r`.

    Effects are ``(1 + mu nu l_i.l_j)(I + m.sigma) / 4`` with unit ``m``
    along ``mu l_i + nu l_j - mu nu sqrt(H) r``. That vector has length exactly
    ``1 + mu nu l_i.l_j`` whenever ``r`` is a unit vector orthogonal to both
    observables, so normalising it reproduces the general family with
    ``Z = l_i.l_j`` and ``z = sqrt(H) r``.
    """
    l_i, l_j, r = as_vec3(l_i), as_vec3(l_j), as_vec3(r)
    if abs(np.linalg.norm(r) - 1) > 1e-9:
        raise StateNotOrthogonal(f"state must be pure, |r| = {np.linalg.norm(r)}")
    if abs(r @ l_i) > 1e-9 or abs(r @ l_j) > 1e-9:
        raise StateNotOrthogonal(
            f"state not orthogonal to observables: r.l_i = {r @ l_i:.3e}, r.l_j = {r @ l_j:.3e}"
        )
    h, ok = pairwise_compat(l_i, l_j, tol)
    if not ok:
        raise NotJointlyMeasurable(f"H = {h:.6g} < 0")
    root = root_h(h)
    c = float(l_i @ l_j)
    effects = []
    for mu, nu in PAIR_LABELS:
        v = mu * l_i + nu * l_j - mu * nu * root * r
        n = np.linalg.norm(v)
        m = v / n if n >= 1e-12 else -mu * nu * r
        w = (1 + mu * nu * c) / 4
        effects.append(Effect(w, w * m))
    return PairwiseJoint(l_i, l_j, c, root * r, Povm(effects, PAIR_LABELS))


def anticorrelation(j, s):
    """Probability of unequal outcomes, ``p(+,-) + p(-,+)``."""
    if not isinstance(s, QubitState):
        s = QubitState(s)
    return outcome_probability(j.effects[(1, -1)], s) + outcome_probability(j.effects[(-1, 1)], s)
