"""
Quantum side of the LSW inequality for three equally sharp qubit observables.

With ``l_i.l_j = eta^2 x`` the best anti-correlation of a pair is ``r(x)/2``
where ``r(x) = 1 - eta^2 x + sqrt(1 - 2 eta^2 + eta^4 x^2)``. The average
anti-correlation is then bounded by ``max g(x)/6`` over ``-1 <= x <= 0`` with
``g(x) = 2 r(x) + r(2x^2 - 1)``, attained at ``x = -1/2`` (trine) for
``eta^2 <= 0.3`` and at ``x = -1`` (parallel) above.
"""

import csv
import enum
import io
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bloch import QubitState
from .errors import DomainError
from .pairwise import (
    anticorrelation,
    build_optimal_pairwise_jm,
    max_anticorrelation_pair,
    orthogonal_direction,
    pairwise_compat,
)
from .triplewise import trine, triplewise_compat

RADICAND_TOL = 1e-12
ETA2_SWITCH = 0.3


class Regime(enum.Enum):
    TRINE = "Trine"
    PARALLEL = "Parallel"


@dataclass(frozen=True)
class BoundBranch:
    eta: float
    value: float
    regime: Regime


def _radicand(x, eta):
    return 1 - 2 * eta**2 + eta**4 * x**2


def r_func(x, eta):
    """Twice the best anti-correlation of a pair with overlap ``eta^2 x``."""
    rad = _radicand(x, eta)
    if rad < -RADICAND_TOL:
        raise DomainError(f"r({x}) undefined at eta={eta}: pair not jointly measurable (radicand {rad:.3e})")
    return 1 - eta**2 * x + np.sqrt(max(rad, 0.0))


def g_domain(eta):
    """Sub-intervals of [-1, 0] on which ``g`` is defined.

    Up to ``eta = 1/sqrt(2)`` this is all of [-1, 0]. Beyond, with
    ``beta = sqrt(2 eta^2 - 1)/eta^2``, it is
    ``I1 = [-1, -sqrt((1+beta)/2)]`` plus, while ``eta <= sqrt(3) - 1``,
    ``I2 = [-sqrt((1-beta)/2), -beta]``.
    """
    if eta**2 <= 0.5:
        return [(-1.0, 0.0)]
    beta = np.sqrt(2 * eta**2 - 1) / eta**2
    intervals = [(-1.0, -np.sqrt((1 + beta) / 2))]
    if beta <= 0.5:
        intervals.append((-np.sqrt((1 - beta) / 2), -beta))
    return intervals


def g_func(x, eta):
    """``2 r(x) + r(2x^2 - 1)``: six times the average anti-correlation when two
    overlaps equal ``x`` and the third is as negative as a Gram matrix allows."""
    try:
        return 2 * r_func(x, eta) + r_func(2 * x**2 - 1, eta)
    except DomainError:
        raise DomainError(f"g({x}) undefined at eta={eta}; defined on {g_domain(eta)}") from None


def trine_value(eta):
    return 0.5 + eta**2 / 4 + 0.5 * np.sqrt(max(1 - 2 * eta**2 + eta**4 / 4, 0.0))


def parallel_value(eta):
    return 1 - eta**2 / 3


def r3_quantum_bound(eta):
    """Largest average anti-correlation for three observables of sharpness `eta`."""
    if not 0 <= eta <= 1:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    if eta**2 <= ETA2_SWITCH:
        return BoundBranch(eta, trine_value(eta), Regime.TRINE)
    return BoundBranch(eta, parallel_value(eta), Regime.PARALLEL)


def _refine_max(f, lo, hi, xatol):
    res = minimize_scalar(lambda x: -f(x), bounds=(lo, hi), method="bounded", options={"xatol": xatol})
    return float(res.x), float(-res.fun)


def max_r3_numeric(eta, grid=1000, xatol=1e-12):
    """Maximise ``g(x)/6`` over its domain by a grid scan plus bounded refinement.

    Returns
    -------
    (value, x_star)
    """
    if not 0 <= eta <= 1:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    best_x, best_v = None, -np.inf
    for lo, hi in g_domain(eta):
        xs = np.linspace(lo, hi, grid + 1)
        vals = np.array([g_func(x, eta) for x in xs])
        i = int(np.argmax(vals))
        cands = [(xs[i], vals[i]), (lo, vals[0]), (hi, vals[-1])]
        a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid)]
        if b > a:
            cands.append(_refine_max(lambda x: g_func(x, eta), a, b, xatol))
        for x, v in cands:
            if v > best_v:
                best_x, best_v = float(x), float(v)
    return best_v / 6, best_x


def gram_constraint(x1, x2):
    """Smallest third cosine compatible with cosines `x1`, `x2` to a common vector."""
    if abs(x1) > 1 or abs(x2) > 1:
        raise ValueError("cosines must lie in [-1, 1]")
    return x1 * x2 - np.sqrt(1 - x1**2) * np.sqrt(1 - x2**2)


@dataclass(frozen=True)
class ScanRow:
    eta: float
    classical_bound: float
    quantum_max: float
    delta: float
    regime: Regime


@dataclass(frozen=True)
class ScanResult:
    rows: tuple

    HEADER = ("eta", "classical_bound", "quantum_max", "delta", "regime")

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        for r in self.rows:
            w.writerow(
                [f"{r.eta:.9f}", f"{r.classical_bound:.9f}", f"{r.quantum_max:.9f}", f"{r.delta:.9f}", r.regime.value]
            )
        return buf.getvalue()

    def to_dict(self):
        return {
            "rows": [
                {
                    "eta": r.eta,
                    "classical_bound": r.classical_bound,
                    "quantum_max": r.quantum_max,
                    "delta": r.delta,
                    "regime": r.regime.value,
                }
                for r in self.rows
            ]
        }


def violation(eta):
    """Quantum maximum minus the noncontextual ceiling ``1 - eta/3``."""
    return r3_quantum_bound(eta).value - (1 - eta / 3)


def violation_scan(eta_min=0.0, eta_max=1.0, steps=200):
    if not (0 <= eta_min < eta_max <= 1) or steps < 2:
        raise ValueError("need 0 <= eta_min < eta_max <= 1 and steps >= 2")
    rows = []
    for eta in np.linspace(eta_min, eta_max, steps):
        b = r3_quantum_bound(float(eta))
        classical = 1 - eta / 3
        rows.append(ScanRow(float(eta), float(classical), float(b.value), float(b.value - classical), b.regime))
    return ScanResult(tuple(rows))


def find_eta_c(tol=1e-6, grid=1000):
    """Sharpness of maximal violation.

    The maximum lies on the trine branch, so the search runs on
    ``[0, sqrt(0.3)]``: grid bracketing followed by bounded refinement.

    Returns
    -------
    (eta_c, r3_at_eta_c, delta_max)
    """
    hi = np.sqrt(ETA2_SWITCH)
    etas = np.linspace(0, hi, grid + 1)
    deltas = np.array([violation(e) for e in etas])
    i = int(np.argmax(deltas))
    eta_c, _ = _refine_max(violation, etas[max(i - 1, 0)], etas[min(i + 1, grid)], tol)
    return eta_c, r3_quantum_bound(eta_c).value, violation(eta_c)


def optimal_quantum_r3(eta):
    """Realise the quantum maximum explicitly.

    Builds the optimal triple (trine or parallel), a pure state orthogonal
    to it and the rank-one optimal pairwise joint measurements, then
    evaluates the average anti-correlation by the Born rule.

    Returns
    -------
    (r3, lambdas, joints, state)
    """
    regime = r3_quantum_bound(eta).regime
    if regime is Regime.TRINE:
        lam = trine(eta)
    else:
        v = np.array([eta, 0.0, 0.0])
        lam = (v, v, -v)
    r = orthogonal_direction(lam[0], lam[1], np.array([0.0, 0.0, 1.0]))
    r = orthogonal_direction(lam[0], lam[2], r)
    state = QubitState(r)
    joints = {(i, j): build_optimal_pairwise_jm(lam[i], lam[j], r) for i, j in ((0, 1), (0, 2), (1, 2))}
    r3 = sum(anticorrelation(jm, state) for jm in joints.values()) / 3
    return r3, lam, joints, state


def counterexample_check():
    """Three pairwise but not triplewise measurable observables that still
    cannot violate the noncontextual bound.

    Coplanar, sharpness ``1/sqrt(2)``, outer observables at ``3 pi/4`` on
    either side of the middle one. The best average anti-correlation is
    ``(3 + sqrt(2))/6``, below ``1 - sqrt(2)/6``.
    """
    eta = 1 / np.sqrt(2)
    # exact components of equal_length_config(eta, 3 pi/4, 3 pi/4)
    lam = (np.array([-0.5, 0.5, 0.0]), np.array([-0.5, -0.5, 0.0]), np.array([eta, 0.0, 0.0]))

    pairs = ((0, 1), (0, 2), (1, 2))
    h = {p: pairwise_compat(lam[p[0]], lam[p[1]])[0] for p in pairs}
    pairwise_ok = all(pairwise_compat(lam[i], lam[j])[1] for i, j in pairs)
    trip = triplewise_compat(*lam)
    r3_bound = sum(max_anticorrelation_pair(lam[i], lam[j]) for i, j in pairs) / 3
    state = QubitState([0.0, 0.0, 1.0])
    r3_attained = sum(anticorrelation(build_optimal_pairwise_jm(lam[i], lam[j], state.r), state) for i, j in pairs) / 3
    classical = 1 - eta / 3
    expected = (3 + np.sqrt(2)) / 6
    passed = (
        pairwise_ok
        and not trip.measurable
        and abs(r3_bound - expected) <= 1e-9
        and abs(r3_attained - expected) <= 1e-9
        and r3_bound < classical
    )
    return {
        "eta": eta,
        "H": {f"{i + 1}{j + 1}": h[i, j] for i, j in pairs},
        "pairwise_measurable": pairwise_ok,
        "triplewise_margin": trip.margin,
        "triplewise_measurable": bool(trip.measurable),
        "r3_max": r3_bound,
        "r3_attained": r3_attained,
        "r3_expected": expected,
        "classical_bound": classical,
        "passed": bool(passed),
    }
