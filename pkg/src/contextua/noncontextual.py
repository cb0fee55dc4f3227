"""
Noncontextual hidden-variable models with unsharp and joint measurements.

A hidden state fixes, for three binary observables, the predetermined values
``A_k = +-1``, the local unsharpness ``eta_k`` and the values ``C_jk`` of the
context observables of the three pairwise joint measurements. Hidden variables
are finite weighted ensembles, so every expectation is an exact finite sum.

Indices are zero based: pair ``(0, 1)`` is the joint measurement of the first
two observables, and ``C`` is stored in the order ``(C01, C02, C12)``.
"""

from dataclasses import dataclass

import numpy as np

from .bloch import outcome_labels
from .errors import Incompatible, InvalidContextValue

PAIRS = ((0, 1), (0, 2), (1, 2))
TRIPLE_LABELS = outcome_labels(3)
TOL = 1e-10


def _pair_index(pair):
    j, k = sorted(pair)
    return PAIRS.index((j, k))


@dataclass(frozen=True)
class HiddenState:
    A: tuple
    eta: tuple
    C: tuple

    def __post_init__(self):
        A = tuple(int(a) for a in self.A)
        if len(A) != 3 or any(a not in (1, -1) for a in A):
            raise ValueError(f"predetermined values must be three +-1 entries, got {self.A}")
        eta = tuple(float(e) for e in self.eta)
        if len(eta) != 3 or any(abs(e) > 1 for e in eta):
            raise ValueError(f"local unsharpness must lie in [-1, 1], got {self.eta}")
        C = tuple(float(c) for c in self.C)
        if len(C) != 3:
            raise ValueError("need three context values (C01, C02, C12)")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "C", C)

    @property
    def tilde(self):
        """Biased values ``eta_k A_k``."""
        return tuple(e * a for e, a in zip(self.eta, self.A))

    def context(self, pair):
        return self.C[_pair_index(pair)]

    def pair_deficit(self, pair):
        """Largest violation of ``1 +- C >= |t_j +- t_k|`` (<= 0 when valid)."""
        j, k = pair
        t, c = self.tilde, self.context(pair)
        return max(abs(t[j] + t[k]) - 1 - c, abs(t[j] - t[k]) - 1 + c)

    def is_valid(self, tol=TOL):
        return all(self.pair_deficit(p) <= tol for p in PAIRS)


@dataclass(frozen=True)
class HiddenModel:
    weights: tuple
    states: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != len(self.states) or not w:
            raise ValueError("need one weight per hidden state")
        if min(w) < 0 or abs(sum(w) - 1) > 1e-12:
            raise ValueError(f"weights must be a probability vector, sum = {sum(w)!r}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", tuple(self.states))

    def average(self, f):
        return sum(w * f(s) for w, s in zip(self.weights, self.states))

    def sharpness(self):
        """Average local sharpness ``<|eta_k|>`` for each observable."""
        return tuple(self.average(lambda s, k=k: abs(s.eta[k])) for k in range(3))

    def mean_context(self):
        return tuple(self.average(lambda s, i=i: s.C[i]) for i in range(3))


@dataclass(frozen=True)
class TripleResponse:
    values: tuple
    C: float

    def __getitem__(self, label):
        return self.values[TRIPLE_LABELS.index(tuple(label))]

    def marginal(self, pair):
        """Sum out the index not in `pair`; returns {(mu, nu): value}."""
        out = {}
        for lab, v in zip(TRIPLE_LABELS, self.values):
            key = tuple(lab[i] for i in pair)
            out[key] = out.get(key, 0.0) + v
        return out


def response_single(s, k, mu):
    return (1 + mu * s.tilde[k]) / 2


def response_pair(s, pair, mu, nu, tol=TOL):
    """``(1 + mu t_j + nu t_k + mu nu C_jk) / 4`` for the pair ``(j, k)``."""
    deficit = s.pair_deficit(pair)
    if deficit > tol:
        raise InvalidContextValue(f"context value of pair {pair} violates positivity by {deficit:.3e}")
    j, k = pair
    t = s.tilde
    return (1 + mu * t[j] + nu * t[k] + mu * nu * s.context(pair)) / 4


def compatibility_margin(s):
    """Smaller slack of ``1 - |C02 - C12| >= C01 >= |C02 + C12| - 1``."""
    c01, c02, c12 = s.C
    return min(1 - abs(c02 - c12) - c01, c01 - abs(c02 + c12) + 1)


def compatibility_check(s, tol=TOL):
    """Whether the three pairwise joint measurements at this hidden state
    admit a common triplewise joint measurement."""
    return compatibility_margin(s) >= -tol


def _triple_terms(s, C):
    """``8 chi[mu, nu, tau]`` for each outcome, given the triple context value `C`."""
    t = s.tilde
    c01, c02, c12 = s.C
    return np.array(
        [
            1 + m * t[0] + n * t[1] + r * t[2] + m * n * c01 + m * r * c02 + n * r * c12 + m * n * r * C
            for m, n, r in TRIPLE_LABELS
        ]
    )


def gamma(s, tau):
    """``Gamma^tau[mu, nu]``; positivity of the triple response reads ``1 + tau C >= Gamma``."""
    t = s.tilde
    c01, c02, c12 = s.C
    return {
        (m, n): m * (t[0] + tau * c12) + n * (t[1] + tau * c02) - m * n * (c01 + tau * t[2])
        for m, n in outcome_labels(2)
    }


def build_triple_response(s, tol=TOL):
    """Triplewise response with the three pairwise responses as marginals.

    The triple context value is ``C = max Gamma^+ - 1``.
    """
    if not compatibility_check(s, tol):
        raise Incompatible(f"pairwise contexts incompatible, margin {compatibility_margin(s):.3e}")
    C = max(gamma(s, 1).values()) - 1
    values = _triple_terms(s, C) / 8
    return TripleResponse(tuple(float(v) for v in values), float(C))


def feasible_triple_oracle(s, tol=1e-6, step=1e-3):
    """Brute-force search for a triple context value making every ``8 chi >= -tol``.

    Scans C over [-1, 1] on a grid, then refines around the best grid point by
    ternary search. The objective ``min_k 8 chi_k(C)`` is concave in C, so the
    refinement finds its maximum.
    """
    base = _triple_terms(s, 0.0)
    sign = np.array([m * n * r for m, n, r in TRIPLE_LABELS], dtype=float)

    grid = np.linspace(-1, 1, int(round(2 / step)) + 1)
    vals = np.min(base[:, None] + sign[:, None] * grid[None, :], axis=0)
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    terms = list(zip(base.tolist(), sign.tolist()))

    def worst(c):
        return min(b + g * c for b, g in terms)

    # 60 thirds shrink the bracket below 1e-10
    for _ in range(60):
        a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if worst(a) < worst(b):
            lo = a
        else:
            hi = b
    best = max(vals[i], worst(0.5 * (lo + hi)))
    return bool(best >= -tol)


def classical_r3(m, tol=TOL):
    """Average anti-correlation over the three pairwise joint measurements."""
    total = 0.0
    for pair in PAIRS:
        total += m.average(lambda s: sum(response_pair(s, pair, mu, -mu, tol) for mu in (1, -1)))
    return total / 3


def lsw_bound(eta1, eta2, eta3):
    """Noncontextual ceiling ``1 - max(eta)/3`` on the average anti-correlation."""
    etas = (eta1, eta2, eta3)
    if any(not 0 <= e <= 1 for e in etas):
        raise ValueError(f"sharpness values must lie in [0, 1], got {etas}")
    return 1 - max(etas) / 3


def context_interval(t_j, t_k):
    """Admissible ``C_jk`` range ``[|t_j + t_k| - 1, 1 - |t_j - t_k|]``."""
    return abs(t_j + t_k) - 1, 1 - abs(t_j - t_k)


def random_hidden_state(rng, edge_prob=0.0):
    """Random valid hidden state.

    ``A`` is uniform on +-1, ``eta`` uniform on [0, 1] (a negative local
    unsharpness is the same as flipping ``A``), and each ``C_jk`` uniform on
    its admissible interval. With probability `edge_prob` each ``C_jk`` is
    instead pinned to a random end of that interval.
    """
    A = rng.choice((-1, 1), size=3)
    eta = rng.uniform(0, 1, size=3)
    t = eta * A
    C = []
    for j, k in PAIRS:
        lo, hi = context_interval(t[j], t[k])
        if rng.random() < edge_prob:
            C.append(lo if rng.random() < 0.5 else hi)
        else:
            C.append(rng.uniform(lo, hi))
    return HiddenState(tuple(A), tuple(eta), tuple(C))


def random_hidden_model(rng, max_states=6, edge_prob=0.25):
    n = int(rng.integers(1, max_states + 1))
    weights = rng.dirichlet(np.ones(n))
    weights = weights / weights.sum()
    states = [random_hidden_state(rng, edge_prob) for _ in range(n)]
    return HiddenModel(tuple(weights[:-1]) + (1 - float(weights[:-1].sum()),), tuple(states))


def _models_from_uniforms(U, max_states, edge_prob):
    """Turn uniform blocks into padded model arrays.

    Returns weights ``(T, S)`` (zero on unused slots), local unsharpness,
    biased values and contexts ``(T, S, 3)``.
    """
    T, S = len(U), max_states
    cols = iter(np.split(U[:, 1:], [S, 4 * S, 7 * S, 10 * S, 13 * S], axis=1))
    n = 1 + np.minimum((U[:, 0] * S).astype(int), S - 1)
    active = np.arange(S)[None, :] < n[:, None]
    w = -np.log1p(-next(cols)) * active
    w /= w.sum(axis=1, keepdims=True)
    A = np.where(next(cols).reshape(T, S, 3) < 0.5, -1.0, 1.0)
    eta = next(cols).reshape(T, S, 3)
    t = eta * A
    j, k = np.array(PAIRS).T
    lo = np.abs(t[..., j] + t[..., k]) - 1
    hi = 1 - np.abs(t[..., j] - t[..., k])
    C = lo + (hi - lo) * next(cols).reshape(T, S, 3)
    pin = next(cols).reshape(T, S, 3) < edge_prob
    side = next(cols).reshape(T, S, 3) < 0.5
    C = np.where(pin, np.where(side, lo, hi), C)
    return w, eta, t, C


def mc_verify_theorem2(trials, seed, max_states=6, edge_prob=0.25, chunk=20_000):
    """Monte Carlo test of ``R3 <= 1 - max_k <|eta_k|>/3`` over random models.

    Each trial draws a model of up to `max_states` hidden states from its own
    generator seeded by ``(seed, trial)``. Contexts are drawn from the full
    positivity region, so most models have incompatible pairwise joint
    measurements. The bound is checked with each observable's sharpness
    taken as its average local sharpness in the model, the tightest value
    allowed.

    Returns
    -------
    dict
        ``trials``, ``violations``, ``max_slack`` and ``min_slack`` (bound
        minus R3), ``incompatible_fraction`` and ``seed``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    j, k = np.array(PAIRS).T
    width = 1 + 16 * max_states
    slacks, incompatible = [], 0
    for start in range(0, trials, chunk):
        idx = range(start, min(start + chunk, trials))
        U = np.stack([np.random.default_rng([seed, i]).random(width) for i in idx])
        w, eta, t, C = _models_from_uniforms(U, max_states, edge_prob)
        # chi[+,-] + chi[-,+] per hidden state and pair
        anti = (1 + t[..., j] - t[..., k] - C) / 4 + (1 - t[..., j] + t[..., k] - C) / 4
        r3 = np.einsum("ts,tsp->t", w, anti) / 3
        bound = 1 - np.max(np.einsum("ts,tsk->tk", w, np.abs(eta)), axis=1) / 3
        slacks.append(bound - r3)
        margin = np.minimum(1 - np.abs(C[..., 1] - C[..., 2]) - C[..., 0], C[..., 0] - np.abs(C[..., 1] + C[..., 2]) + 1)
        incompatible += int(np.sum(np.any((margin < 0) & (w > 0), axis=1)))
    slacks = np.concatenate(slacks)
    return {
        "trials": int(trials),
        "violations": int(np.sum(slacks < -1e-12)),
        "max_slack": float(slacks.max()),
        "min_slack": float(slacks.min()),
        "incompatible_fraction": incompatible / trials,
        "seed": seed,
    }
