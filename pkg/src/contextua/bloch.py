"""
Qubit effects, POVMs and states in Bloch form.

An effect ``a*I + b.sigma`` is stored as the pair ``(a, b)``; its eigenvalues are
``a +- |b|`` so positivity checks are exact and never touch complex matrices.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ContextuaError, EmptyPovm, InvalidSharpness, MalformedLabels

TOL = 1e-10

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def as_vec3(v):
    """Return `v` as a read-only float64 array of shape (3,)."""
    arr = np.array(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ContextuaError(f"expected 3 components, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ContextuaError(f"non-finite Bloch vector {arr!r}")
    arr.flags.writeable = False
    return arr


def unit(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    return v / n if n > 0 else np.zeros_like(v)


def outcome_labels(n):
    """All +-1 tuples of length `n` in lexicographic order with +1 first."""
    return tuple(itertools.product((1, -1), repeat=n))


@dataclass(frozen=True, eq=False)
class Effect:
    a: float
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", as_vec3(self.b))

    @property
    def eigenvalues(self):
        n = float(np.linalg.norm(self.b))
        return self.a - n, self.a + n

    @property
    def min_eigenvalue(self):
        return self.eigenvalues[0]

    def matrix(self):
        return self.a * np.eye(2) + np.tensordot(self.b, PAULI, axes=1)

    def to_dict(self):
        return {"a": self.a, "b": [float(x) for x in self.b]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["a"], d["b"])


@dataclass(frozen=True, eq=False)
class Povm:
    effects: tuple
    outcome_labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        object.__setattr__(
            self, "outcome_labels", tuple(tuple(int(s) for s in lab) for lab in self.outcome_labels)
        )
        if len(self.effects) != len(self.outcome_labels):
            raise MalformedLabels(
                f"{len(self.effects)} effects but {len(self.outcome_labels)} labels"
            )

    def __len__(self):
        return len(self.effects)

    def __getitem__(self, label):
        return self.effects[self.outcome_labels.index(tuple(label))]

    def to_dict(self):
        return {
            "outcome_labels": [list(lab) for lab in self.outcome_labels],
            "effects": [e.to_dict() for e in self.effects],
        }

    @classmethod
    def from_dict(cls, d):
        return cls([Effect.from_dict(e) for e in d["effects"]], d["outcome_labels"])


@dataclass(frozen=True, eq=False)
class QubitState:
    r: np.ndarray

    def __post_init__(self):
        r = as_vec3(self.r)
        if np.linalg.norm(r) > 1 + 1e-9:
            raise ContextuaError(f"Bloch vector outside the ball: |r| = {np.linalg.norm(r)}")
        object.__setattr__(self, "r", r)

    def is_pure(self, tol=1e-9):
        return abs(np.linalg.norm(self.r) - 1) <= tol

    def density_matrix(self):
        return 0.5 * (np.eye(2) + np.tensordot(self.r, PAULI, axes=1))


@dataclass(frozen=True, eq=False)
class UnbiasedObservable:
    """Two-outcome POVM ``{(I +- lambda.sigma)/2}``; sharpness is ``|lambda|``."""

    lam: np.ndarray

    def __post_init__(self):
        lam = as_vec3(self.lam)
        if np.linalg.norm(lam) > 1 + TOL:
            raise InvalidSharpness(f"|lambda| = {np.linalg.norm(lam)} exceeds 1")
        object.__setattr__(self, "lam", lam)

    @property
    def eta(self):
        return float(np.linalg.norm(self.lam))

    def effect(self, mu):
        return Effect(0.5, 0.5 * mu * self.lam)

    def povm(self):
        return Povm([self.effect(1), self.effect(-1)], [(1,), (-1,)])


def check_sharpness(lam, tol=TOL):
    lam = as_vec3(lam)
    if np.linalg.norm(lam) > 1 + tol:
        raise InvalidSharpness(f"|lambda| = {np.linalg.norm(lam):.12g} exceeds 1")
    return lam


def effect_is_psd(e, tol=TOL):
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return e.min_eigenvalue >= -tol


@dataclass(frozen=True)
class Validation:
    """Outcome of :func:`povm_validate`; truthy iff every constraint held."""

    ok: bool
    constraint: str = ""
    message: str = ""
    deficit: float = 0.0

    def __bool__(self):
        return self.ok


def povm_validate(p, tol=TOL):
    """Check completeness and positivity of a POVM.

    Returns a :class:`Validation` naming the first failing constraint, checked in
    the order: identity coefficient sum, sigma coefficient sum, then each effect.
    """
    if len(p.effects) == 0:
        raise EmptyPovm("POVM has no effects")
    a_sum = sum(e.a for e in p.effects)
    if abs(a_sum - 1) > tol:
        return Validation(False, "completeness", f"sum of identity coefficients is {a_sum!r}", abs(a_sum - 1))
    b_sum = np.sum([e.b for e in p.effects], axis=0)
    if np.max(np.abs(b_sum)) > tol:
        return Validation(False, "completeness", f"sum of Bloch coefficients is {b_sum.tolist()}", float(np.max(np.abs(b_sum))))
    for lab, e in zip(p.outcome_labels, p.effects):
        if not effect_is_psd(e, tol):
            return Validation(False, "positivity", f"effect {lab} has min eigenvalue {e.min_eigenvalue!r}", -e.min_eigenvalue)
    return Validation(True)


def outcome_probability(e, s):
    """Born rule ``Tr[rho E] = a + b.r``."""
    r = s.r if isinstance(s, QubitState) else as_vec3(s)
    return e.a + float(np.dot(e.b, r))


def marginalize(joint, axis):
    """Marginal POVM on the outcome index (or indices) `axis`.

    `axis` may be an int or a tuple of ints; the result carries the kept label
    entries in the given order, still in lexicographic +1-first order.
    """
    keep = (axis,) if isinstance(axis, (int, np.integer)) else tuple(axis)
    labels = joint.outcome_labels
    n = len(labels[0]) if labels else 0
    if any(len(lab) != n for lab in labels) or set(labels) != set(outcome_labels(n)) or len(labels) != 2**n:
        raise MalformedLabels("outcome labels are not a full +-1 product grid")
    if any(k < 0 or k >= n for k in keep) or len(set(keep)) != len(keep):
        raise MalformedLabels(f"axis {axis} out of range for {n}-index labels")
    acc = {lab: [0.0, np.zeros(3)] for lab in outcome_labels(len(keep))}
    for lab, e in zip(labels, joint.effects):
        key = tuple(lab[k] for k in keep)
        acc[key][0] += e.a
        acc[key][1] = acc[key][1] + e.b
    keys = outcome_labels(len(keep))
    return Povm([Effect(*acc[k]) for k in keys], keys)
