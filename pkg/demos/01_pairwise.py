"""
Two unsharp qubit observables
=============================

Two unbiased observables with Bloch vectors ``l1`` and ``l2`` admit a joint
measurement exactly when ``H = 1 - |l1|^2 - |l2|^2 + (l1.l2)^2 >= 0``.
This script walks through the criterion, one explicit joint POVM, and the
rank-one joint that maximises anti-correlation in a given pure state.
"""

# %%
import numpy as np

from contextua import (
    anticorrelation,
    build_optimal_pairwise_jm,
    build_pairwise_jm,
    max_anticorrelation_pair,
    pairwise_compat,
    povm_validate,
)
from contextua.bloch import marginalize

X, Y, Z = np.eye(3)

# %% Orthogonal observables: compatible up to |l| = 1/sqrt(2)
for eta in (0.5, 1 / np.sqrt(2), 0.75):
    h, ok = pairwise_compat(eta * X, eta * Y)
    print(f"eta = {eta:.4f}   H = {h:+.4f}   jointly measurable: {ok}")

# %% An explicit joint POVM: Z = l1.l2 = 0, no z vector
joint = build_pairwise_jm(0.6 * X, 0.6 * Y, 0.0, np.zeros(3))
print("\nvalid POVM:", povm_validate(joint.effects).ok)
for label, effect in zip(joint.effects.outcome_labels, joint.effects.effects):
    print(f"  {label}: a = {effect.a:.3f}  b = {np.round(effect.b, 3)}")
marginal = marginalize(joint.effects, 0)
for label, effect in zip(marginal.outcome_labels, marginal.effects):
    print(f"  first marginal {label}: a = {effect.a:.3f}  b = {np.round(effect.b, 3)}")

# %% The best anti-correlation in a state orthogonal to both observables
l1, l2 = 0.6 * X, 0.6 * Y
best = build_optimal_pairwise_jm(l1, l2, Z)
print(f"\nmax anti-correlation: {max_anticorrelation_pair(l1, l2):.6f}")
print(f"attained by rank-one joint in state +z: {anticorrelation(best, Z):.6f}")
