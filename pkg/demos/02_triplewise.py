"""
Three observables and the geometric median
==========================================

Three observables ``l1, l2, l3`` are jointly measurable exactly when the
four points ``L0 = l1 + l2 + l3`` and ``Lk = 2 lk - L0`` have total
distance at most 4 from their Fermat-Torricelli point (geometric median).
Pairwise compatibility does not imply this.
"""

# %%
import numpy as np

from contextua import build_triplewise_jm, fermat_torricelli, pairwise_compat, povm_validate, triplewise_compat
from contextua.triplewise import equal_length_config, equal_length_coplanar_bound, trine

# %% Trine: three coplanar vectors at 120 degrees
print("trine sharpness   margin (4 - sum)   measurable")
for eta in (0.5, 0.6, 2 / 3, 0.7):
    check = triplewise_compat(*trine(eta))
    print(f"  {eta:.4f}          {check.margin:+.5f}          {check.measurable}")

# %% The median itself
points = np.array([[0, 0, 0], [4, 0, 0], [0, 4, 0], [1, 1, 0]], dtype=float)
ft = fermat_torricelli(points)
print(f"\nmedian of a triangle plus an interior point: {ft.point}, at vertex {ft.at_vertex}")

# %% A joint POVM for the trine at eta = 0.6
joint = build_triplewise_jm(*trine(0.6))
print("\neight-outcome joint is a valid POVM:", povm_validate(joint.effects).ok)
print("pair context values Z12, Z13, Z23:", round(joint.Z12, 4), round(joint.Z13, 4), round(joint.Z23, 4))

# %% Pairwise compatible but not triplewise: outer vectors at 3 pi/4
lam = equal_length_config(1 / np.sqrt(2), 3 * np.pi / 4, 3 * np.pi / 4)
pairs_ok = all(pairwise_compat(lam[i], lam[j])[1] for i, j in ((0, 1), (0, 2), (1, 2)))
print(f"\npairwise measurable: {pairs_ok}, triplewise: {triplewise_compat(*lam).measurable}")
print(f"largest triplewise sharpness for this geometry: {equal_length_coplanar_bound(3 * np.pi / 4, 3 * np.pi / 4):.5f}")
