"""
Noncontextual hidden-variable models
====================================

A hidden state fixes, for each observable, a sign ``A_k`` and a sharpness
``eta_k``, and for each pair a context value ``C_jk``. The average
anti-correlation of any such model is at most ``1 - max_k <|eta_k|>/3``.
Here we build single-state models, check when a triple response exists,
and run the Monte Carlo check of the bound.
"""

# %%
from contextua import HiddenModel, HiddenState, build_triple_response, classical_r3, compatibility_check, lsw_bound
from contextua import mc_verify_theorem2 as mc_check
from contextua.bloch import outcome_labels

# %% A state that saturates the bound, and it has no triple response
eta = 0.4
state = HiddenState((1, 1, -1), (eta, eta, eta), (2 * eta - 1, -1, -1))
model = HiddenModel((1.0,), (state,))
print(f"R3 = {classical_r3(model):.4f}   bound = {lsw_bound(eta, eta, eta):.4f}")
print("triple response exists:", compatibility_check(state))

# %% A compatible state and its eight-outcome response
sharp = HiddenState((1, -1, -1), (1, 1, 1), (-1, -1, 1))
response = build_triple_response(sharp)
print("\nsharp deterministic state, response support:",
      {k: round(v, 3) for k, v in zip(outcome_labels(3), response.values) if v > 0})

# %% Random models never exceed the bound
report = mc_check(20_000, seed=1)
print(f"\n{report['trials']} random models: {report['violations']} violations, "
      f"min slack {report['min_slack']:.2e}, {report['incompatible_fraction']:.0%} without a triple response")
