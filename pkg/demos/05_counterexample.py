"""
Incompatibility without violation
=================================

Three coplanar observables of sharpness ``1/sqrt(2)``, the outer two at
``3 pi/4`` either side of the middle one, are pairwise but not triplewise
jointly measurable. They still cannot violate the noncontextual bound, so
violation is not a witness of triplewise incompatibility alone.
"""

# %%
import json

import numpy as np

from contextua import counterexample_check

report = counterexample_check()
print(json.dumps(report, indent=2, default=float))
print(f"\nbest quantum R3 {report['r3_max']:.5f} = (3 + sqrt 2)/6 = {(3 + np.sqrt(2)) / 6:.5f}")
print(f"noncontextual ceiling {report['classical_bound']:.5f}: no violation")
