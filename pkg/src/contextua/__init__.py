"""
Joint measurability of qubit observables and a three-observable noncontextuality inequality.

Submodules
----------
bloch          effects, POVMs and states in Bloch form
pairwise       two-observable criterion and joint POVMs
fermat         Fermat-Torricelli point (geometric median)
triplewise     three-observable criterion, construction and special cases
noncontextual  hidden-variable models, response functions, Monte Carlo bound check
lsw            quantum maximum of the average anti-correlation, violation curve
cli            batch command line front end
"""

from .bloch import (
    TOL,
    Effect,
    Povm,
    QubitState,
    UnbiasedObservable,
    effect_is_psd,
    marginalize,
    outcome_probability,
    povm_validate,
)
from .errors import ContextuaError
from .fermat import FtResult, fermat_torricelli
from .lsw import (
    counterexample_check,
    find_eta_c,
    g_func,
    gram_constraint,
    max_r3_numeric,
    r3_quantum_bound,
    r_func,
    violation_scan,
)
from .noncontextual import (
    HiddenModel,
    HiddenState,
    build_triple_response,
    classical_r3,
    compatibility_check,
    feasible_triple_oracle,
    lsw_bound,
    mc_verify_theorem2,
    response_pair,
    response_single,
)
from .pairwise import (
    PairwiseJoint,
    anticorrelation,
    build_optimal_pairwise_jm,
    build_pairwise_jm,
    l_bounds,
    max_anticorrelation_pair,
    pairwise_compat,
)
from .triplewise import (
    LambdaSystem,
    TriplewiseJoint,
    build_triplewise_jm,
    coplanar_condition,
    equal_length_coplanar_bound,
    orthogonal_case_check,
    triplewise_compat,
)

__version__ = "0.1.0"
