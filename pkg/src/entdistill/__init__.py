"""Purification of noisy qubit measurements and entanglement distillation.

The package has three layers:

- ``qmat`` and ``states``: dense complex linear algebra on small qubit
  registers and the canonical two-qubit states (ebit, isotropic family,
  Schmidt-form pure states).
- ``noise``, ``distill_mixed`` and ``distill_pure``: the analytic layer.
  Noisy computational-basis POVMs, the post-selection gadget that
  purifies them (with and without depolarizing CNOT noise), the two-way
  distillation round for isotropic states, and local filtering of pure
  states, all in closed form.
- ``oracle``: brute-force density-matrix simulations of the same
  protocols, used to verify every closed form independently.

``cli`` wraps the analytic and oracle layers in an ``entdistill``
command with table reproduction, parameter sweeps and verification.
"""

from . import cli, distill_mixed, distill_pure, noise, oracle, qmat, states
from .distill_mixed import (
    DistillResult,
    ParityWeights,
    distill_map,
    lower_bound,
    lower_bound_limit,
    parity_weights,
    parity_weights_gate_noisy,
    parity_weights_general,
    post_state_unnormalized,
)
from .distill_pure import (
    FilterOps,
    filter_ops,
    pure_filter_fidelity,
    pure_filter_fidelity_limit,
    pure_post_state_unnormalized,
)
from .noise import (
    NoiseSpec,
    PurifiedCoeffs,
    asymptotic_ratio,
    collective_cnot,
    depolarized_cnot_apply,
    noisy_povm_element,
    purified_coeffs,
    purified_coeffs_gate_noisy,
    purified_coeffs_general,
    purified_povm_element,
)
from .oracle import (
    EffectivePovm,
    oracle_distill_mixed,
    oracle_distill_pure,
    oracle_effective_povm,
)
from .qmat import (
    conjugate,
    expectation,
    partial_trace,
    singlet_fraction,
    tensor,
)
from .states import bell_phi_plus, isotropic, pure_theta, twirl

__version__ = "0.1.0"
