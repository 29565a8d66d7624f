"""Walkthrough: two-way distillation of isotropic states with noisy readout.

Without purification, readout noise p = 0.1 restricts distillation to
input fidelities F > 0.617. Purifying the measurements with a few extra
qubits pushes the threshold back toward the ideal 1/2.
"""

import numpy as np

from entdistill.distill_mixed import distill_map, lower_bound, parity_weights
from entdistill.qmat import singlet_fraction
from entdistill.states import isotropic, twirl

P = 0.1

print("=" * 72)
print(f"Distillability thresholds L(n, m) for readout noise p = {P}")
print("=" * 72)
header = "n\\m" + "".join(f"{m:>12}" for m in (1, 2, 3))
print(header)
for n in (1, 2, 3, 4):
    row = f"{n:>3}"
    for m in (1, 2, 3):
        row += f"{lower_bound(parity_weights([P] * n, [P] * m)):>12.6f}"
    print(row)
print()
print("n = m = 1 is the bare noisy protocol (threshold 0.617);")
print("already n = m = 2 brings the threshold to 0.5056, near the ideal 0.5.")

print()
print("=" * 72)
print("One round of the map at selected input fidelities, n = m = 2")
print("=" * 72)
w = parity_weights([P, P], [P, P])
print(f"threshold L = {lower_bound(w):.6f}")
print(f"{'F_in':>8} {'F_out':>14} {'gain':>10} {'p_succ':>10}")
for f in (0.45, 0.52, 0.60, 0.70, 0.85, 0.95):
    res = distill_map(f, w)
    print(f"{f:>8.2f} {res.fidelity_out:>14.8f} {res.fidelity_out - f:>+10.6f} {res.p_succ:>10.6f}")

print()
print("=" * 72)
print("Twirling first: an arbitrary two-qubit state enters as its isotropic")
print("projection with the same singlet fraction")
print("=" * 72)
rng = np.random.RandomState(0)
m = rng.randn(4, 4) + 1j * rng.randn(4, 4)
rho = m @ m.conj().T
rho /= np.trace(rho).real
f = singlet_fraction(rho)
print("random state singlet fraction:", f"{f:.6f}")
print("twirled state equals isotropic(F):",
      bool(np.allclose(twirl(rho), isotropic(f), atol=1e-12)))
res = distill_map(f, w)
print("after one round:", f"{res.fidelity_out:.6f}",
      "(improves)" if res.fidelity_out > f else "(below threshold, degrades)")
