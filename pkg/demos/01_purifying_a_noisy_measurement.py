"""Walkthrough: turning a noisy qubit measurement into a near-projective one.

A readout with noise fraction p reports the wrong bit with probability
p/2. Copying the qubit onto fresh ancillas with a fan-out of CNOTs,
measuring everything, and keeping only unanimous outcome strings trades
acceptance rate for accuracy: the effective POVM element converges to a
clean projector as the number of copies grows.
"""

import numpy as np

from entdistill.noise import (
    noisy_povm_element,
    purified_coeffs_gate_noisy,
    purified_povm_element,
)
from entdistill.qmat import expectation, projector, ket

P = 0.1  # realistic readout noise fraction (error rate p/2 = 5%)

print("=" * 72)
print("Raw noisy measurement, p =", P)
print("=" * 72)
m0 = noisy_povm_element(0, P)
print("POVM element for outcome 0:\n", np.real(m0))
print("P(0 | state |0>):", expectation(projector(ket("0")), m0))
print("P(0 | state |1>):", expectation(projector(ket("1")), m0), " <- readout error")

print()
print("=" * 72)
print("Purified measurement: fidelity and acceptance vs number of copies")
print("=" * 72)
print(f"{'n':>3} {'fidelity tr[Q0 M0]':>20} {'acceptance r0+r1':>18}")
for n in range(1, 9):
    c = purified_coeffs_gate_noisy(P, 0.0, n)
    print(f"{n:>3} {c.fidelity:>20.12f} {c.acceptance:>18.12f}")

print()
print("The purified POVM element at n = 3:")
c3 = purified_coeffs_gate_noisy(P, 0.0, 3)
print(np.real(purified_povm_element(0, c3)))
print()
print("Wrong-bit probability dropped from", P / 2, "to",
      f"{c3.r1 / (c3.r0 + c3.r1):.2e}",
      "at the cost of accepting only", f"{c3.acceptance:.1%}", "of shots.")
