"""Noisy measurements, their purification, and depolarizing CNOT noise.

A noisy computational-basis measurement is the two-outcome POVM

    M~_i = (1 - p)|i><i| + p I/2 = (1 - p/2) M_i + (p/2) M_{i xor 1},

so p/2 is the raw readout error rate. The purification gadget copies the
measured qubit onto n-1 fresh ancillas with a fan-out of CNOTs, measures
all n qubits with noisy detectors, and keeps only unanimous outcome
strings (0^n or 1^n). The surviving statistics are governed by a pair of
coefficients (r0, r1): the post-selected POVM element for outcome i is

    Q_i = (r0 M_i + r1 M_{i xor 1}) / (r0 + r1),

with r0 = prod(1 - p_k/2) and r1 = prod(p_k/2) when the CNOTs are ideal.
As n grows, r1/r0 -> 0 and Q_i approaches the projective M_i, at the
price of a shrinking acceptance yield r0 + r1.

When each CNOT itself depolarizes its qubit pair with probability
epsilon, (r0, r1) instead follow the affine recurrence

    r0' = (1 - eps) r0 (1 - p/2) + (eps/4)(r0 + r1)
    r1' = (1 - eps) r1 (p/2)     + (eps/4)(r0 + r1)

started from (1 - p/2, p/2), and the ratio r1/r0 converges to a strictly
positive fixed point s instead of zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Sequence

import numpy as np

from .qmat import I2, P0, P1, X, embed_op, partial_trace, permute_qubits, tensor


def _check_fraction(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value < 1.0:
        raise ValueError(f"{name} must lie in [0, 1), got {value}")
    return value


@dataclass(frozen=True)
class NoiseSpec:
    """Per-measurement noise fractions and the CNOT depolarizing fraction.

    ``p_list_a`` holds one rate per measured qubit; ``p_list_b`` is only
    set when a second party measures as well.
    """

    p_list_a: tuple[float, ...]
    p_list_b: tuple[float, ...] | None = None
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p_list_a", tuple(float(p) for p in self.p_list_a))
        if not self.p_list_a:
            raise ValueError("p_list_a must be nonempty")
        for p in self.p_list_a:
            _check_fraction(p, "measurement noise fraction")
        if self.p_list_b is not None:
            object.__setattr__(self, "p_list_b", tuple(float(p) for p in self.p_list_b))
            if not self.p_list_b:
                raise ValueError("p_list_b must be nonempty when given")
            for p in self.p_list_b:
                _check_fraction(p, "measurement noise fraction")
        _check_fraction(self.epsilon, "epsilon")


@dataclass(frozen=True)
class PurifiedCoeffs:
    """Unnormalized weights (r0, r1) of a post-selected measurement.

    r0 multiplies the intended projector, r1 the flipped one; r0 + r1 is
    the probability that all n outcomes agree.
    """

    r0: float
    r1: float
    n: int
    spec: NoiseSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.r0 < -1e-12 or self.r1 < -1e-12:
            raise ValueError(f"coefficients must be nonnegative, got ({self.r0}, {self.r1})")
        if self.r0 + self.r1 > 1.0 + 1e-9:
            raise ValueError(f"r0 + r1 = {self.r0 + self.r1} exceeds 1")

    @property
    def acceptance(self) -> float:
        """Post-selection yield r0 + r1."""
        return self.r0 + self.r1

    @property
    def fidelity(self) -> float:
        """tr[Q_0 M_0] = r0 / (r0 + r1), the purified element's fidelity."""
        return self.r0 / (self.r0 + self.r1)


def noisy_povm_element(outcome: int, p: float) -> np.ndarray:
    """POVM element (1-p)|i><i| + p I/2 of a noisy basis measurement."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome}")
    p = _check_fraction(p, "p")
    q = p / 2.0
    m = np.zeros((2, 2), dtype=complex)
    m[outcome, outcome] = 1.0 - q
    m[1 - outcome, 1 - outcome] = q
    return m


def collective_cnot(n: int) -> np.ndarray:
    """Fan-out gate |0><0| x I^(n-1) + |1><1| x X^(n-1); identity for n=1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return I2.copy()
    xs = tensor(*([X] * (n - 1)))
    eye = np.eye(2 ** (n - 1), dtype=complex)
    return np.kron(P0, eye) + np.kron(P1, xs)


def depolarized_cnot_apply(
    rho: np.ndarray,
    control: int,
    target: int,
    epsilon: float,
) -> np.ndarray:
    """Apply a CNOT that fails onto the maximally mixed pair with probability epsilon.

        rho -> (1 - eps) V rho V^dag + eps (I/4)_{ct} x tr_{ct}(rho)

    All other qubits of the register are untouched.
    """
    rho = np.asarray(rho, dtype=complex)
    epsilon = float(epsilon)
    if not 0.0 <= epsilon <= 1.0:  # closed interval: eps = 1 is full depolarization
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    nq = rho.shape[0].bit_length() - 1
    if 2 ** nq != rho.shape[0]:
        raise ValueError(f"state dimension {rho.shape[0]} is not a power of two")
    if control == target:
        raise ValueError("control and target must differ")
    v = embed_op(collective_cnot(2), [control, target], nq)
    out = (1.0 - epsilon) * (v @ rho @ v.conj().T)
    if epsilon > 0.0:
        out = out + epsilon * _replace_with_mixed_pair(rho, control, target, nq)
    return out


def _replace_with_mixed_pair(rho: np.ndarray, a: int, b: int, nq: int) -> np.ndarray:
    """(I/4) on qubits (a, b) tensored with rho's marginal on the rest."""
    rest = [q for q in range(nq) if q not in (a, b)]
    if not rest:
        return np.eye(4, dtype=complex) / 4.0 * np.trace(rho)
    sigma = partial_trace(rho, rest)
    full = np.kron(sigma, np.eye(4, dtype=complex) / 4.0)
    current = rest + [a, b]
    order = [current.index(q) for q in range(nq)]
    return permute_qubits(full, order)


def _recurrence_step(r0: float, r1: float, p: float, epsilon: float) -> tuple[float, float]:
    return (
        (1.0 - epsilon) * r0 * (1.0 - p / 2.0) + epsilon / 4.0 * (r0 + r1),
        (1.0 - epsilon) * r1 * (p / 2.0) + epsilon / 4.0 * (r0 + r1),
    )


def purified_coeffs_general(p_list: Sequence[float], epsilon: float = 0.0) -> PurifiedCoeffs:
    """(r0, r1) for per-qubit rates ``p_list`` and CNOT noise ``epsilon``.

    ``p_list[0]`` is the rate on the measured qubit itself, ``p_list[k]``
    the rate on the k-th ancilla. The ancilla steps are folded in from
    the last ancilla down to the first: the fan-out CNOTs act on the
    register in ascending ancilla order, so in the Heisenberg picture the
    earliest CNOT wraps the whole chain and the latest sits innermost.
    With ideal CNOTs the steps commute and the result is the plain
    product (prod(1 - p_k/2), prod(p_k/2)); with epsilon > 0 the order
    matters and this one reproduces the physical circuit exactly.
    """
    p_list = [_check_fraction(p, "measurement noise fraction") for p in p_list]
    if not p_list:
        raise ValueError("p_list must be nonempty")
    epsilon = _check_fraction(epsilon, "epsilon")
    r0, r1 = 1.0 - p_list[0] / 2.0, p_list[0] / 2.0
    for p in reversed(p_list[1:]):
        r0, r1 = _recurrence_step(r0, r1, p, epsilon)
    spec = NoiseSpec(p_list_a=tuple(p_list), epsilon=epsilon)
    return PurifiedCoeffs(r0=r0, r1=r1, n=len(p_list), spec=spec)


def purified_coeffs(p_list: Sequence[float], n: int) -> PurifiedCoeffs:
    """Ideal-CNOT coefficients (prod(1 - p_k/2), prod(p_k/2)) over n measurements."""
    p_list = list(p_list)
    if len(p_list) != n:
        raise ValueError(f"p_list has length {len(p_list)}, expected n = {n}")
    return purified_coeffs_general(p_list, epsilon=0.0)


def purified_coeffs_gate_noisy(p: float, epsilon: float, n: int) -> PurifiedCoeffs:
    """Homogeneous-rate coefficients after n measurements with noisy CNOTs."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return purified_coeffs_general([p] * n, epsilon=epsilon)


def asymptotic_ratio(p: float, epsilon: float) -> float:
    """Limit s of r1/r0 as the number of purification rounds grows.

        s = 2(1-p)(1 - 1/eps) + sqrt(5 - 4p(2-p) + (4(1-p)^2/eps)(1/eps - 2))

    Only defined for epsilon > 0; with ideal CNOTs the ratio tends to 0
    and callers should use the exact epsilon = 0 expressions instead.
    """
    p = _check_fraction(p, "p")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    root = np.sqrt(5.0 - 4.0 * p * (2.0 - p) + 4.0 * (1.0 - p) ** 2 / epsilon * (1.0 / epsilon - 2.0))
    return 2.0 * (1.0 - p) * (1.0 - 1.0 / epsilon) + float(root)


def purified_povm_element(outcome: int, coeffs: PurifiedCoeffs) -> np.ndarray:
    """Normalized post-selected POVM element (r0 M_i + r1 M_{i xor 1}) / (r0 + r1)."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome}")
    total = coeffs.r0 + coeffs.r1
    if total <= 0.0:
        raise ValueError("degenerate post-selection: r0 + r1 = 0")
    m = np.zeros((2, 2), dtype=complex)
    m[outcome, outcome] = coeffs.r0 / total
    m[1 - outcome, 1 - outcome] = coeffs.r1 / total
    return m
