"""Single-round two-way distillation of isotropic states with purified measurements.

Both parties hold two copies of an isotropic state with singlet fraction
F, apply a bilateral CNOT between their halves, and measure the second
pair with purified noisy detectors (depths n and m). Keeping only equal
effective outcomes leaves the first pair in a new isotropic-like state
whose singlet fraction F' exceeds F exactly when F lies above a
threshold L that depends on the detector quality but not on F.

The detector quality enters through two parity weights:

    r_even = r0^A r0^B + r1^A r1^B    (both effective outcomes faithful
                                       or both flipped)
    r_odd  = r0^A r1^B + r1^A r0^B    (exactly one flipped)

with per-party (r0, r1) from the purification analysis. Flips leak
anti-correlated populations into the accepted branch through the ratio
t = r_odd / r_even; the output fidelity map is

    F' = [F^2 + w^2 + g] / [F^2 + 2Fw + 5w^2 + 4g],
    w = (1 - F)/3,  g = (Fw + w^2) t,

and the improvement threshold has the closed form

    L = (r_even + r_odd) / (2 (r_even - r_odd)).
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

import numpy as np

from .noise import PurifiedCoeffs, _check_fraction, purified_coeffs_general
from .qmat import PHI_PLUS, projector

#: |00><00| + |11><11| and |01><01| + |10><10|, the correlated and
#: anti-correlated computational projectors.
PI_EVEN = np.diag([1.0, 0.0, 0.0, 1.0]).astype(complex)
PI_ODD = np.diag([0.0, 1.0, 1.0, 0.0]).astype(complex)


@dataclass(frozen=True)
class ParityWeights:
    """Probabilities that the two parties' effective outcomes agree or differ."""

    r_even: float
    r_odd: float
    n: int
    m: int

    def __post_init__(self):
        if self.r_even < 0.0 or self.r_odd < 0.0:
            raise ValueError(f"weights must be nonnegative, got ({self.r_even}, {self.r_odd})")
        if self.r_even + self.r_odd > 1.0 + 1e-9:
            raise ValueError("r_even + r_odd exceeds 1")


@dataclass(frozen=True)
class DistillResult:
    """Outcome of one post-selected distillation round.

    ``weights`` is None for the pure-state filtering protocol, which has
    no two-party parity structure.
    """

    fidelity_out: float
    p_succ: float
    fidelity_in: float
    weights: ParityWeights | None = None


def combine_coeffs(a: PurifiedCoeffs, b: PurifiedCoeffs) -> ParityWeights:
    """Parity weights from the two parties' purified-measurement coefficients."""
    return ParityWeights(
        r_even=a.r0 * b.r0 + a.r1 * b.r1,
        r_odd=a.r0 * b.r1 + a.r1 * b.r0,
        n=a.n,
        m=b.n,
    )


def parity_weights(p_a: Sequence[float], p_b: Sequence[float]) -> ParityWeights:
    """Weights for ideal CNOTs and per-measurement rates p_a (Alice), p_b (Bob).

    Symmetric under swapping the two rate lists.
    """
    if not list(p_a) or not list(p_b):
        raise ValueError("rate lists must be nonempty")
    return combine_coeffs(
        purified_coeffs_general(p_a, epsilon=0.0),
        purified_coeffs_general(p_b, epsilon=0.0),
    )


def parity_weights_gate_noisy(p: float, epsilon: float, n: int, m: int) -> ParityWeights:
    """Weights when both parties use homogeneous rate p and noisy CNOTs."""
    if n < 1 or m < 1:
        raise ValueError(f"purification depths must be >= 1, got n={n}, m={m}")
    return combine_coeffs(
        purified_coeffs_general([p] * n, epsilon=epsilon),
        purified_coeffs_general([p] * m, epsilon=epsilon),
    )


def parity_weights_general(
    p_a: Sequence[float],
    p_b: Sequence[float],
    epsilon: float = 0.0,
) -> ParityWeights:
    """Weights for heterogeneous rates combined with CNOT noise."""
    if not list(p_a) or not list(p_b):
        raise ValueError("rate lists must be nonempty")
    return combine_coeffs(
        purified_coeffs_general(p_a, epsilon=epsilon),
        purified_coeffs_general(p_b, epsilon=epsilon),
    )


def _map_terms(f: float, weights: ParityWeights) -> tuple[float, float, float]:
    """(numerator, denominator, g) of the fidelity map at input fraction f."""
    if weights.r_even <= 0.0:
        raise ValueError("r_even must be positive")
    w = (1.0 - f) / 3.0
    g = (f * w + w * w) * (weights.r_odd / weights.r_even)
    num = f * f + w * w + g
    den = f * f + 2.0 * f * w + 5.0 * w * w + 4.0 * g
    return num, den, g


def distill_map(f: float, weights: ParityWeights) -> DistillResult:
    """One round of the fidelity map at input singlet fraction f.

    The success probability is the trace of the unnormalized
    post-selected state, r_even times the map's denominator.
    """
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"input fidelity must lie in [0, 1], got {f}")
    num, den, _ = _map_terms(f, weights)
    return DistillResult(
        fidelity_out=num / den,
        p_succ=weights.r_even * den,
        fidelity_in=f,
        weights=weights,
    )


def post_state_unnormalized(f: float, weights: ParityWeights) -> np.ndarray:
    """The accepted branch's unnormalized two-qubit state, p_succ * rho'.

    Expanding the post-selected output over |phi+><phi+| and the
    correlated/anti-correlated projectors:

        r_even (F - w)^2 |phi+><phi+|
        + [F w (2 r_even + r_odd) + w^2 r_odd] Pi_even
        + [F w r_odd + w^2 (2 r_even + r_odd)] Pi_odd,   w = (1 - F)/3.

    Its trace is distill_map's p_succ and its normalized singlet
    fraction is distill_map's output fidelity.
    """
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"input fidelity must lie in [0, 1], got {f}")
    re, ro = weights.r_even, weights.r_odd
    w = (1.0 - f) / 3.0
    return (
        re * (f - w) ** 2 * projector(PHI_PLUS)
        + (f * w * (2.0 * re + ro) + w * w * ro) * PI_EVEN
        + (f * w * ro + w * w * (2.0 * re + ro)) * PI_ODD
    )


def lower_bound(weights: ParityWeights) -> float:
    """Threshold L = (r_even + r_odd) / (2 (r_even - r_odd)).

    One distillation round strictly increases the singlet fraction
    exactly for F in (L, 1). Requires r_even > r_odd; otherwise no
    window of improvement exists.
    """
    if weights.r_even <= weights.r_odd:
        raise ValueError(
            f"no distillable window: r_even = {weights.r_even} <= r_odd = {weights.r_odd}"
        )
    return (weights.r_even + weights.r_odd) / (2.0 * (weights.r_even - weights.r_odd))


def lower_bound_limit(p: float, epsilon: float) -> float:
    """Large-depth limit of the threshold for homogeneous p and CNOT noise epsilon.

    Closed form obtained from the fixed point of the coefficient
    recurrence; strictly above 1/2 for epsilon > 0. For epsilon = 0 the
    exact limit is 1/2, so that case is rejected here.
    """
    p = _check_fraction(p, "p")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    root = np.sqrt(
        4.0 * (1.0 - p) ** 2 * (1.0 - 2.0 * epsilon)
        + epsilon ** 2 * (5.0 + 4.0 * (-2.0 + p) * p)
    )
    num = (
        2.0 * (1.0 - p) ** 2 * (1.0 - 2.0 * epsilon)
        + epsilon ** 2 * (3.0 - 2.0 * (2.0 - p) * p)
        + epsilon * root
    )
    return float(num / (4.0 * (1.0 - epsilon) ** 2 * (1.0 - p) ** 2))
