"""Adaptive and non-adaptive estimation strategies over the promise sets.

A non-adaptive protocol that applies the phase gate N times in one parallel
step is fully described, after collapsing Hamming-weight classes, by the
nonnegative amplitude vector (beta_0, ..., beta_N) over total application
counts.  The constructions here produce the comb-shaped profile whose
support is the 2**ell + 1 multiples of N/2**ell, the flattened-PE front end
that resolves the leading ell bits, and the two-stage adaptive protocol
they are compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .pesim import pe_distribution
from .phases import DyadicPhase, build_promise_set

__all__ = [
    "AmplitudeProfile",
    "NonadaptiveStrategy",
    "AdaptiveStrategy",
    "final_state",
    "collapse_to_weight_profile",
    "profile_convolve_squared",
    "comb_profile",
    "comb_budget",
    "comb_delta",
    "flattened_pe_profile",
    "nonadaptive_strategy",
    "adaptive_protocol",
]


@dataclass(frozen=True)
class AmplitudeProfile:
    """Nonnegative unit vector of amplitudes indexed by application count."""

    beta: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.beta, dtype=float)
        object.__setattr__(self, "beta", b)
        if b.ndim != 1 or len(b) == 0:
            raise DomainError("profile must be a nonempty vector")
        if b.min() < -1e-12:
            raise DomainError("profile amplitudes must be nonnegative")
        if abs(np.dot(b, b) - 1.0) > 1e-10:
            raise DomainError("profile squared amplitudes must sum to 1")

    @property
    def n_applications(self) -> int:
        return len(self.beta) - 1

    def support(self) -> np.ndarray:
        return np.nonzero(self.beta > 0)[0]


def final_state(profile: AmplitudeProfile, phi: DyadicPhase | float) -> np.ndarray:
    """The (N+1)-dimensional state with entries beta_j * e^(2 pi i j phi).

    For dyadic phases every j*phi is reduced mod 1 in integer arithmetic
    before evaluation.
    """
    j = np.arange(len(profile.beta), dtype=np.int64)
    if isinstance(phi, DyadicPhase):
        modulus = 1 << phi.k
        reduced = (j * phi.num) % modulus
        phase = np.exp(2j * np.pi * reduced / modulus)
    else:
        phase = np.exp(2j * np.pi * ((j * float(phi)) % 1.0))
    return profile.beta * phase


def collapse_to_weight_profile(alpha: np.ndarray) -> AmplitudeProfile:
    """Collapse amplitudes over length-N bitstrings to a weight profile.

    beta_j is the root of the total squared amplitude on Hamming weight j;
    all statistics of the parallel protocol depend on alpha only through
    these numbers.
    """
    alpha = np.asarray(alpha, dtype=complex)
    n_amps = len(alpha)
    n = n_amps.bit_length() - 1
    if 1 << n != n_amps:
        raise DomainError("amplitude vector length must be a power of 2")
    if n > 20:
        raise DomainError("explicit bitstring register limited to N <= 20")
    weight_sq = np.abs(alpha) ** 2
    if abs(weight_sq.sum() - 1.0) > 1e-10:
        raise DomainError("input amplitudes are not normalised")
    weights = np.array([bin(x).count("1") for x in range(n_amps)])
    per_weight = np.bincount(weights, weights=weight_sq, minlength=n + 1)
    return AmplitudeProfile(np.sqrt(per_weight))


def profile_convolve_squared(p1: AmplitudeProfile, p2: AmplitudeProfile) -> AmplitudeProfile:
    """Profile of two independent parallel registers run side by side.

    The merged squared profile is the convolution of the squared profiles,
    so pairwise overlaps factorise into the per-register overlaps.
    """
    merged_sq = np.convolve(p1.beta**2, p2.beta**2)
    return AmplitudeProfile(np.sqrt(np.clip(merged_sq, 0.0, None)))


def comb_budget(k: int, ell: int) -> int:
    """The multiple of 2**(2 ell) nearest to 2**ell/(2**ell + 1) * 2**k."""
    if ell < 1:
        raise DomainError(f"ell must be >= 1, got {ell}")
    if k < 2 * ell + 1:
        raise DomainError(f"need k >= 2*ell + 1 (got k={k}, ell={ell})")
    pieces = (1 << ell) + 1
    block = 1 << (2 * ell)
    target = Fraction(1 << (k + ell), pieces)
    n_apps = block * round(target / block)
    if not abs(Fraction(n_apps) - target) < Fraction(block, 2):
        raise AssertionError("rounding shift exceeds half a block")
    if (n_apps >> ell) % (1 << ell) != 0:
        raise AssertionError("comb step is not a multiple of 2**ell")
    return n_apps


def comb_delta(k: int, ell: int) -> Fraction:
    """Exact rounding shift N - 2^(k+ell)/(2^ell + 1) of the comb budget."""
    return Fraction(comb_budget(k, ell)) - Fraction(1 << (k + ell), (1 << ell) + 1)


def comb_profile(k: int, ell: int) -> tuple[int, AmplitudeProfile]:
    """Budget N and uniform comb profile supported on multiples of N/2**ell.

    The rounding in comb_budget makes N/2**ell divisible by 2**ell, so the
    comb phases are blind to the leading ell bits of the promised phase.
    """
    n_apps = comb_budget(k, ell)
    pieces = (1 << ell) + 1
    step = n_apps >> ell
    beta = np.zeros(n_apps + 1)
    beta[np.arange(pieces) * step] = 1.0 / math.sqrt(pieces)
    return n_apps, AmplitudeProfile(beta)


def flattened_pe_profile(bits: int) -> AmplitudeProfile:
    """Weight profile of standard bits-qubit PE flattened onto cat states.

    Each subset of the per-qubit application counts {2^(bits-1), ..., 2, 1}
    realises a distinct total count, so the profile is uniform on
    0..2**bits - 1 and costs 2**bits - 1 applications.
    """
    if bits < 1:
        raise DomainError(f"need bits >= 1, got {bits}")
    size = 1 << bits
    return AmplitudeProfile(np.full(size, 1.0 / math.sqrt(size)))


@dataclass(frozen=True)
class NonadaptiveStrategy:
    """Comb profile plus the flattened front end for the leading bits."""

    profile: AmplitudeProfile
    leading_profile: AmplitudeProfile | None
    total_cost: int

    def __post_init__(self):
        cost = self.profile.n_applications
        if self.leading_profile is not None:
            cost += self.leading_profile.n_applications
        if cost != self.total_cost:
            raise DomainError("total_cost must equal the sum of the profile budgets")


def nonadaptive_strategy(k: int, ell: int) -> NonadaptiveStrategy:
    """The explicit non-adaptive strategy for the (k, ell) promise set."""
    n_apps, profile = comb_profile(k, ell)
    leading = flattened_pe_profile(ell)
    return NonadaptiveStrategy(
        profile=profile,
        leading_profile=leading,
        total_cost=n_apps + leading.n_applications,
    )


@dataclass(frozen=True)
class AdaptiveStrategy:
    """Costs and exact worst-case error of the two-stage adaptive protocol."""

    stage1_cost: int
    stage2_costs: tuple[int, ...]
    worst_case_cost: int
    error_prob: float
    per_phase_success: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.worst_case_cost != self.stage1_cost + max(self.stage2_costs):
            raise DomainError("worst_case_cost must be stage1 + max stage2 cost")
        if not 0.0 <= self.error_prob <= 1.0:
            raise DomainError("error probability out of range")


def adaptive_protocol(k: int, ell: int) -> AdaptiveStrategy:
    """Two-stage adaptive protocol: cheap leading-bit PE, then a pair test.

    Stage 1 runs exact ell-bit phase estimation (2**ell - 1 applications);
    its outcome names a candidate pair r.  Stage 2 applies the phase gate
    M_r = 2**ell * round(2**(k-1) / ((r+1) 2**ell)) times to |+> and performs
    the optimal two-state measurement for the pair.  Rounding M_r to a
    multiple of 2**ell makes the pair's common phase offset an integer
    number of turns, so only the residual detuning of M_r (r+1) from half a
    turn contributes error.  All probabilities are computed exactly.
    """
    from .discrim import helstrom_two

    promise = build_promise_set(k, ell)
    n_pairs = 1 << ell
    stage1_cost = n_pairs - 1
    stage2_costs = []
    stage2_success = []
    for r in range(n_pairs):
        m_r = (1 << ell) * round((1 << (k - 1)) / ((r + 1) << ell))
        stage2_costs.append(m_r)
        detune = (m_r * (r + 1)) % (1 << k)
        overlap = abs(math.cos(math.pi * detune / (1 << k)))
        stage2_success.append(helstrom_two(overlap))
    per_phase_success = []
    for r in range(n_pairs):
        for phi in promise.pair_phases(r):
            stage1_ok = pe_distribution(ell, phi)[r]
            per_phase_success.append(stage1_ok * stage2_success[r])
    error_prob = 1.0 - min(per_phase_success)
    return AdaptiveStrategy(
        stage1_cost=stage1_cost,
        stage2_costs=tuple(stage2_costs),
        worst_case_cost=stage1_cost + max(stage2_costs),
        error_prob=error_prob,
        per_phase_success=tuple(per_phase_success),
    )
