"""State discrimination: overlaps, Gram matrices, and measurement success.

Everything here is an exact expectation; nothing is sampled.  The promised
phases enter only through pairwise overlaps of profile states, which are
evaluated with integer-reduced phase arithmetic, so the exponentially small
residues that decide success probabilities survive at machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .pesim import pe_distribution
from .phases import DyadicPhase, build_promise_set
from .strategy import AmplitudeProfile, comb_delta, comb_profile, flattened_pe_profile

__all__ = [
    "GramMatrix",
    "DiscriminationResult",
    "MeasurementKind",
    "pairwise_overlap",
    "overlap_closed_form",
    "helstrom_two",
    "fixed_plus_minus_measurement",
    "pgm_success",
    "fourier_measurement_success",
    "promise_gram",
]

_PSD_TOL = 1e-9


class MeasurementKind(str, Enum):
    HELSTROM = "helstrom"
    PGM = "pgm"
    FOURIER = "fourier"


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian unit-diagonal matrix of pairwise state overlaps."""

    entries: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", g)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DomainError("Gram matrix must be square")
        if np.abs(g - g.conj().T).max() > 1e-10:
            raise DomainError("Gram matrix must be Hermitian")
        if np.abs(np.diag(g) - 1.0).max() > 1e-10:
            raise DomainError("Gram matrix must have unit diagonal")
        if np.linalg.eigvalsh(g).min() < -_PSD_TOL:
            raise DomainError("Gram matrix is not positive semidefinite")

    @classmethod
    def from_states(cls, states) -> "GramMatrix":
        mat = np.array([[np.vdot(a, b) for b in states] for a in states])
        return cls(mat)

    def __len__(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DiscriminationResult:
    """Success statistics of a discrimination measurement."""

    success_prob: float
    per_state_success: np.ndarray
    measurement_kind: MeasurementKind

    def __post_init__(self):
        per = np.asarray(self.per_state_success, dtype=float)
        object.__setattr__(self, "per_state_success", per)
        if not -1e-12 <= self.success_prob <= 1 + 1e-12:
            raise DomainError("success probability out of range")
        if abs(self.success_prob - per.mean()) > 1e-10:
            raise DomainError("success_prob must be the mean per-state success")

    @property
    def worst_case(self) -> float:
        return float(self.per_state_success.min())


def _phase_difference(phi: DyadicPhase, phi2: DyadicPhase) -> DyadicPhase:
    common = max(phi.k, phi2.k)
    modulus = 1 << common
    return DyadicPhase((phi2.lift(common) - phi.lift(common)) % modulus, common)


def pairwise_overlap(
    profile: AmplitudeProfile, phi: DyadicPhase, phi2: DyadicPhase
) -> complex:
    """<psi_phi | psi_phi2> = sum_j beta_j^2 e^(2 pi i j (phi2 - phi))."""
    diff = _phase_difference(phi, phi2)
    modulus = 1 << diff.k
    j = np.arange(len(profile.beta), dtype=np.int64)
    reduced = (j * diff.num) % modulus
    return complex(np.sum(profile.beta**2 * np.exp(2j * np.pi * reduced / modulus)))


def _comb_pair_overlap(pieces: int, r: int, shift: Fraction, k: int, ell: int) -> complex:
    total = 0j
    for m in range(pieces):
        arg = Fraction(m * (r + 1), pieces) + m * shift * (r + 1) / ((1 << ell) * (1 << k))
        arg -= arg.numerator // arg.denominator  # reduce mod 1 exactly
        total += np.exp(2j * np.pi * float(arg))
    return total / pieces


def overlap_closed_form(k: int, ell: int, r: int) -> complex:
    """Closed-form overlap of the comb states for pair r.

    Evaluates 1/(2^ell+1) * sum_m e^(2 pi i m ((r+1)/(2^ell+1)
    + Delta (r+1) 2^-k / 2^ell)) with Delta the comb rounding shift; this is
    a full root-of-unity sum perturbed by an exponentially small detuning.
    """
    if not 0 <= r < (1 << ell):
        raise DomainError(f"pair index {r} out of range for ell={ell}")
    pieces = (1 << ell) + 1
    return _comb_pair_overlap(pieces, r, comb_delta(k, ell), k, ell)


def helstrom_two(overlap_mag: float) -> float:
    """Optimal success probability for two equiprobable pure states.

    overlap_mag is |<a|b>|; the optimum is (1 + sqrt(1 - c^2))/2 and is
    attained state-symmetrically.
    """
    if not -1e-12 <= overlap_mag <= 1 + 1e-12:
        raise DomainError(f"overlap magnitude {overlap_mag} outside [0, 1]")
    c = min(max(overlap_mag, 0.0), 1.0)
    return (1.0 + math.sqrt(1.0 - c * c)) / 2.0


def fixed_plus_minus_measurement(
    j_count: int, phi: DyadicPhase | float, phi2: DyadicPhase | float
) -> np.ndarray:
    """Hadamard-basis statistics of U^j |+> for two candidate phases.

    Returns a 2x2 array: row h is (P(outcome 0 | phi_h), P(outcome 1 | phi_h))
    for hypothesis h in (phi, phi2), computed exactly.
    """
    probs = np.empty((2, 2))
    for h, candidate in enumerate((phi, phi2)):
        if isinstance(candidate, DyadicPhase):
            turns = ((j_count * candidate.num) % (1 << candidate.k)) / (1 << candidate.k)
        else:
            turns = (j_count * float(candidate)) % 1.0
        probs[h, 0] = math.cos(math.pi * turns) ** 2
        probs[h, 1] = math.sin(math.pi * turns) ** 2
    return probs


def _psd_sqrt(g: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(g)
    if vals.min() < -_PSD_TOL:
        raise DomainError("matrix is not PSD within tolerance")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def pgm_success(G: GramMatrix, priors: np.ndarray | None = None) -> DiscriminationResult:
    """Pretty-good-measurement success for equiprobable pure states.

    For uniform priors the per-state success is the squared diagonal of the
    Gram square root.  Non-uniform priors are out of scope.
    """
    n = len(G)
    if priors is not None:
        priors = np.asarray(priors, dtype=float)
        if priors.min() < 0 or abs(priors.sum() - 1.0) > 1e-10:
            raise DomainError("priors must be a probability vector")
        if np.abs(priors - 1.0 / n).max() > 1e-12:
            raise DomainError("only uniform priors are supported")
    root = _psd_sqrt(G.entries)
    per_state = np.real(np.diag(root)) ** 2
    return DiscriminationResult(
        success_prob=float(per_state.mean()),
        per_state_success=per_state,
        measurement_kind=MeasurementKind.PGM,
    )


def promise_gram(k: int, ell: int) -> GramMatrix:
    """Gram matrix of the full non-adaptive states over the promise set.

    The strategy state is (flattened front end) tensor (comb state), so each
    overlap is the product of the two registers' profile overlaps.
    """
    promise = build_promise_set(k, ell)
    _, comb = comb_profile(k, ell)
    front = flattened_pe_profile(ell)
    n = len(promise)
    g = np.eye(n, dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            val = pairwise_overlap(front, promise.phases[i], promise.phases[j]) * pairwise_overlap(
                comb, promise.phases[i], promise.phases[j]
            )
            g[i, j] = val
            g[j, i] = np.conj(val)
    return GramMatrix(g)


def fourier_measurement_success(k: int, ell: int) -> DiscriminationResult:
    """Exact success of the explicit two-register measurement.

    Front end: ell-bit phase estimation on the flattened register names a
    pair r.  Back end: the (2^ell + 1)-outcome projective measurement onto
    the Fourier states (1/sqrt(2^ell+1)) sum_m omega^(s m) |m N / 2^ell>.
    Outcome s = (r+1) mod (2^ell+1) decodes to the pair's upper phase,
    anything else to the lower one.  Returns the exact per-phase success,
    worst case available via ``.worst_case``.
    """
    promise = build_promise_set(k, ell)
    n_apps, _ = comb_profile(k, ell)
    pieces = (1 << ell) + 1
    step = n_apps >> ell
    modulus = 1 << k
    per_state = []
    for r in range(1 << ell):
        for which, phi in enumerate(promise.pair_phases(r)):
            front = pe_distribution(ell, phi)[r]
            support = (np.arange(pieces, dtype=np.int64) * step * phi.num) % modulus
            amps = np.fft.fft(np.exp(2j * np.pi * support / modulus)) / pieces
            back = np.abs(amps) ** 2
            flag_outcome = (r + 1) % pieces
            if which == 1:  # upper phase of the pair
                per_state.append(front * back[flag_outcome])
            else:
                per_state.append(front * (1.0 - back[flag_outcome]))
    per_state = np.array(per_state)
    return DiscriminationResult(
        success_prob=float(per_state.mean()),
        per_state_success=per_state,
        measurement_kind=MeasurementKind.FOURIER,
    )
