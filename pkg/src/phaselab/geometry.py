"""Angle geometry of quantum states under a controlled phase gate.

Numerical verification of two facts: a controlled phase gate of phi turns
can rotate a state by at most pi*phi, and angles between states (defined by
cos(theta) = |<a|b>|) obey the triangle inequality, which follows from
nonnegativity of the Gram determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .phases import DyadicPhase

__all__ = [
    "StateTriple",
    "controlled_phase_min_fidelity",
    "gram_det_identity",
    "angle_triangle_check",
    "random_state",
]


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random pure state: normalised complex normal vector."""
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    return math.acos(min(1.0, abs(np.vdot(u, v))))


@dataclass(frozen=True)
class StateTriple:
    """Three unit vectors and the pairwise angles between them."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("a", "b", "c"):
            vec = np.asarray(getattr(self, name), dtype=complex)
            object.__setattr__(self, name, vec)
            if abs(np.linalg.norm(vec) - 1.0) > 1e-10:
                raise DomainError(f"state {name} is not normalised")

    @property
    def angles(self) -> tuple[float, float, float]:
        """(alpha, beta, gamma) for the pairs (a,b), (b,c), (c,a)."""
        return (_angle(self.a, self.b), _angle(self.b, self.c), _angle(self.c, self.a))

    def gram_det(self) -> float:
        g = np.array(
            [[np.vdot(x, y) for y in (self.a, self.b, self.c)] for x in (self.a, self.b, self.c)]
        )
        return float(np.linalg.det(g).real)


def controlled_phase_min_fidelity(phi: DyadicPhase | float) -> float:
    """Minimum fidelity |<Psi| C(U_phi) |Psi>|^2 over all input states.

    The minimisation reduces to the scalar problem
    min_{z in [0,1]} |1 - z + z e^(2 pi i phi)|^2 over the weight z the
    state puts on the phase-kicked branch; the closed form is cos^2(pi*phi),
    attained at z = 1/2.  The scalar problem is also minimised numerically
    and the two answers are required to agree to 1e-8.
    """
    x = float(phi)

    def objective(z: float) -> float:
        return abs(1.0 - z + z * np.exp(2j * np.pi * x)) ** 2

    grid = np.linspace(0.0, 1.0, 2001)
    values = np.abs(1.0 - grid + grid * np.exp(2j * np.pi * x)) ** 2
    best = int(np.argmin(values))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, len(grid) - 1)]
    refined = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
    numeric = min(float(refined.fun), float(values[best]))
    closed = math.cos(math.pi * x) ** 2
    if abs(closed - numeric) > 1e-8:
        raise AssertionError(
            f"closed form {closed} and numeric minimum {numeric} disagree"
        )
    return closed


def gram_det_identity(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    """Both sides of the Gram-determinant product identity.

    lhs = 1 - cos^2(a) - cos^2(b) - cos^2(g) + 2 cos(a) cos(b) cos(g) and
    rhs = 4 sin(p) sin(p-a) sin(p-b) sin(p-g) with p the half-sum.
    """
    for angle in (alpha, beta, gamma):
        if not -1e-12 <= angle <= math.pi / 2 + 1e-12:
            raise DomainError("angles must lie in [0, pi/2]")
    ca, cb, cg = math.cos(alpha), math.cos(beta), math.cos(gamma)
    lhs = 1 - ca * ca - cb * cb - cg * cg + 2 * ca * cb * cg
    p = 0.5 * (alpha + beta + gamma)
    rhs = 4 * math.sin(p) * math.sin(p - alpha) * math.sin(p - beta) * math.sin(p - gamma)
    return lhs, rhs


def angle_triangle_check(triple: StateTriple, slack: float = 1e-10) -> bool:
    """Each pairwise angle is at most the sum of the other two.

    Also requires the Gram determinant of the triple to be >= -1e-10.
    """
    alpha, beta, gamma = triple.angles
    ok = (
        gamma <= alpha + beta + slack
        and alpha <= beta + gamma + slack
        and beta <= gamma + alpha + slack
    )
    return ok and triple.gram_det() >= -1e-10
