"""Lower-bound engine for non-adaptive strategies via LP infeasibility.

A non-adaptive protocol with budget N induces a probability vector b over
application counts whose trigonometric moments at the pair frequencies must
all be small.  Feasibility of that linear system is decided by a phase-one
revised simplex; infeasibility is witnessed by a Farkas certificate y with
y^T A >= 0 columnwise and y^T E < 0 for every admissible moment target.
Explicit certificates are also constructed directly from a family of
trigonometric witness polynomials that are nonnegative on [0, 2^l/(2^l+1)]
and contain only the constrained frequencies.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import CertificateConstructionError, DomainError, SolverError

__all__ = [
    "TrigPoly",
    "FarkasSystem",
    "Certificate",
    "CertificateReport",
    "LPResult",
    "PositivityStatus",
    "PositivityResult",
    "RegionSignTable",
    "build_system",
    "lp_feasible",
    "witness_value",
    "witness_factors",
    "witness_coeffs",
    "witness_zeros",
    "build_certificate",
    "verify_certificate",
    "positivity_check",
    "certify_witness_nonnegative",
    "region_signs",
    "scan_min_applications",
    "ScanResult",
    "adaptive_lower_bound",
]


# ---------------------------------------------------------------------------
# Trigonometric polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrigPoly:
    """a0 + sum_j a_j cos(2 pi j x) + b_j sin(2 pi j x), j = 1..degree."""

    a0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.cos_coeffs, dtype=float))
        b = np.atleast_1d(np.asarray(self.sin_coeffs, dtype=float))
        if len(a) != len(b):
            raise DomainError("cos and sin coefficient vectors must have equal length")
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    def evaluate(self, x) -> np.ndarray:
        """Evaluate at x (scalar or array); j*x is reduced mod 1 first."""
        x = np.asarray(x, dtype=float)
        j = np.arange(1, self.degree + 1)
        angles = 2 * np.pi * ((np.multiply.outer(x, j)) % 1.0)
        return (
            self.a0
            + np.cos(angles) @ self.cos_coeffs
            + np.sin(angles) @ self.sin_coeffs
        )

    def lipschitz_bound(self) -> float:
        """Upper bound 2 pi sum_j j (|a_j| + |b_j|) on |f'|."""
        j = np.arange(1, self.degree + 1)
        return float(2 * np.pi * np.sum(j * (np.abs(self.cos_coeffs) + np.abs(self.sin_coeffs))))

    def shifted(self, s: float) -> "TrigPoly":
        """The polynomial x -> f(x + s), expanded back into coefficients."""
        j = np.arange(1, self.degree + 1)
        theta = 2 * np.pi * ((j * s) % 1.0)
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        return TrigPoly(
            a0=self.a0,
            cos_coeffs=self.cos_coeffs * cos_t + self.sin_coeffs * sin_t,
            sin_coeffs=-self.cos_coeffs * sin_t + self.sin_coeffs * cos_t,
        )

    def combine(self, other: "TrigPoly", scale: float = 1.0, offset: float = 0.0) -> "TrigPoly":
        """self + scale*other + offset, padding to the larger degree."""
        d = max(self.degree, other.degree)
        a = np.zeros(d)
        b = np.zeros(d)
        a[: self.degree] += self.cos_coeffs
        b[: self.degree] += self.sin_coeffs
        a[: other.degree] += scale * other.cos_coeffs
        b[: other.degree] += scale * other.sin_coeffs
        return TrigPoly(a0=self.a0 + scale * other.a0 + offset, cos_coeffs=a, sin_coeffs=b)

    def as_y_vector(self) -> np.ndarray:
        """(y_0, y_1, ..., y_2d): constant, then interleaved cos/sin coefficients."""
        y = np.empty(2 * self.degree + 1)
        y[0] = self.a0
        y[1::2] = self.cos_coeffs
        y[2::2] = self.sin_coeffs
        return y

    @classmethod
    def from_y_vector(cls, y: np.ndarray) -> "TrigPoly":
        y = np.asarray(y, dtype=float)
        if len(y) % 2 != 1:
            raise DomainError("y vector must have odd length 2d+1")
        return cls(a0=float(y[0]), cos_coeffs=y[1::2], sin_coeffs=y[2::2])


# ---------------------------------------------------------------------------
# Witness polynomial family
# ---------------------------------------------------------------------------


def witness_factors(ell: int):
    """The product-form factors of the degree-2**ell witness, with labels.

    For ell = 1 the witness is sin(3 pi x) * sin(pi x + 2 pi / 3); for larger
    ell it is sin(pi(x - 1/(2^l+1))) * sin((2^l+1) pi x) times the factors
    g_m(x) = cos(2 pi m/(2^l+1)) - cos(2 pi x) for m = 2..2^(l-1).
    """
    if ell < 1:
        raise DomainError(f"ell must be >= 1, got {ell}")
    pieces = (1 << ell) + 1
    if ell == 1:
        return [
            ("sin_fast", lambda x: np.sin(3 * np.pi * np.asarray(x, dtype=float))),
            ("sin_shift", lambda x: np.sin(np.pi * np.asarray(x, dtype=float) + 2 * np.pi / 3)),
        ]
    factors = [
        ("sin_shift", lambda x: np.sin(np.pi * (np.asarray(x, dtype=float) - 1.0 / pieces))),
        ("sin_fast", lambda x: np.sin(pieces * np.pi * np.asarray(x, dtype=float))),
    ]
    for m in range(2, (1 << (ell - 1)) + 1):
        level = math.cos(2 * np.pi * m / pieces)
        factors.append(
            (f"g{m}", lambda x, level=level: level - np.cos(2 * np.pi * np.asarray(x, dtype=float)))
        )
    return factors


def witness_value(ell: int, x) -> np.ndarray:
    """Product-form evaluation of the witness polynomial."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for _, fn in witness_factors(ell):
        out = out * fn(x)
    return out


def witness_zeros(ell: int) -> list[Fraction]:
    """Exact zeros m/(2**ell + 1), m = 0..2**ell, inside [0, 1)."""
    pieces = (1 << ell) + 1
    return [Fraction(m, pieces) for m in range(pieces)]


def witness_coeffs(ell: int) -> TrigPoly:
    """Recover the witness's exact cos/sin coefficients by oversampled DFT.

    Samples at 4*2^ell + 1 equispaced points, which resolves a trig
    polynomial of twice the expected degree; asserts the constant term and
    all frequencies above 2^ell vanish to 1e-10.
    """
    if ell > 6:
        raise DomainError("witness degree 2**ell limited to ell <= 6")
    d = 1 << ell
    n_samples = 4 * d + 1
    xs = np.arange(n_samples) / n_samples
    spectrum = np.fft.fft(witness_value(ell, xs)) / n_samples
    a0 = spectrum[0].real
    a = 2 * spectrum[1 : 2 * d + 1].real
    b = -2 * spectrum[1 : 2 * d + 1].imag
    if abs(a0) > 1e-10:
        raise AssertionError(f"witness constant term {a0} should vanish")
    if max(np.abs(a[d:]).max(), np.abs(b[d:]).max()) > 1e-10:
        raise AssertionError("witness contains frequencies above its degree")
    if np.abs(spectrum[0].imag) > 1e-12:
        raise AssertionError("witness samples are not real")
    return TrigPoly(a0=a0, cos_coeffs=a[:d], sin_coeffs=b[:d])


@dataclass(frozen=True)
class RegionSignTable:
    """Signs of each witness factor on the 2**ell + 1 regions of width 1/(2**ell+1)."""

    ell: int
    factors: dict[str, tuple[str, ...]]
    product: tuple[str, ...]


def region_signs(ell: int) -> RegionSignTable:
    """Sign of every product factor on each region, sampled at midpoints.

    Every factor's zeros sit exactly on region boundaries, so the sign at
    the midpoint is the sign on the whole open region; the product pattern
    must be '+' on the first 2**ell regions, which is the nonnegativity
    argument for the witness on [0, 2^l/(2^l+1)].
    """
    if ell > 5:
        raise DomainError("sign tables limited to ell <= 5")
    pieces = (1 << ell) + 1
    mids = (np.arange(pieces) + 0.5) / pieces
    table = {}
    product = np.ones(pieces)
    for name, fn in witness_factors(ell):
        vals = fn(mids)
        if np.abs(vals).min() < 1e-9:
            raise AssertionError("factor vanishes at a region midpoint")
        table[name] = tuple("+" if v > 0 else "-" for v in vals)
        product = product * np.sign(vals)
    pattern = tuple("+" if v > 0 else "-" for v in product)
    if any(s != "+" for s in pattern[: 1 << ell]):
        raise AssertionError("witness is not positive on the leading regions")
    return RegionSignTable(ell=ell, factors=table, product=pattern)


# ---------------------------------------------------------------------------
# Constraint system and LP feasibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FarkasSystem:
    """Moment constraints for budget N: A b = (1, eps), b >= 0, |eps_i| <= eps_bound.

    Row 0 of A is all ones; rows 2j-1 and 2j hold cos(2 pi j m / 2^k) and
    sin(2 pi j m / 2^k) for m = 0..N and j = 1..2^ell.
    """

    a_matrix: np.ndarray
    eps_bound: float
    k: int
    ell: int
    n_apps: int

    def __post_init__(self):
        a = np.asarray(self.a_matrix, dtype=float)
        object.__setattr__(self, "a_matrix", a)
        d = 1 << self.ell
        if a.shape != (2 * d + 1, self.n_apps + 1):
            raise DomainError("constraint matrix has the wrong shape")
        if self.eps_bound <= 0:
            raise DomainError("eps_bound must be positive")

    @property
    def trig_rows(self) -> np.ndarray:
        return self.a_matrix[1:]


def build_system(k: int, ell: int, n_apps: int, eps_bound: float) -> FarkasSystem:
    """Build the moment-constraint system at the 2**ell pair frequencies."""
    if n_apps < 1:
        raise DomainError("budget must be >= 1")
    if eps_bound <= 0:
        raise DomainError("eps_bound must be positive")
    d = 1 << ell
    modulus = 1 << k
    m = np.arange(n_apps + 1, dtype=np.int64)
    a = np.empty((2 * d + 1, n_apps + 1))
    a[0] = 1.0
    for j in range(1, d + 1):
        angles = 2 * np.pi * ((j * m) % modulus) / modulus
        a[2 * j - 1] = np.cos(angles)
        a[2 * j] = np.sin(angles)
    return FarkasSystem(a_matrix=a, eps_bound=eps_bound, k=k, ell=ell, n_apps=n_apps)


@dataclass(frozen=True)
class Certificate:
    """Farkas infeasibility certificate y = (y_0, ..., y_2d).

    margin_primal is the smallest column value of y^T A; margin_dual is the
    worst case of y^T E over the moment box, y_0 + eps_bound * sum |y_j|.
    A valid certificate has margin_primal >= 0 and margin_dual < 0.
    """

    y: np.ndarray
    margin_primal: float
    margin_dual: float

    def __post_init__(self):
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))


@dataclass(frozen=True)
class CertificateReport:
    valid: bool
    margin_primal: float
    margin_dual: float
    detail: str = ""


@dataclass(frozen=True)
class LPResult:
    """Outcome of the feasibility LP: exactly one of b / certificate is set."""

    feasible: bool
    b: np.ndarray | None = None
    certificate: Certificate | None = None
    iterations: int = 0

    def __post_init__(self):
        if self.feasible == (self.certificate is not None) or self.feasible != (self.b is not None):
            raise DomainError("LPResult must carry exactly one of b / certificate")


_PIVOT_TOL = 1e-9
_FEAS_TOL = 1e-9
_RESIDUAL_TOL = 1e-8


def _phase_one_box(rows: np.ndarray, eps_bound: float, max_iter: int):
    """Phase-one revised simplex for {b >= 0, 1.b = 1, |rows.b| <= eps_bound}.

    Variables are b (structural), one slack per upper and lower bound, and a
    single artificial on the normalisation row whose value is minimised.
    Pricing uses the most negative reduced cost, except that runs of
    degenerate pivots switch to Bland's smallest-index rule until a real
    step is taken again, which prevents cycling; pure Bland pricing crawls
    on these thin boxes (millions of iterations at desk sizes).  The basis
    inverse and basic solution are updated incrementally (product-form
    pivots) and refactorised periodically.  Returns (True, b, iterations)
    or (False, multipliers w, iterations) where w satisfies
    w0 + (w_p - w_q) . rows >= 0 columnwise and w . rhs < 0.
    """
    n_ineq, n_struct = rows.shape
    m = 2 * n_ineq + 1
    rhs = np.concatenate(([1.0], np.full(2 * n_ineq, eps_bound)))
    art_id = n_struct + 2 * n_ineq  # column ids: structural, uppers, lowers, artificial

    def column(col_id: int) -> np.ndarray:
        col = np.zeros(m)
        if col_id < n_struct:
            col[0] = 1.0
            col[1 : n_ineq + 1] = rows[:, col_id]
            col[n_ineq + 1 :] = -rows[:, col_id]
        elif col_id < art_id:
            col[1 + (col_id - n_struct)] = 1.0
        else:
            col[0] = 1.0
        return col

    def basis_columns() -> np.ndarray:
        mat = np.empty((m, m))
        for row, col_id in enumerate(basis):
            mat[:, row] = column(col_id)
        return mat

    def extract_b() -> np.ndarray:
        x_exact = np.linalg.solve(basis_columns(), rhs)
        b = np.zeros(n_struct)
        for row, col_id in enumerate(basis):
            if col_id < n_struct:
                b[col_id] = max(x_exact[row], 0.0)
        return b

    # Initial basis: artificial at row position 0, then the 2*n_ineq slacks.
    basis = np.array([art_id] + list(range(n_struct, n_struct + 2 * n_ineq)))
    basis_inv = np.eye(m)
    x_basic = rhs.copy()
    chunk = 4096
    refactor_every = 256
    degenerate_run = 0
    bland_after = 30

    iterations = 0
    while True:
        if iterations > max_iter:
            raise SolverError("phase-one simplex stalled", iterations, _PIVOT_TOL)
        iterations += 1
        if iterations % refactor_every == 0:
            basis_inv = np.linalg.inv(basis_columns())
            x_basic = np.clip(basis_inv @ rhs, 0.0, None)
        # The artificial is pinned at basis position 0 until it leaves, so
        # the phase-one multipliers are simply row 0 of the basis inverse.
        y = basis_inv[0]
        # Reduced cost of column c is -y.c for every non-artificial column,
        # so improving columns are those with y.c > tol.
        w = y[1 : n_ineq + 1] - y[n_ineq + 1 :]
        entering = None
        if degenerate_run >= bland_after:
            # Bland's rule: enter the smallest improving column id.
            for start in range(0, n_struct, chunk):
                seg = y[0] + w @ rows[:, start : start + chunk]
                hits = np.nonzero(seg > _PIVOT_TOL)[0]
                if hits.size:
                    entering = start + int(hits[0])
                    break
            if entering is None:
                hits = np.nonzero(y[1:] > _PIVOT_TOL)[0]
                if hits.size:
                    entering = n_struct + int(hits[0])
        else:
            prices = y[0] + w @ rows
            best_struct = int(np.argmax(prices))
            best_slack = int(np.argmax(y[1:]))
            best_price = prices[best_struct]
            if y[1 + best_slack] > best_price:
                best_price = y[1 + best_slack]
                candidate = n_struct + best_slack
            else:
                candidate = best_struct
            if best_price > _PIVOT_TOL:
                entering = candidate
        if entering is None:
            basis_inv = np.linalg.inv(basis_columns())
            y = basis_inv[0]
            x_exact = basis_inv @ rhs
            if x_exact[0] <= _FEAS_TOL:
                return True, extract_b(), iterations
            return False, -y, iterations
        direction = basis_inv @ column(entering)
        movable = direction > _PIVOT_TOL
        if not movable.any():
            raise SolverError("phase-one objective unbounded below", iterations, _PIVOT_TOL)
        ratios = np.where(movable, np.clip(x_basic, 0.0, None) / np.where(movable, direction, 1.0), math.inf)
        best = ratios.min()
        ties = np.nonzero(ratios <= best + 1e-12 * (1.0 + best))[0]
        leaving_row = int(ties[np.argmin(basis[ties])])
        left_id = basis[leaving_row]
        step = ratios[leaving_row]
        degenerate_run = degenerate_run + 1 if step <= 1e-12 else 0
        x_basic = x_basic - step * direction
        x_basic[leaving_row] = step
        np.clip(x_basic, 0.0, None, out=x_basic)
        pivot_row = basis_inv[leaving_row] / direction[leaving_row]
        basis_inv -= np.outer(direction, pivot_row)
        basis_inv[leaving_row] = pivot_row
        basis[leaving_row] = entering
        if left_id == art_id:
            # Artificial left the basis: the system is feasible.
            return True, extract_b(), iterations


def lp_feasible(system: FarkasSystem, max_iter: int = 200_000) -> LPResult:
    """Decide the moment system by phase-one simplex; certify infeasibility.

    On feasibility returns the witness b (nonnegative, unit mass, moments in
    the box).  On infeasibility extracts the simplex multipliers, maps them
    to a certificate over the 2d+1 original rows, normalises it so
    max_{j>0} |y_j| = 1, and verifies it before returning.
    """
    rows = system.trig_rows
    feasible, payload, iterations = _phase_one_box(rows, system.eps_bound, max_iter)
    if feasible:
        b = payload
        if abs(b.sum() - 1.0) > _RESIDUAL_TOL:
            raise SolverError("feasible point violates normalisation", iterations, _PIVOT_TOL)
        moments = rows @ b
        if np.abs(moments).max() > system.eps_bound + _RESIDUAL_TOL:
            raise SolverError("feasible point violates the moment box", iterations, _PIVOT_TOL)
        return LPResult(feasible=True, b=b, iterations=iterations)
    w = payload
    upper, lower = w[1 : rows.shape[0] + 1], w[rows.shape[0] + 1 :]
    if min(upper.min(), lower.min()) < -1e-7:
        raise SolverError("negative box multipliers in Farkas extraction", iterations, _PIVOT_TOL)
    y = np.concatenate(([w[0]], np.clip(upper, 0.0, None) - np.clip(lower, 0.0, None)))
    scale = np.abs(y[1:]).max()
    if scale <= 0:
        raise SolverError("degenerate Farkas certificate", iterations, _PIVOT_TOL)
    y /= scale
    # Margins are computed exactly as verify_certificate computes them, and
    # rounding noise of the optimal multipliers is absorbed into y_0; the
    # dual margin has slack of order the phase-one objective.
    margin_primal = float((y @ system.a_matrix).min())
    if margin_primal < 0:
        y[0] += -margin_primal + 1e-12
        margin_primal = float((y @ system.a_matrix).min())
    margin_dual = float(y[0] + system.eps_bound * np.abs(y[1:]).sum())
    cert = Certificate(y=y, margin_primal=margin_primal, margin_dual=margin_dual)
    report = verify_certificate(cert, system)
    if not report.valid:
        raise SolverError(
            f"extracted certificate failed verification: {report.detail}",
            iterations,
            _PIVOT_TOL,
        )
    return LPResult(feasible=False, certificate=cert, iterations=iterations)


def verify_certificate(cert: Certificate, system: FarkasSystem) -> CertificateReport:
    """Check y^T A >= 0 on every column and worst-case y^T E < 0 over the box."""
    if len(cert.y) != system.a_matrix.shape[0]:
        raise DomainError("certificate dimension does not match the system")
    margin_primal = float((cert.y @ system.a_matrix).min())
    margin_dual = float(cert.y[0] + system.eps_bound * np.abs(cert.y[1:]).sum())
    valid = margin_primal >= 0 and margin_dual < 0
    detail = ""
    if margin_primal < 0:
        detail = f"column margin {margin_primal} < 0"
    elif margin_dual >= 0:
        detail = f"dual margin {margin_dual} >= 0"
    return CertificateReport(
        valid=valid, margin_primal=margin_primal, margin_dual=margin_dual, detail=detail
    )


# ---------------------------------------------------------------------------
# Explicit certificates from the witness family
# ---------------------------------------------------------------------------


def _zero_set_shift(ell: int) -> Fraction:
    """Half the minimal mod-1 distance between the zero sets of consecutive witnesses."""
    zeros_cur = witness_zeros(ell)
    zeros_prev = witness_zeros(ell - 1)
    best = Fraction(1)
    for a in zeros_cur:
        for b in zeros_prev:
            d = abs(a - b)
            d = min(d, 1 - d)
            if 0 < d < best:
                best = d
    return best / 2


def build_certificate(
    k: int, ell: int, n_apps: int, eps_bound: float, margin: float = 0.01
) -> Certificate:
    """Construct the explicit Farkas certificate for budget n_apps.

    Starts from the witness coefficients (constant term zero), lowers the
    constant to y_0 = -2 Y_max sum|eps| - 2^(-k/2), and repairs positivity
    around the witness zeros: for ell = 1 by adding 4|y_0| sin(2 pi x + pi/6),
    otherwise by adding (2|y_0|/z_min) times the previous witness shifted
    left by half the minimal zero-set distance, where z_min is its minimum
    over the zeros being repaired.  Fails with the largest provable budget
    when the requested one is too close to the 2^l/(2^l+1) threshold.
    """
    threshold = (1 << ell) / ((1 << ell) + 1)
    if margin <= 0:
        raise DomainError("margin must be positive")
    if n_apps / (1 << k) >= threshold - margin:
        raise DomainError(
            f"budget ratio {n_apps / (1 << k):.4f} too close to threshold {threshold:.4f}"
        )
    if eps_bound <= 0:
        raise DomainError("eps_bound must be positive")
    base = witness_coeffs(ell)
    y_max = float(np.maximum(np.abs(base.cos_coeffs), np.abs(base.sin_coeffs)).max())
    eps_total = (1 << (ell + 1)) * eps_bound
    # The strictly positive floor 2^-k keeps the dual margin negative even as
    # eps_bound -> 0 while staying small enough that the repaired polynomial
    # remains positive where the repair term itself has turned negative.
    y0 = -2.0 * y_max * eps_total - 2.0**-k
    if ell == 1:
        # sin(2 pi x + pi/6) = cos(pi/6) sin(2 pi x) + sin(pi/6) cos(2 pi x):
        # worth 1/2 at both interior zeros of the witness.
        lift = TrigPoly(a0=0.0, cos_coeffs=[0.5], sin_coeffs=[math.sqrt(3) / 2])
        modified = base.combine(lift, scale=4 * abs(y0), offset=y0)
    else:
        shift = _zero_set_shift(ell)
        repair_zeros = [z for z in witness_zeros(ell) if z < Fraction(1 << ell, (1 << ell) + 1)]
        z_min = min(float(witness_value(ell - 1, float(z + shift))) for z in repair_zeros)
        if z_min <= 0:
            raise CertificateConstructionError("shifted witness is not positive at the zeros")
        lift = witness_coeffs(ell - 1).shifted(float(shift))
        modified = base.combine(lift, scale=2 * abs(y0) / z_min, offset=y0)
    xs = np.arange(n_apps + 1) / (1 << k)
    columns = modified.evaluate(xs)
    margin_primal = float(columns.min())
    if margin_primal < 0:
        first_bad = int(np.argmax(columns < 0))
        raise CertificateConstructionError(
            "certificate goes negative before the requested budget",
            largest_provable_n=first_bad - 1,
        )
    y = modified.as_y_vector()
    margin_dual = float(y[0] + eps_bound * np.abs(y[1:]).sum())
    if margin_dual >= 0:
        raise CertificateConstructionError(
            f"eps_bound {eps_bound} too large: dual margin {margin_dual:.3e} is not negative"
        )
    return Certificate(y=y, margin_primal=margin_primal, margin_dual=margin_dual)


# ---------------------------------------------------------------------------
# Certified positivity
# ---------------------------------------------------------------------------


class PositivityStatus(Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not_positive"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PositivityResult:
    status: PositivityStatus
    min_value: float
    min_location: float

    def __bool__(self) -> bool:
        return self.status is PositivityStatus.POSITIVE


def positivity_check(poly: TrigPoly, x_max: float, grid: int) -> PositivityResult:
    """Certified positivity of poly on [0, x_max] by grid plus Lipschitz bound.

    With spacing h = x_max/grid, a minimum grid value above L*h certifies
    positivity between the samples.  A strictly negative sample certifies
    non-positivity; anything else (e.g. a polynomial that touches zero) is
    reported inconclusive, never as a false positive.
    """
    if grid < 2:
        raise DomainError("grid must have at least 2 intervals")
    if not 0 < x_max <= 1:
        raise DomainError("x_max must lie in (0, 1]")
    xs = np.linspace(0.0, x_max, grid + 1)
    vals = poly.evaluate(xs)
    low = int(np.argmin(vals))
    min_value = float(vals[low])
    min_location = float(xs[low])
    if min_value < -1e-11:
        return PositivityResult(PositivityStatus.NOT_POSITIVE, min_value, min_location)
    if min_value > poly.lipschitz_bound() * x_max / grid:
        return PositivityResult(PositivityStatus.POSITIVE, min_value, min_location)
    return PositivityResult(PositivityStatus.INCONCLUSIVE, min_value, min_location)


def certify_witness_nonnegative(
    ell: int, x_max: float, pad: float = 0.005, grid: int = 4096
) -> bool:
    """Certify that the witness is nonnegative on [0, x_max].

    The witness touches zero at multiples of 1/(2**ell + 1), where a grid
    bound alone can never certify anything, so the certificate is composed:
    the region sign table covers the zeros (every factor's zeros lie exactly
    on region boundaries, so midpoint signs determine the sign of each whole
    region), and grid-plus-Lipschitz checks certify strict positivity on the
    closed subintervals at distance pad from the zeros.
    """
    if not 0 < x_max < (1 << ell) / ((1 << ell) + 1):
        raise DomainError("x_max must lie inside the witness's nonnegativity region")
    region_signs(ell)  # raises if the sign pattern does not certify the region
    poly = witness_coeffs(ell)
    zeros = [float(z) for z in witness_zeros(ell) if float(z) <= x_max] + [x_max]
    for left, right in zip(zeros, zeros[1:]):
        lo, hi = left + pad, min(right - pad, x_max)
        if hi <= lo:
            continue
        result = positivity_check(poly.shifted(lo), hi - lo, grid)
        if result.status is not PositivityStatus.POSITIVE:
            return False
    return True


# ---------------------------------------------------------------------------
# Threshold scan and the adaptive lower bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanResult:
    min_feasible_n: int
    max_certified_infeasible_n: int
    evaluations: tuple[tuple[int, bool], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.min_feasible_n <= self.max_certified_infeasible_n:
            raise DomainError("feasible budget must exceed the certified infeasible one")


def _feasibility_probe(task: tuple[int, int, int, float]) -> tuple[int, bool]:
    """Picklable LP probe for worker pools: (k, ell, n, eps_bound) -> (n, feasible)."""
    k, ell, n, eps_bound = task
    return n, lp_feasible(build_system(k, ell, n, eps_bound)).feasible


def scan_min_applications(
    k: int, ell: int, kappa: float, max_iter: int = 200_000, workers: int = 1
) -> ScanResult:
    """Bracket the minimum feasible budget by bisection over LP feasibility.

    The moment box is eps_bound = 2 sqrt(kappa).  Feasibility is monotone in
    the budget (a witness for N embeds into N+1), so bisection is sound; the
    returned bracket is adjacent.  With workers > 1 a coarse budget sweep is
    farmed out to a process pool first to narrow the bracket; results are
    collected in budget order, so the output does not depend on scheduling.
    """
    if not 0 < kappa < 1:
        raise DomainError("kappa must lie in (0, 1)")
    if k > 16:
        raise DomainError("scan limited to k <= 16")
    from .strategy import comb_budget

    log = logging.getLogger("phaselab")
    eps_bound = 2 * math.sqrt(kappa)
    evaluations: dict[int, bool] = {}
    lo, hi = 1, comb_budget(k, ell)

    def solve(n: int) -> bool:
        if n in evaluations:
            return evaluations[n]
        log.info("LP feasibility at budget %d", n)
        try:
            result = lp_feasible(build_system(k, ell, n, eps_bound), max_iter=max_iter)
        except SolverError as err:
            err.bracket = (lo, hi)  # partial progress for the caller
            raise
        evaluations[n] = result.feasible
        return result.feasible

    if solve(lo):
        raise DomainError("budget 1 is already feasible; nothing to scan")
    if not solve(hi):
        lo = hi
        hi = 1 << k
        if not solve(hi):
            raise SolverError("full budget is infeasible; box too tight", 0, _PIVOT_TOL)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        coarse = sorted({int(n) for n in np.linspace(lo, hi, 2 * workers + 2)[1:-1]})
        coarse = [n for n in coarse if n not in evaluations]
        log.info("coarse sweep over %d budgets with %d workers", len(coarse), workers)
        tasks = [(k, ell, n, eps_bound) for n in coarse]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for n, feasible in pool.map(_feasibility_probe, tasks):
                evaluations[n] = feasible
        lo = max(n for n, ok in evaluations.items() if not ok)
        hi = min(n for n, ok in evaluations.items() if ok)
        if lo >= hi:
            raise SolverError("feasibility is not monotone in the budget", 0, _PIVOT_TOL)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if solve(mid):
            hi = mid
        else:
            lo = mid
    return ScanResult(
        min_feasible_n=hi,
        max_certified_infeasible_n=lo,
        evaluations=tuple(sorted(evaluations.items())),
    )


def adaptive_lower_bound(delta: float, kappa: float) -> int:
    """Minimum applications for any adaptive protocol at phase gap delta.

    One application moves the pair of hypothesis states by an angle at most
    pi*delta, and error kappa leaves the final states an angle slack of
    theta = arcsin(2 sqrt(kappa (1 - kappa))) short of orthogonal, so at
    least ceil((pi/2 - theta) / (pi delta)) applications are needed.
    """
    if not 0 < delta <= 0.5:
        raise DomainError("delta must lie in (0, 1/2]")
    if not 0 < kappa < 0.5:
        raise DomainError("kappa must lie in (0, 1/2)")
    theta = math.asin(2 * math.sqrt(kappa * (1 - kappa)))
    return math.ceil((math.pi / 2 - theta) / (math.pi * delta))
