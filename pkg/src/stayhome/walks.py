"""Continuous quantum walks ``U(t) = exp(itA)`` and their certificates.

Everything is evaluated through spectral sums ``U(t) = sum_r exp(i t theta_r) E_r``;
there is no time stepping. Hit times (periodicity, state transfer, flatness)
are located on a grid and then refined by bisection on the derivative of a
smooth deficiency function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameters, InvariantViolation, PreconditionViolation
from .graphs import Graph, complement, cone, regularity
from .spectral import (
    MAX_DENOMINATOR,
    RATIONAL_TOL,
    SpectralDecomposition,
    decompose,
    eigenvalue_support,
    is_rational,
    join_quotient_eigenvalues,
)

BISECTION_STEPS = 60
DEFAULT_GRID_POINTS = 512
EQUALITY_EVENT_TOL = 1e-6

GraphLike = Union[Graph, SpectralDecomposition]


def _spectral(g: GraphLike) -> SpectralDecomposition:
    return g if isinstance(g, SpectralDecomposition) else decompose(g)


def default_time_grid(d: GraphLike, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform grid on ``[0, 2 pi / g]`` with ``g`` the smallest gap between distinct eigenvalues."""
    d = _spectral(d)
    gaps = -np.diff(d.eigenvalues)
    end = 2 * np.pi / gaps.min() if len(gaps) else 2 * np.pi
    return np.linspace(0.0, end, points)


# ---------------------------------------------------------------------------
# U(t), M(t), average mixing


def transition_matrix(d: GraphLike, t: float) -> np.ndarray:
    d = _spectral(d)
    return np.einsum("r,rij->ij", np.exp(1j * t * d.eigenvalues), d.idempotents)


def transition_matrices(d: GraphLike, times) -> np.ndarray:
    """Stack of ``U(t)`` for every ``t`` in ``times``, shape ``(len(times), n, n)``."""
    d = _spectral(d)
    phases = np.exp(1j * np.outer(np.asarray(times, dtype=float), d.eigenvalues))
    return np.einsum("tr,rij->tij", phases, d.idempotents)


def mixing_matrix(d: GraphLike, t: float) -> np.ndarray:
    U = transition_matrix(d, t)
    return (U * U.conj()).real


def average_mixing(d: GraphLike) -> np.ndarray:
    """Sum of the entrywise squares of the spectral idempotents."""
    d = _spectral(d)
    return (d.idempotents ** 2).sum(axis=0)


def psd_sandwich(d: GraphLike, t: float, tol: float = 1e-9) -> tuple[float, float]:
    """Smallest eigenvalues of ``I - M(t)`` and ``M(t) - 2 Mhat + I``.

    Both are nonnegative in exact arithmetic; a margin below ``-tol`` raises.
    """
    d = _spectral(d)
    M = mixing_matrix(d, t)
    Mhat = average_mixing(d)
    I = np.eye(d.n)
    lower = float(np.linalg.eigvalsh(I - M)[0])
    upper = float(np.linalg.eigvalsh(M - 2 * Mhat + I)[0])
    if lower < -tol or upper < -tol:
        raise InvariantViolation(
            f"mixing sandwich broken at t={t}: margins {lower:.3e}, {upper:.3e}",
            {"t": t, "lower_margin": lower, "upper_margin": upper},
        )
    return lower, upper


def diag_lower_from_average(d: GraphLike, a: int) -> float:
    """Time-independent lower bound ``2 Mhat[a, a] - 1`` on ``M(t)[a, a]``."""
    return float(2 * average_mixing(d)[a, a] - 1)


def abs_entry_bound(d: GraphLike, a: int, b: int) -> float:
    """``sum_r |(E_r)[a, b]|``, an upper bound on ``|U(t)[a, b]|`` for every t."""
    d = _spectral(d)
    return float(np.abs(d.idempotents[:, a, b]).sum())


def complement_residual(g: Graph, t_grid) -> float:
    """Max over the grid and all entries of ``|U_comp(t) - exp(-it) U(-t)|``.

    For a regular graph the difference is ``exp(-ikt) (exp(int) - 1)/n J``,
    so the result never exceeds ``2/n``.
    """
    if regularity(g) is None:
        raise PreconditionViolation("complement residual needs a regular graph")
    times = np.asarray(t_grid, dtype=float)
    Ug = transition_matrices(decompose(g), -times)
    Uc = transition_matrices(decompose(complement(g)), times)
    diff = Uc - np.exp(-1j * times)[:, None, None] * Ug
    return float(np.abs(diff).max())


# ---------------------------------------------------------------------------
# Join closed forms


def join_apex_entry(k: int, ell: int, m: int, n: int, t):
    """``U(t)[a, y]`` for ``a`` in X and ``y`` in Y of a regular join."""
    mu1, mu2, sqrt_delta = join_quotient_eigenvalues(k, ell, m, n)
    t = np.asarray(t, dtype=float)
    return (np.exp(1j * mu1 * t) - np.exp(1j * mu2 * t)) / sqrt_delta


def join_ab_residual(k: int, ell: int, m: int, n: int, t):
    """``U_join(t)[a, b] - U_X(t)[a, b]`` for ``a, b`` in X (not necessarily distinct)."""
    mu1, mu2, sqrt_delta = join_quotient_eigenvalues(k, ell, m, n)
    t = np.asarray(t, dtype=float)
    return ((k - mu2) / sqrt_delta * np.exp(1j * mu1 * t)
            - (k - mu1) / sqrt_delta * np.exp(1j * mu2 * t)
            - np.exp(1j * k * t)) / m


# ---------------------------------------------------------------------------
# Cones


@dataclass(frozen=True)
class ConeAnalysis:
    """Apex behaviour of the cone over an ``ell``-regular graph on ``n`` vertices."""

    ell: int
    n: int
    delta: int  # ell**2 + 4n
    sqrt_delta: float
    mu1: float
    mu2: float
    period: float
    phase_angle: float
    root_of_unity: bool
    uniform_mixing_time: Optional[float]
    return_bound: float
    regime: float  # ell**2 / n; the return bound tends to 1 as this grows

    @property
    def phase(self) -> complex:
        return complex(np.exp(1j * self.phase_angle))


def cone_analysis(ell: int, n: int) -> ConeAnalysis:
    if n < 1 or not 0 <= ell <= n - 1:
        raise InvalidParameters(f"need 0 <= ell <= n-1, got ell={ell}, n={n}")
    if (ell * n) % 2:
        raise InvalidParameters(f"no {ell}-regular graph on {n} vertices (ell*n odd)")
    delta = ell * ell + 4 * n
    root = math.isqrt(delta)
    sqrt_delta = math.sqrt(delta)
    mu1, mu2, _ = join_quotient_eigenvalues(0, ell, 1, n)
    period = 2 * math.pi / sqrt_delta
    # t*mu1 at the first period: pi*ell/sqrt(delta) + pi
    phase_angle = math.pi * ell / sqrt_delta + math.pi
    # phase_angle/pi = ell/sqrt(delta) + 1 is rational iff delta is a square or ell == 0
    root_of_unity = root * root == delta or ell == 0
    t_mix = None
    if ell <= 2:
        cos_val = 1 - delta / (2 * (n + 1))
        t_mix = math.acos(max(-1.0, min(1.0, cos_val))) / sqrt_delta
    return ConeAnalysis(
        ell=ell, n=n, delta=delta, sqrt_delta=sqrt_delta, mu1=mu1, mu2=mu2,
        period=period, phase_angle=phase_angle, root_of_unity=root_of_unity,
        uniform_mixing_time=t_mix, return_bound=ell * ell / delta, regime=ell * ell / n,
    )


@dataclass(frozen=True)
class UniformMixingCertificate:
    time: float
    probabilities: np.ndarray
    max_deviation: float


def verify_apex_uniform_mixing(y: Graph, tol: float = 1e-9) -> UniformMixingCertificate:
    """Evaluate the apex column of the cone over ``y`` at the predicted mixing time."""
    ell = regularity(y)
    if ell is None:
        raise PreconditionViolation("base graph must be regular")
    if ell > 2:
        raise PreconditionViolation(f"apex uniform mixing needs base valency ell <= 2, got {ell}")
    info = cone_analysis(ell, y.n)
    U = transition_matrix(decompose(cone(y)), info.uniform_mixing_time)
    probs = np.abs(U[:, 0]) ** 2
    dev = float(np.abs(probs - 1 / (y.n + 1)).max())
    cert = UniformMixingCertificate(info.uniform_mixing_time, probs, dev)
    if dev > tol:
        raise InvariantViolation(f"apex column not flat at t*={cert.time}: deviation {dev:.3e}", cert)
    return cert


# ---------------------------------------------------------------------------
# Scans for hit times


class _Entries:
    """Selected entries of ``U(t)`` (and their time derivatives) as spectral sums."""

    def __init__(self, d: SpectralDecomposition, rows, cols):
        self.theta = d.eigenvalues
        self.coef = d.idempotents[:, rows, cols]  # (r, p)

    def value(self, t):
        return np.exp(1j * np.multiply.outer(t, self.theta)) @ self.coef

    def deriv(self, t):
        return (1j * self.theta * np.exp(1j * np.multiply.outer(t, self.theta))) @ self.coef

    def prob(self, t):
        u = self.value(t)
        return (u * u.conj()).real

    def dprob(self, t):
        return 2 * (self.value(t).conj() * self.deriv(t)).real


def _bisect_root(fn, lo, hi, steps=BISECTION_STEPS):
    flo = fn(lo)
    if flo == 0:
        return lo
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _local_extrema(grid, values, slope, maximize):
    """Refined local extrema of a sampled function; ``slope`` is its exact derivative."""
    sign = 1.0 if maximize else -1.0
    v = sign * np.asarray(values)
    out = []
    for i in range(1, len(grid) - 1):
        if v[i] >= v[i - 1] and v[i] >= v[i + 1]:
            lo, hi = grid[i - 1], grid[i + 1]
            slo, shi = sign * slope(lo), sign * slope(hi)
            if slo > 0 > shi:
                out.append(float(_bisect_root(slope, lo, hi)))
            else:
                out.append(float(grid[i]))
    if len(grid) > 1 and v[-1] > v[-2]:
        out.append(float(grid[-1]))
    return out


def _dedupe(times, scale):
    out = []
    for t in sorted(times):
        if not out or t - out[-1] > scale:
            out.append(t)
    return out


@dataclass
class UniformMixingScan:
    vertex: int
    hits: list
    floor: float  # smallest flatness deviation seen (0 when a hit exists)
    floor_time: Optional[float] = None


def scan_uniform_mixing(g: GraphLike, a: int, t_grid, tol: float = 1e-9) -> UniformMixingScan:
    """Times where ``U(t) e_a`` is flat: every ``|U(t)[j, a]|**2`` equals ``1/n``.

    The deficiency ``sum_j (|U_ja|^2 - 1/n)^2`` is minimised over the grid; a
    refined minimum is a hit if the largest deviation is at most ``tol``.
    """
    d = _spectral(g)
    n = d.n
    ent = _Entries(d, np.arange(n), np.full(n, a))
    grid = np.asarray(t_grid, dtype=float)

    def deficiency(t):
        return ((ent.prob(t) - 1 / n) ** 2).sum(axis=-1)

    def slope(t):
        return float((2 * (ent.prob(t) - 1 / n) * ent.dprob(t)).sum())

    candidates = _local_extrema(grid, deficiency(grid), slope, maximize=False)
    if deficiency(grid[0]) <= deficiency(grid[1]):
        candidates.append(float(grid[0]))
    hits, floor, floor_t = [], math.inf, None
    for t in candidates:
        dev = float(np.abs(ent.prob(t) - 1 / n).max())
        if dev < floor:
            floor, floor_t = dev, t
        if dev <= tol:
            hits.append(t)
    spacing = (grid[-1] - grid[0]) / max(1, len(grid) - 1)
    return UniformMixingScan(a, _dedupe(hits, 1e-3 * spacing), floor, floor_t)


def phase_fraction(phase: complex, max_denominator: int = MAX_DENOMINATOR,
                   tol: float = RATIONAL_TOL) -> Optional[Fraction]:
    """``arg(phase)/pi`` as a fraction when it is recognisably rational, else ``None``."""
    return is_rational(float(np.angle(phase)) / math.pi, max_denominator, tol)


@dataclass
class PeriodicityResult:
    found: bool
    time: Optional[float] = None
    phase: Optional[complex] = None
    support: tuple = ()
    support_residual: Optional[float] = None
    phase_fraction: Optional[Fraction] = None

    @property
    def root_of_unity(self) -> Optional[bool]:
        return None if self.phase is None else self.phase_fraction is not None


def periodicity_check(d: GraphLike, a: int, t_grid, tol: float = 1e-9) -> PeriodicityResult:
    """First positive time in the grid range where ``|U(t)[a, a]| >= 1 - tol``.

    At a hit, ``exp(i t theta_r)`` must agree across the eigenvalue support of
    ``a``; the largest disagreement is reported as ``support_residual``.
    """
    d = _spectral(d)
    ent = _Entries(d, [a], [a])
    grid = np.asarray(t_grid, dtype=float)
    probs = ent.prob(grid)[:, 0]
    times = _local_extrema(grid, probs, lambda t: float(ent.dprob(t)[0]), maximize=True)
    support = eigenvalue_support(d, a)
    for t in sorted(times):
        if t <= 0:
            continue
        u = complex(ent.value(t)[0])
        if abs(u) >= 1 - tol:
            phases = np.exp(1j * t * d.eigenvalues[list(support)])
            resid = float(np.abs(phases - phases[0]).max())
            return PeriodicityResult(True, t, u, support, resid, phase_fraction(u))
    return PeriodicityResult(False, support=support)


@dataclass
class StateTransferResult:
    found: bool
    time: Optional[float] = None
    phase: Optional[complex] = None
    symmetry_residual: Optional[float] = None
    best_amplitude: float = 0.0


def pst_detect(d: GraphLike, a: int, b: int, t_grid, tol: float = 1e-9) -> StateTransferResult:
    """First grid-refined time with ``|U(t)[b, a]| >= 1 - tol``; the phase is ``U(t)[b, a]``."""
    if a == b:
        raise InvalidParameters("perfect state transfer needs two distinct vertices")
    d = _spectral(d)
    ent = _Entries(d, [b, a], [a, b])
    grid = np.asarray(t_grid, dtype=float)
    probs = ent.prob(grid)[:, 0]
    times = _local_extrema(grid, probs, lambda t: float(ent.dprob(t)[0]), maximize=True)
    best = float(np.sqrt(probs.max()))
    for t in sorted(times):
        u_ba, u_ab = ent.value(t)
        best = max(best, abs(u_ba))
        if abs(u_ba) >= 1 - tol:
            return StateTransferResult(True, t, complex(u_ba), float(abs(u_ba - u_ab)), float(abs(u_ba)))
    return StateTransferResult(False, best_amplitude=best)


# ---------------------------------------------------------------------------
# Stay-at-home report


@dataclass
class MixingReport:
    """Per-time and overall stay-at-home statistics over a time grid."""

    n: int
    times: np.ndarray
    min_diag: np.ndarray  # min_a M(t)[a, a]
    max_offdiag: np.ndarray  # max_{a != b} |U(t)[a, b]|
    lower_margin: np.ndarray  # lambda_min(I - M(t))
    upper_margin: np.ndarray  # lambda_min(M(t) - 2 Mhat + I)
    identity_gap: np.ndarray  # max |M(t) - I|
    average_gap: np.ndarray  # max |M(t) - (2 Mhat - I)|
    diag_min_by_vertex: np.ndarray  # min_t M(t)[a, a]
    avg_diag_min: float
    periodic_events: list = field(default_factory=list)
    complete_events: list = field(default_factory=list)

    @property
    def min_diagonal(self) -> float:
        return float(self.min_diag.min())

    @property
    def max_off_diagonal(self) -> float:
        return float(self.max_offdiag.max())

    @property
    def average_bound(self) -> float:
        """``2 min_a Mhat[a, a] - 1``, valid for all t."""
        return 2 * self.avg_diag_min - 1

    @property
    def observation_bound(self) -> float:
        """If every off-diagonal ``|U| <= c/n`` then ``M(t)[a, a] >= 1 - (n-1) c^2/n^2``."""
        return 1 - (self.n - 1) * self.max_off_diagonal ** 2

    def summary(self) -> dict:
        return {
            "n": self.n,
            "points": len(self.times),
            "t_start": float(self.times[0]),
            "t_end": float(self.times[-1]),
            "min_diagonal": self.min_diagonal,
            "max_off_diagonal": self.max_off_diagonal,
            "average_diagonal_min": self.avg_diag_min,
            "average_bound": self.average_bound,
            "observation_bound": self.observation_bound,
            "min_lower_margin": float(self.lower_margin.min()),
            "min_upper_margin": float(self.upper_margin.min()),
            "diag_min_by_vertex": self.diag_min_by_vertex.tolist(),
            "periodic_events": list(self.periodic_events),
            "complete_graph_events": list(self.complete_events),
        }

    def series(self) -> list[tuple]:
        """Rows ``(t, min_diag, max_offdiag, lower_margin, upper_margin, identity_gap, average_gap)``."""
        return list(zip(self.times.tolist(), self.min_diag.tolist(), self.max_offdiag.tolist(),
                        self.lower_margin.tolist(), self.upper_margin.tolist(),
                        self.identity_gap.tolist(), self.average_gap.tolist()))


def stay_at_home_report(g: GraphLike, t_grid=None, tol: float = 1e-9) -> MixingReport:
    """Sweep a time grid collecting diagonal minima, off-diagonal maxima and sandwich margins.

    Near-equality events (max-entry gap at most ``1e-6`` at ``t > 0``) are
    recorded: ``M(t) = I`` points to periodicity, ``M(t) = 2 Mhat - I`` to a
    complete graph. The eigenvalue margins cannot serve here: the all-ones
    vector is in the kernel of both differences, so they are always ~0.
    """
    d = _spectral(g)
    n = d.n
    times = default_time_grid(d) if t_grid is None else np.asarray(t_grid, dtype=float)
    U = transition_matrices(d, times)
    absU = np.abs(U)
    M = absU ** 2
    diag = np.diagonal(M, axis1=1, axis2=2)
    off = absU.copy()
    off[:, np.arange(n), np.arange(n)] = 0.0
    Mhat = average_mixing(d)
    I = np.eye(n)
    lower = np.linalg.eigvalsh(I - M)[:, 0]
    upper = np.linalg.eigvalsh(M - 2 * Mhat + I)[:, 0]
    worst = int(np.argmin(np.minimum(lower, upper)))
    if min(lower[worst], upper[worst]) < -tol:
        raise InvariantViolation(
            f"mixing sandwich broken at t={times[worst]}",
            {"t": float(times[worst]), "lower_margin": float(lower[worst]),
             "upper_margin": float(upper[worst])},
        )
    id_gap = np.abs(M - I).reshape(len(times), -1).max(axis=1)
    avg_gap = np.abs(M - (2 * Mhat - I)).reshape(len(times), -1).max(axis=1)
    positive = times > 0
    return MixingReport(
        n=n,
        times=times,
        min_diag=diag.min(axis=1),
        max_offdiag=off.reshape(len(times), -1).max(axis=1),
        lower_margin=lower,
        upper_margin=upper,
        identity_gap=id_gap,
        average_gap=avg_gap,
        diag_min_by_vertex=diag.min(axis=0),
        avg_diag_min=float(Mhat.diagonal().min()),
        periodic_events=times[positive & (id_gap <= EQUALITY_EVENT_TOL)].tolist(),
        complete_events=times[positive & (avg_gap <= EQUALITY_EVENT_TOL)].tolist(),
    )
