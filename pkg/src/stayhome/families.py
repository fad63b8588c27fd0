"""Stay-at-home diagnostics for strongly regular families.

For a strongly regular graph every spectral idempotent has constant
diagonal ``m_r / n``, so the diagonal of the average mixing matrix is
``sum_r (m_r / n)**2`` and the walk satisfies ``M(t)[a, a] >= 2 Mhat[a, a] - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InfeasibleParameters, InvalidParameters, InvariantViolation
from .graphs import Graph, oa_cyclic, oa_graph
from .spectral import SrgParams, decompose, srg_spectrum
from .walks import default_time_grid, transition_matrices

STAY_AT_HOME_THRESHOLD = 0.5


@dataclass(frozen=True)
class FamilyDiagnostic:
    params: SrgParams
    avg_diag: float
    diag_lower_bound: float
    verdict: str  # "stay-at-home", "indeterminate" or "mixing-prone"
    off_diag_bound: Optional[float] = None  # measured d with |U(t)[a, b]| <= d / n**0.25


def oa_parameters(k: int, n: int) -> SrgParams:
    """Parameters of the graph of an OA(k, n), ``2 <= k <= n``."""
    if not 2 <= k <= n:
        raise InvalidParameters(f"OA graph parameters need 2 <= k <= n, got k={k}, n={n}")
    return SrgParams(n * n, k * (n - 1), n - 2 + (k - 1) * (k - 2), k * (k - 1))


def oa_spectrum(k: int, n: int) -> tuple:
    """``((k(n-1), 1), (n-k, k(n-1)), (-k, (n-1)(n+1-k)))`` as (eigenvalue, multiplicity) pairs."""
    oa_parameters(k, n)
    return ((k * (n - 1), 1), (n - k, k * (n - 1)), (-k, (n - 1) * (n + 1 - k)))


def steiner_parameters(v: int, k: int) -> SrgParams:
    """Block graph parameters of a 2-(v, k, 1) design.

    The Fano plane gives ``K_7``, which is not strongly regular in the strict
    sense; the parameters are still returned (with ``k = n - 1``).
    """
    if k < 2 or v < k:
        raise InfeasibleParameters(f"need 2 <= k <= v, got v={v}, k={k}")
    if (v * (v - 1)) % (k * (k - 1)) or (v - 1) % (k - 1):
        raise InfeasibleParameters(f"no 2-({v},{k},1) design: divisibility fails")
    r = (v - 1) // (k - 1)
    b = v * (v - 1) // (k * (k - 1))
    return SrgParams(b, k * (v - k) // (k - 1), r - 2 + (k - 1) ** 2, k * k)


def steiner_spectrum(v: int, k: int) -> tuple:
    """(eigenvalue, multiplicity) pairs of the block graph; multiplicities from the general SRG formulas."""
    p = steiner_parameters(v, k)
    theta, tau, mt, mu = srg_spectrum(p)
    return ((p.k, 1), (round(theta), mt), (round(tau), mu))


def srg_average_diagonal(p: SrgParams) -> Fraction:
    """Diagonal of the average mixing matrix, exactly.

    Coincident eigenvalues (``theta == k`` for disjoint cliques) share one
    idempotent, so their multiplicities are pooled before squaring.
    """
    _, _, mt, mu = srg_spectrum(p)
    groups = [1 + mt, mu] if not p.is_primitive_spectrum else [1, mt, mu]
    return sum(Fraction(m, p.n) ** 2 for m in groups)


def _verdict(avg_diag: float, lower: float, n: int, threshold: float) -> str:
    if lower >= threshold:
        return "stay-at-home"
    if avg_diag <= 2 / n:
        return "mixing-prone"
    return "indeterminate"


def srg_diagnostic(p: SrgParams, threshold: float = STAY_AT_HOME_THRESHOLD) -> FamilyDiagnostic:
    avg = float(srg_average_diagonal(p))
    lower = 2 * avg - 1
    return FamilyDiagnostic(p, avg, lower, _verdict(avg, lower, p.n, threshold))


def oa_stayhome_check(k: int, n: int, threshold: float = STAY_AT_HOME_THRESHOLD) -> FamilyDiagnostic:
    """Diagnostic for OA(k, n) graphs on ``N = n**2`` vertices.

    ``avg_diag = (1 + (k(n-1))**2 + ((n-1)(n+1-k))**2) / N**2``.
    """
    p = oa_parameters(k, n)
    N = n * n
    avg = Fraction(1 + (k * (n - 1)) ** 2 + ((n - 1) * (n + 1 - k)) ** 2, N * N)
    lower = 2 * avg - 1
    return FamilyDiagnostic(p, float(avg), float(lower), _verdict(float(avg), float(lower), N, threshold))


def conference_diagonal(n: int) -> float:
    """Average mixing diagonal ``(1 + 2((n-1)/2)**2)/n**2`` of a conference graph on n vertices."""
    if n % 4 != 1:
        raise InvalidParameters(f"conference graphs need n = 1 mod 4, got {n}")
    return float(Fraction(1 + 2 * ((n - 1) // 2) ** 2, n * n))


def conference_parameters(n: int) -> SrgParams:
    if n % 4 != 1:
        raise InvalidParameters(f"conference graphs need n = 1 mod 4, got {n}")
    return SrgParams(n, (n - 1) // 2, (n - 5) // 4, (n - 1) // 4)


def offdiag_bound_verify(p: SrgParams, g: Graph, t_grid=None, tol: float = 1e-6) -> tuple[float, float]:
    """Measured ``d = n**0.25 * max |U(t)[a, b]|`` and the exact multiplicity identity residual."""
    resid = abs(float(p.multiplicity_identity_residual()))
    if resid > tol:
        raise InvariantViolation(f"(theta - tau)^2 != n k ell/(m_theta m_tau) for {p}: {resid}")
    d = decompose(g)
    times = default_time_grid(d) if t_grid is None else np.asarray(t_grid, dtype=float)
    absU = np.abs(transition_matrices(d, times))
    absU[:, np.arange(g.n), np.arange(g.n)] = 0.0
    return float(p.n ** 0.25 * absU.max()), resid


def oa_sweep(k: int, ns, measure_up_to: int = 400, threshold: float = STAY_AT_HOME_THRESHOLD) -> list[tuple]:
    """CSV-ready rows ``(family, k, n, avgDiag, diagLowerBound, dMeasured, verdict)``.

    ``dMeasured`` is filled in when the graph is buildable (k <= 3) and has at
    most ``measure_up_to`` vertices.
    """
    rows = []
    for n in ns:
        diag = oa_stayhome_check(k, n, threshold)
        d_meas = None
        if k <= 3 and n * n <= measure_up_to:
            d_meas, _ = offdiag_bound_verify(diag.params, oa_graph(oa_cyclic(k, n)))
        rows.append(("oa", k, n, diag.avg_diag, diag.diag_lower_bound, d_meas, diag.verdict))
    return rows


def steiner_sweep(k: int, vs, threshold: float = STAY_AT_HOME_THRESHOLD) -> list[tuple]:
    rows = []
    for v in vs:
        try:
            p = steiner_parameters(v, k)
        except InfeasibleParameters:
            continue
        if not 0 < p.k < p.n - 1:
            continue
        diag = srg_diagnostic(p, threshold)
        rows.append(("steiner", k, v, diag.avg_diag, diag.diag_lower_bound, None, diag.verdict))
    return rows


def conference_sweep(ns, threshold: float = STAY_AT_HOME_THRESHOLD) -> list[tuple]:
    rows = []
    for n in ns:
        if n % 4 != 1 or n < 5:
            continue
        avg = conference_diagonal(n)
        lower = 2 * avg - 1
        rows.append(("conference", (n - 1) // 2, n, avg, lower, None, _verdict(avg, lower, n, threshold)))
    return rows


def gamma_limit(gamma: float) -> float:
    """Limit ``gamma**2 + (1 - gamma)**2`` of the OA(gamma n, n) average diagonal."""
    if not 0 < gamma < 1:
        raise InvalidParameters(f"gamma must lie in (0, 1), got {gamma}")
    return gamma ** 2 + (1 - gamma) ** 2

