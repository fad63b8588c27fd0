"""Spectral decompositions: numerical, closed form for joins, closed form for SRGs.

A decomposition is the list of distinct eigenvalues together with the
orthogonal projections onto their eigenspaces, so that ``A = sum_r theta_r E_r``
and every matrix function is ``f(A) = sum_r f(theta_r) E_r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    InfeasibleParameters,
    InvalidParameters,
    InvariantViolation,
    NumericalFailure,
    PreconditionViolation,
)
from .graphs import Graph, complement, components, regularity

DEFAULT_GROUPING_TOL = 1e-8
INTEGER_TOL = 1e-6
RATIONAL_TOL = 1e-10
MAX_DENOMINATOR = 10**4
SURD_BOUND = 10**6


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (strictly descending) with their spectral idempotents.

    ``idempotents`` has shape ``(r, n, n)``; ``multiplicities[i]`` is the
    rounded trace of ``idempotents[i]``.
    """

    eigenvalues: np.ndarray
    idempotents: np.ndarray
    multiplicities: tuple

    @property
    def n(self) -> int:
        return self.idempotents.shape[1]

    def __len__(self):
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("r,rij->ij", self.eigenvalues, self.idempotents)

    def apply(self, f) -> np.ndarray:
        """Evaluate ``f(A)``; ``f`` is called on the eigenvalue array."""
        return np.einsum("r,rij->ij", f(self.eigenvalues), self.idempotents)

    def residuals(self, adj: Optional[np.ndarray] = None) -> dict:
        """Max-entry residuals of every invariant; ``adj`` enables the reconstruction check."""
        E = self.idempotents
        n = self.n
        out = {
            "symmetry": float(np.abs(E - E.transpose(0, 2, 1)).max()),
            "idempotency": float(np.abs(E @ E - E).max()),
            "resolution": float(np.abs(E.sum(axis=0) - np.eye(n)).max()),
            "multiplicity_sum": abs(sum(self.multiplicities) - n),
        }
        cross = 0.0
        for r in range(len(E)):
            for s in range(r + 1, len(E)):
                cross = max(cross, float(np.abs(E[r] @ E[s]).max()))
        out["annihilation"] = cross
        if adj is not None:
            out["reconstruction"] = float(np.abs(self.reconstruct() - adj).max())
        return out

    def verify(self, adj: Optional[np.ndarray] = None, tol: float = 1e-9) -> None:
        res = self.residuals(adj)
        bad = {k: v for k, v in res.items() if v > tol}
        if bad:
            raise InvariantViolation(f"spectral decomposition invariants violated: {bad}", res)


def _group_eigh(w: np.ndarray, V: np.ndarray, grouping_tol: float) -> SpectralDecomposition:
    order = np.argsort(w)[::-1]
    w, V = w[order], V[:, order]
    scale = grouping_tol * max(1.0, float(np.abs(w).max()))
    starts = [0] + [i for i in range(1, len(w)) if w[i - 1] - w[i] > scale] + [len(w)]
    eigs, idems, mults = [], [], []
    for lo, hi in zip(starts[:-1], starts[1:]):
        block = V[:, lo:hi]
        E = block @ block.T
        idems.append((E + E.T) / 2)
        eigs.append(float(w[lo:hi].mean()))
        mults.append(hi - lo)
    return SpectralDecomposition(np.array(eigs), np.array(idems), tuple(mults))


def decompose(g: Union[Graph, np.ndarray], grouping_tol: float = DEFAULT_GROUPING_TOL) -> SpectralDecomposition:
    """Spectral decomposition of a graph (or of any real symmetric matrix).

    Eigenvalues closer than ``grouping_tol * max(1, spectral radius)`` are
    treated as one.
    """
    a = g.as_float() if isinstance(g, Graph) else np.asarray(g, dtype=float)
    try:
        w, V = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"symmetric eigensolver did not converge: {exc}") from exc
    return _group_eigh(w, V, grouping_tol)


def merge_terms(eigenvalues: Sequence[float], idempotents: Sequence[np.ndarray],
                grouping_tol: float = DEFAULT_GROUPING_TOL) -> SpectralDecomposition:
    """Combine a refined decomposition into a true one by summing coincident eigenvalues."""
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    order = np.argsort(eigenvalues, kind="stable")[::-1]
    scale = grouping_tol * max(1.0, float(np.abs(eigenvalues).max()))
    eigs, idems = [], []
    for i in order:
        if eigs and eigs[-1] - eigenvalues[i] <= scale:
            idems[-1] = idems[-1] + idempotents[i]
        else:
            eigs.append(float(eigenvalues[i]))
            idems.append(np.array(idempotents[i], dtype=float))
    mults = tuple(int(round(np.trace(E))) for E in idems)
    return SpectralDecomposition(np.array(eigs), np.array(idems), mults)


def eigenvalue_support(d: SpectralDecomposition, a: int, tol: float = 1e-9) -> tuple:
    """Indices ``r`` with ``E_r e_a != 0``, detected through ``(E_r)_{a,a} > tol``."""
    diag = d.idempotents[:, a, a]
    return tuple(int(r) for r in np.flatnonzero(diag > tol))


# ---------------------------------------------------------------------------
# Joins of regular graphs


def _check_join_params(k, ell, m, n):
    if m < 1 or n < 1:
        raise InvalidParameters(f"join sides need at least one vertex, got m={m}, n={n}")
    if not (0 <= k < m) or not (0 <= ell < n):
        raise InvalidParameters(f"valencies out of range: k={k} (m={m}), ell={ell} (n={n})")


def join_quotient_eigenvalues(k: int, ell: int, m: int, n: int) -> tuple[float, float, float]:
    """Eigenvalues ``(mu1, mu2)`` of the quotient matrix [[k, n], [m, ell]] and ``sqrt(Delta)``.

    ``k``-regular ``X`` on ``m`` vertices joined to ``ell``-regular ``Y`` on
    ``n`` vertices; ``Delta = (k - ell)**2 + 4 m n``.
    """
    _check_join_params(k, ell, m, n)
    sqrt_delta = math.sqrt((k - ell) ** 2 + 4 * m * n)
    return 0.5 * (k + ell + sqrt_delta), 0.5 * (k + ell - sqrt_delta), sqrt_delta


def join_idempotents(k: int, ell: int, m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one projections onto the two quotient eigenvectors of the join."""
    mu1, mu2, sqrt_delta = join_quotient_eigenvalues(k, ell, m, n)
    if not (k - mu2 > 0 and mu1 - k > 0):
        raise NumericalFailure(f"expected mu2 < k < mu1, got mu1={mu1}, mu2={mu2}, k={k}")

    def block(x, norm):
        return np.block([
            [x * x * np.ones((m, m)), m * x * np.ones((m, n))],
            [m * x * np.ones((n, m)), m * m * np.ones((n, n))],
        ]) / norm

    N1 = block(k - mu2, m * sqrt_delta * (k - mu2))
    N2 = block(k - mu1, m * sqrt_delta * (mu1 - k))
    return N1, N2


@dataclass(frozen=True, eq=False)
class JoinTerm:
    eigenvalue: float
    idempotent: np.ndarray
    source: str  # "quotient", "x" or "y"
    split: bool = False  # remainder of a disconnected side's valency eigenspace


@dataclass(frozen=True, eq=False)
class JoinSpectralData:
    """Refined decomposition of the join of a k-regular and an ell-regular graph."""

    k: int
    ell: int
    m: int
    n: int
    mu1: float
    mu2: float
    delta: int
    sqrt_delta: float
    N1: np.ndarray
    N2: np.ndarray
    inherited: tuple

    def terms(self) -> list:
        return [JoinTerm(self.mu1, self.N1, "quotient"), JoinTerm(self.mu2, self.N2, "quotient"),
                *self.inherited]

    def reconstruct(self) -> np.ndarray:
        return sum(t.eigenvalue * t.idempotent for t in self.terms())

    def identity_residual(self) -> float:
        total = sum(t.idempotent for t in self.terms())
        return float(np.abs(total - np.eye(self.m + self.n)).max())

    def trace_sum(self) -> float:
        return float(sum(t.eigenvalue * np.trace(t.idempotent) for t in self.terms()))

    def as_decomposition(self, grouping_tol: float = DEFAULT_GROUPING_TOL) -> SpectralDecomposition:
        terms = self.terms()
        return merge_terms([t.eigenvalue for t in terms], [t.idempotent for t in terms], grouping_tol)


def _side_terms(g: Graph, valency: int, grouping_tol: float):
    """Non-principal idempotents of a regular graph, splitting the valency eigenspace if disconnected."""
    d = decompose(g, grouping_tol)
    if abs(d.eigenvalues[0] - valency) > 1e-6 * max(1, valency):
        raise NumericalFailure(f"largest eigenvalue {d.eigenvalues[0]} is not the valency {valency}")
    out = []
    comps = components(g)
    if len(comps) > 1:
        P = np.zeros((g.n, g.n))
        for c in comps:
            P[np.ix_(c, c)] = 1.0 / len(c)
        out.append((float(valency), P - np.full((g.n, g.n), 1.0 / g.n), True))
    for theta, E in zip(d.eigenvalues[1:], d.idempotents[1:]):
        out.append((float(theta), E, False))
    return out


def join_decomposition(x: Graph, y: Graph, tol: float = 1e-9,
                       grouping_tol: float = DEFAULT_GROUPING_TOL) -> JoinSpectralData:
    """Closed-form refined decomposition of ``join(x, y)`` for regular ``x`` and ``y``."""
    k, ell = regularity(x), regularity(y)
    if k is None:
        raise PreconditionViolation("left side of the join is not regular")
    if ell is None:
        raise PreconditionViolation("right side of the join is not regular")
    m, n = x.n, y.n
    mu1, mu2, sqrt_delta = join_quotient_eigenvalues(k, ell, m, n)
    N1, N2 = join_idempotents(k, ell, m, n)

    inherited = []
    for theta, E, split in _side_terms(x, k, grouping_tol):
        F = np.zeros((m + n, m + n))
        F[:m, :m] = E
        inherited.append(JoinTerm(theta, F, "x", split))
    for nu, E, split in _side_terms(y, ell, grouping_tol):
        F = np.zeros((m + n, m + n))
        F[m:, m:] = E
        inherited.append(JoinTerm(nu, F, "y", split))

    data = JoinSpectralData(k, ell, m, n, mu1, mu2, (k - ell) ** 2 + 4 * m * n, sqrt_delta,
                            N1, N2, tuple(inherited))
    adj = np.block([[x.as_float(), np.ones((m, n))], [np.ones((n, m)), y.as_float()]])
    err = float(np.abs(data.reconstruct() - adj).max())
    ident = data.identity_residual()
    if err > tol or ident > tol:
        raise InvariantViolation(
            f"join decomposition off: reconstruction {err:.3e}, identity {ident:.3e}",
            {"reconstruction": err, "identity": ident},
        )
    return data


# ---------------------------------------------------------------------------
# Strongly regular graphs


@dataclass(frozen=True)
class SrgParams:
    """Parameters ``(n, k; a, c)`` with the derived spectrum.

    ``theta > tau`` are the roots of ``t^2 - (a - c) t - (k - c)``; the
    multiplicities are the raw (float) formula values, see :func:`srg_spectrum`
    for the integrality-checked version.
    """

    n: int
    k: int
    a: int
    c: int

    @property
    def ell(self) -> int:
        return self.n - 1 - self.k

    @property
    def discriminant(self) -> int:
        """``(theta - tau)**2``, an integer."""
        return (self.a - self.c) ** 2 + 4 * (self.k - self.c)

    @cached_property
    def theta(self) -> float:
        return 0.5 * (self.a - self.c + math.sqrt(self.discriminant))

    @cached_property
    def tau(self) -> float:
        return 0.5 * (self.a - self.c - math.sqrt(self.discriminant))

    @cached_property
    def m_theta(self) -> float:
        return ((self.n - 1) * (-self.tau) - self.k) / (self.theta - self.tau)

    @cached_property
    def m_tau(self) -> float:
        return ((self.n - 1) * self.theta + self.k) / (self.theta - self.tau)

    @property
    def is_primitive_spectrum(self) -> bool:
        """True when ``k``, ``theta``, ``tau`` are three distinct eigenvalues."""
        return abs(self.theta - self.k) > 1e-9

    def multiplicity_identity_residual(self) -> Fraction:
        """Exact ``(theta - tau)^2 - n k ell / (m_theta m_tau)``."""
        _, _, mt, mu = srg_spectrum(self)
        if mt * mu == 0:
            raise InfeasibleParameters(f"zero multiplicity for {self}")
        return Fraction(self.discriminant) - Fraction(self.n * self.k * self.ell, mt * mu)

    def as_tuple(self) -> tuple:
        return (self.n, self.k, self.a, self.c)


@dataclass(frozen=True)
class NotSRG:
    """Negative answer from :func:`srg_recognize`; falsy."""

    reason: str
    entry: Optional[tuple] = None

    def __bool__(self):
        return False


def srg_recognize(g: Graph) -> Union[SrgParams, NotSRG]:
    """Check ``A^2 = kI + aA + c(J - I - A)`` entrywise and read off ``(n, k; a, c)``."""
    k = regularity(g)
    n = g.n
    if k is None:
        return NotSRG("not regular")
    if not 0 < k < n - 1:
        return NotSRG(f"valency {k} is not strictly between 0 and n-1={n - 1}")
    A = g.adj.astype(np.int64)
    A2 = A @ A
    adjacent = A == 1
    nonadjacent = (A == 0) & ~np.eye(n, dtype=bool)
    iu, ju = np.nonzero(np.triu(adjacent))
    a = int(A2[iu[0], ju[0]])
    for i, j in zip(iu, ju):
        if A2[i, j] != a:
            return NotSRG(f"adjacent pair has {A2[i, j]} common neighbours, expected {a}",
                          (int(i), int(j)))
    iu, ju = np.nonzero(np.triu(nonadjacent))
    c = int(A2[iu[0], ju[0]])
    for i, j in zip(iu, ju):
        if A2[i, j] != c:
            return NotSRG(f"non-adjacent pair has {A2[i, j]} common neighbours, expected {c}",
                          (int(i), int(j)))
    return SrgParams(n, k, a, c)


def srg_spectrum(p: SrgParams, tol: float = 1e-6) -> tuple[float, float, int, int]:
    """``(theta, tau, m_theta, m_tau)``; raises if the multiplicities are not integers."""
    if p.discriminant < 0:
        raise InfeasibleParameters(f"{p}: negative discriminant")
    mt, mu = p.m_theta, p.m_tau
    if abs(mt - round(mt)) > tol or abs(mu - round(mu)) > tol or round(mt) < 0 or round(mu) < 0:
        raise InfeasibleParameters(f"{p}: non-integral multiplicities {mt}, {mu}")
    return p.theta, p.tau, int(round(mt)), int(round(mu))


def srg_idempotents(p: SrgParams, g: Graph) -> SpectralDecomposition:
    """Closed-form idempotents ``J/n`` and ``(m/n)(I + (x/k) A - ((x+1)/ell) Abar)`` for x in (theta, tau)."""
    found = srg_recognize(g)
    if not found or found.as_tuple() != p.as_tuple():
        raise PreconditionViolation(f"graph is not strongly regular with parameters {p.as_tuple()}: {found}")
    theta, tau, mt, mu = srg_spectrum(p)
    n, k, ell = p.n, p.k, p.ell
    A = g.as_float()
    Abar = complement(g).as_float()
    I = np.eye(n)
    E0 = np.full((n, n), 1.0 / n)
    E1 = mt / n * (I + theta / k * A - (theta + 1) / ell * Abar)
    E2 = mu / n * (I + tau / k * A - (tau + 1) / ell * Abar)
    return merge_terms([k, theta, tau], [E0, E1, E2])


# ---------------------------------------------------------------------------
# Ratio condition


@dataclass(frozen=True)
class RatioCondition:
    """Outcome of :func:`ratio_condition`.

    ``status`` is ``"holds"``, ``"fails"`` or ``"indeterminate"``. A failure
    carries ``witness = (r, s, k, l)`` with ``(r - s)/(k - l)`` irrational
    (no rational approximant with denominator up to the cap).
    """

    status: str
    pattern: str
    witness: Optional[tuple] = None
    ratio: Optional[float] = None
    surd: Optional[tuple] = None  # (a, delta, (b_i...)) when the quadratic pattern fits

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def _squarefree_part(x: int) -> int:
    out, p = 1, 2
    while p * p <= x:
        while x % (p * p) == 0:
            x //= p * p
        if x % p == 0:
            out *= p
            x //= p
        p += 1
    return out * x


def _fit_common_surd(values: np.ndarray, tol: float):
    """Find integers a, b_i and square-free delta with 2 s_i = a + b_i sqrt(delta)."""
    twice = 2 * values
    span = min(SURD_BOUND, int(math.ceil(4 * np.abs(values).max())) + 4)
    for a in sorted(range(-span, span + 1), key=lambda v: (abs(v), v)):
        y = (twice - a) ** 2
        r = np.rint(y)
        if (np.abs(y - r) > tol * np.maximum(1.0, y)).any():
            continue
        nonzero = [int(v) for v in r if v > 0]
        parts = {_squarefree_part(v) for v in nonzero}
        if len(parts) > 1:
            continue
        delta = parts.pop() if parts else 1
        if delta > SURD_BOUND:
            continue
        bs = tuple(
            int(math.copysign(math.isqrt(int(v) // delta), t - a)) if v > 0 else 0
            for v, t in zip(r, twice)
        )
        if max(map(abs, bs)) > SURD_BOUND:
            continue
        return a, delta, bs
    return None


def is_rational(x: float, max_denominator: int = MAX_DENOMINATOR,
                tol: float = RATIONAL_TOL) -> Optional[Fraction]:
    """Best rational approximant with bounded denominator if it matches ``x`` to ``tol``."""
    q = Fraction(x).limit_denominator(max_denominator)
    return q if abs(x - float(q)) <= tol * max(1.0, abs(x)) else None


def ratio_condition(S: Sequence[float], tol: float = INTEGER_TOL,
                    rational_tol: float = RATIONAL_TOL,
                    max_denominator: int = MAX_DENOMINATOR) -> RatioCondition:
    """Decide whether all ratios of differences of elements of ``S`` are rational.

    Integers and sets of the form ``(a + b_i sqrt(delta))/2`` with a common
    ``a`` are settled exactly. Anything else is probed with continued
    fractions; a ratio with no approximant is a witness of failure, and if
    every ratio looks rational the answer is ``indeterminate``.
    """
    vals = sorted(set(float(s) for s in S), reverse=True)
    if len(vals) < 2:
        raise InvalidParameters("the ratio condition needs at least two values")
    if len(vals) == 2:
        return RatioCondition("holds", "single-difference")
    if all(abs(v - round(v)) <= tol for v in vals):
        return RatioCondition("holds", "integer")
    fit = _fit_common_surd(np.array(vals), tol)
    if fit is not None:
        a, delta, bs = fit
        # differences are (b_i - b_j) sqrt(delta) / 2, so every ratio is (b_i - b_j)/(b_k - b_l)
        return RatioCondition("holds", "quadratic", surd=(a, delta, bs))
    base = vals[0] - vals[1]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            ratio = (vals[i] - vals[j]) / base
            if is_rational(ratio, max_denominator, rational_tol) is None:
                return RatioCondition("fails", "numeric",
                                      witness=(vals[i], vals[j], vals[0], vals[1]), ratio=ratio)
    return RatioCondition("indeterminate", "numeric")
