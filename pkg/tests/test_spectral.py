import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import common_neighbour_params, random_regular
from test_graphs import graphs
from stayhome import (
    InfeasibleParameters,
    InvalidParameters,
    InvariantViolation,
    PreconditionViolation,
    SrgParams,
    complement,
    complete,
    cycle,
    decompose,
    disjoint_copies,
    eigenvalue_support,
    join,
    join_decomposition,
    join_idempotents,
    join_quotient_eigenvalues,
    merge_terms,
    oa_cyclic,
    oa_graph,
    petersen,
    ratio_condition,
    srg_idempotents,
    srg_recognize,
    srg_spectrum,
    star,
)
from stayhome.spectral import _squarefree_part, is_rational

# decompose


def test_cycle_spectrum_matches_cosines():
    for n in range(3, 11):
        d = decompose(cycle(n))
        expected = sorted({round(2 * math.cos(2 * math.pi * j / n), 9) for j in range(n)}, reverse=True)
        assert np.allclose(d.eigenvalues, expected, atol=1e-9)
        assert sum(d.multiplicities) == n


def test_petersen_spectrum():
    d = decompose(petersen())
    assert np.allclose(d.eigenvalues, [3, 1, -2], atol=1e-12)
    assert d.multiplicities == (1, 5, 4)
    d.verify(petersen().as_float(), tol=1e-12)


def test_complete_graph_idempotents():
    n = 6
    d = decompose(complete(n))
    assert np.allclose(d.eigenvalues, [n - 1, -1])
    assert d.multiplicities == (1, n - 1)
    assert np.allclose(d.idempotents[0], np.full((n, n), 1 / n))
    assert np.allclose(d.idempotents[1], np.eye(n) - 1 / n)


def test_decompose_accepts_matrices_and_apply():
    a = np.diag([2.0, 2.0, -1.0])
    d = decompose(a)
    assert d.multiplicities == (2, 1)
    assert np.allclose(d.apply(np.exp), np.diag(np.exp([2, 2, -1])))


def test_verify_raises_on_broken_decomposition():
    d = decompose(cycle(5))
    broken = type(d)(d.eigenvalues, d.idempotents * 1.01, d.multiplicities)
    with pytest.raises(InvariantViolation) as exc:
        broken.verify(cycle(5).as_float())
    assert exc.value.certificate["resolution"] > 1e-3


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_decomposition_invariants(g):
    d = decompose(g)
    res = d.residuals(g.as_float())
    assert max(res.values()) <= 1e-9
    assert all(np.diff(d.eigenvalues) < 0)


def test_merge_terms_sums_coincident_eigenvalues():
    e = np.eye(3)
    parts = [np.diag(r) for r in e]
    d = merge_terms([1.0, 2.0, 1.0 + 1e-12], parts)
    assert np.allclose(d.eigenvalues, [2.0, 1.0])
    assert d.multiplicities == (1, 2)
    assert np.allclose(d.idempotents[1], np.diag([1, 0, 1]))


def test_eigenvalue_support():
    d = decompose(star(3))
    # centre of K_{1,3} never sees the eigenvalue 0
    centre = {round(float(d.eigenvalues[r]), 9) for r in eigenvalue_support(d, 0)}
    assert centre == {round(math.sqrt(3), 9), round(-math.sqrt(3), 9)}
    assert len(eigenvalue_support(d, 1)) == 3
    assert eigenvalue_support(decompose(petersen()), 4) == (0, 1, 2)


# joins


def test_join_quotient_eigenvalues_match_quotient_matrix():
    for k, ell, m, n in [(0, 0, 1, 4), (2, 3, 5, 4), (1, 0, 2, 3), (3, 0, 10, 1)]:
        mu1, mu2, sd = join_quotient_eigenvalues(k, ell, m, n)
        Q = np.array([[k, n], [m, ell]], dtype=float)
        w = np.sort(np.linalg.eigvals(Q).real)[::-1]
        assert np.allclose([mu1, mu2], w)
        assert math.isclose(sd, mu1 - mu2)


def test_join_idempotents_for_star():
    N1, N2 = join_idempotents(0, 0, 1, 3)
    assert math.isclose(N1[0, 0], 0.5)
    assert math.isclose(np.trace(N1), 1) and math.isclose(np.trace(N2), 1)
    assert np.allclose(N1 @ N1, N1) and np.allclose(N1 @ N2, 0)


def test_join_decomposition_rejects_irregular_side():
    with pytest.raises(PreconditionViolation):
        join_decomposition(star(3), cycle(4))
    with pytest.raises(PreconditionViolation):
        join_decomposition(cycle(4), star(2))


def test_join_decomposition_disconnected_side_is_split():
    data = join_decomposition(complete(1), disjoint_copies(2, 2))
    splits = [t for t in data.inherited if t.split]
    assert len(splits) == 1
    assert math.isclose(splits[0].eigenvalue, 1)
    assert len(data.terms()) == 4
    assert math.isclose(sum(np.trace(t.idempotent) for t in data.terms()), 5)
    assert math.isclose(data.trace_sum(), 0, abs_tol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 10**6))
def test_join_decomposition_matches_numeric(m, n, k, ell, seed):
    k, ell = min(k, m - 1), min(ell, n - 1)
    if (k * m) % 2:
        k -= 1
    if (ell * n) % 2:
        ell -= 1
    x, y = random_regular(k, m, seed), random_regular(ell, n, seed + 1)
    data = join_decomposition(x, y)
    num = decompose(join(x, y))
    closed = data.as_decomposition()
    assert np.allclose(closed.eigenvalues, num.eigenvalues, atol=1e-8)
    assert np.allclose(closed.idempotents, num.idempotents, atol=1e-8)
    assert closed.multiplicities == num.multiplicities


# strongly regular graphs


def test_srg_recognize_known_graphs():
    assert srg_recognize(petersen()).as_tuple() == (10, 3, 0, 1)
    assert srg_recognize(cycle(5)).as_tuple() == (5, 2, 0, 1)
    assert srg_recognize(disjoint_copies(2, 3)).as_tuple() == (6, 2, 1, 0)
    assert not srg_recognize(cycle(6))
    assert not srg_recognize(complete(5))
    assert not srg_recognize(star(3))
    r = srg_recognize(cycle(7))
    assert not r and r.entry is not None


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=8))
def test_srg_recognize_matches_neighbourhood_counting(g):
    found = srg_recognize(g)
    oracle = common_neighbour_params(g)
    k = regularity_or_none(g)
    if oracle is None or None in oracle or k in (0, g.n - 1):
        assert not found
    else:
        assert found and found.as_tuple() == oracle


def regularity_or_none(g):
    ds = set(g.degrees.tolist())
    return ds.pop() if len(ds) == 1 else None


def test_srg_spectrum_values():
    theta, tau, mt, mu = srg_spectrum(SrgParams(10, 3, 0, 1))
    assert (theta, tau, mt, mu) == (1.0, -2.0, 5, 4)
    theta, tau, mt, mu = srg_spectrum(SrgParams(5, 2, 0, 1))
    assert math.isclose(theta, (-1 + math.sqrt(5)) / 2) and (mt, mu) == (2, 2)
    with pytest.raises(InfeasibleParameters):
        srg_spectrum(SrgParams(11, 5, 2, 2))  # satisfies k(k-a-1) = ell c, but m_theta is irrational


def _feasible_parameter_sets(limit=60):
    out = []
    for n in range(5, limit):
        for k in range(1, n - 1):
            for c in range(1, k + 1):
                for a in range(0, k):
                    if k * (k - a - 1) != (n - k - 1) * c:
                        continue
                    p = SrgParams(n, k, a, c)
                    try:
                        _, _, mt, mu = srg_spectrum(p)
                    except InfeasibleParameters:
                        continue
                    if mt * mu:
                        out.append(p)
    return out


def test_multiplicity_identity_is_exact_on_all_small_feasible_sets():
    sets = _feasible_parameter_sets()
    assert any(p.as_tuple() == (10, 3, 0, 1) for p in sets)
    for p in sets:
        assert p.multiplicity_identity_residual() == Fraction(0), p


@pytest.mark.parametrize("g", [petersen(), cycle(5), oa_graph(oa_cyclic(2, 4)), oa_graph(oa_cyclic(3, 4)),
                               disjoint_copies(3, 2), complement(disjoint_copies(2, 4))],
                         ids=["petersen", "C5", "rook4", "OA(3,4)", "3K2", "K44"])
def test_srg_idempotents_match_numeric(g):
    p = srg_recognize(g)
    e = srg_idempotents(p, g)
    d = decompose(g)
    assert np.allclose(e.eigenvalues, d.eigenvalues, atol=1e-9)
    assert np.abs(e.idempotents - d.idempotents).max() <= 1e-9
    assert e.multiplicities == d.multiplicities


def test_srg_idempotents_reject_wrong_parameters():
    with pytest.raises(PreconditionViolation):
        srg_idempotents(SrgParams(10, 3, 0, 1), cycle(5))


# ratio condition


def test_ratio_condition_integer_and_single():
    assert ratio_condition([3, 1, -2]).pattern == "integer"
    assert ratio_condition([math.sqrt(2), 0]).pattern == "single-difference"
    with pytest.raises(InvalidParameters):
        ratio_condition([1.0])


def test_ratio_condition_quadratic():
    r5 = math.sqrt(5)
    res = ratio_condition([(-1 + r5) / 2, (-1 - r5) / 2, (-1 + 3 * r5) / 2])
    assert res.holds and res.pattern == "quadratic"
    a, delta, bs = res.surd
    assert (a, delta) == (-1, 5) and sorted(bs) == [-1, 1, 3]


def test_ratio_condition_fails_with_witness():
    r5 = math.sqrt(5)
    res = ratio_condition([2, (-1 + r5) / 2, (-1 - r5) / 2])
    assert res.status == "fails"
    r, s, k, l = res.witness
    assert math.isclose((r - s) / (k - l), res.ratio)
    assert is_rational(res.ratio) is None


def test_ratio_condition_cone_over_c4_support():
    # the apex of the cone over C4 only sees 1 +- sqrt(5)
    assert ratio_condition([1 + math.sqrt(5), 1 - math.sqrt(5)]).holds
    res = ratio_condition([1 + math.sqrt(5), 1 - math.sqrt(5), 1])
    assert res.holds and res.surd[:2] == (2, 5)
    # (2 sqrt 5)/(1 + sqrt 5) is irrational
    assert ratio_condition([1 + math.sqrt(5), 1 - math.sqrt(5), 0]).status == "fails"


def test_ratio_condition_rational_values_are_indeterminate():
    assert ratio_condition([0, 1 / 3, 1]).status == "indeterminate"


def test_squarefree_part():
    assert [_squarefree_part(x) for x in (1, 2, 4, 12, 18, 20, 45, 49)] == [1, 2, 1, 3, 2, 5, 5, 1]


def test_is_rational():
    assert is_rational(0.75) == Fraction(3, 4)
    assert is_rational(math.pi) is None
