import itertools

import pytest

from charsumlab import (FieldCharacter, VinogradovParams, build_field,
                        crt_character, exact_W_field, exact_W_multichar,
                        exact_W_squarefree, factor_squarefree,
                        iterate_solutions, lemma_rhs, quadrature_W_reference,
                        split_solutions, vinogradov_count_mitm,
                        vinogradov_count_naive)
from charsumlab.errors import (BudgetExceeded, MissingCount, RangeViolation,
                               UnsupportedDegree)
from charsumlab.meanvalues import has_many_distinct, power_sum_key

P = VinogradovParams


def brute_force_count(r, d, V):
    count = 0
    for v in itertools.product(range(1, V + 1), repeat=2 * r):
        if all(sum(x**i for x in v[:r]) == sum(x**i for x in v[r:])
               for i in range(1, d + 1)):
            count += 1
    return count


def test_naive_spot_values():
    assert vinogradov_count_naive(P(2, 1, 3)) == 19
    assert vinogradov_count_naive(P(2, 2, 3)) == 15
    for d in (1, 2, 3):
        for V in (1, 4, 9):
            assert vinogradov_count_naive(P(1, d, V)) == V


def test_naive_matches_pure_python():
    for r, d, V in [(1, 1, 5), (2, 1, 4), (2, 2, 4), (2, 3, 3), (3, 2, 3)]:
        assert vinogradov_count_naive(P(r, d, V)) == brute_force_count(r, d, V)


def test_mitm_agrees_with_naive():
    for r in (1, 2, 3):
        for d in (1, 2, 3):
            for V in (1, 2, 3, 5, 8):
                assert (vinogradov_count_mitm(P(r, d, V))
                        == vinogradov_count_naive(P(r, d, V)))


def test_count_budgets():
    with pytest.raises(BudgetExceeded):
        vinogradov_count_naive(P(3, 2, 40), budget=10**6)
    with pytest.raises(BudgetExceeded):
        vinogradov_count_mitm(P(3, 2, 200), budget=10**6)


def test_count_bounds_and_monotonicity():
    for d in (1, 2, 3):
        for V in range(1, 11):
            assert vinogradov_count_mitm(P(1, d, V)) == V
    for r in (2, 3):
        for V in (2, 4, 6):
            j = vinogradov_count_mitm(P(r, 2, V))
            assert V**r <= j <= V ** (2 * r)
    for V in range(1, 10):
        assert (vinogradov_count_mitm(P(2, 2, V + 1))
                >= vinogradov_count_mitm(P(2, 2, V)))
    for d in (1, 2):
        assert (vinogradov_count_mitm(P(2, d + 1, 8))
                <= vinogradov_count_mitm(P(2, d, 8)))


def test_iterate_solutions():
    sols = list(iterate_solutions(P(1, 1, 3)))
    assert sorted(t.v for t in sols) == [(1, 1), (2, 2), (3, 3)]
    sols22 = list(iterate_solutions(P(2, 2, 3)))
    assert len(sols22) == 15
    assert len({t.v for t in sols22}) == 15
    spread, clustered = split_solutions(P(2, 2, 3))
    assert len(spread) == 0 and len(clustered) == 15
    spread1, clustered1 = split_solutions(P(2, 1, 3))
    assert len(spread1) + len(clustered1) == 19
    assert all(has_many_distinct(t.v, 2) for t in spread1)
    with pytest.raises(BudgetExceeded):
        list(iterate_solutions(P(2, 1, 50), budget=100))


def test_solution_permutation_closure():
    sols = {t.v for t in iterate_solutions(P(2, 1, 4))}
    for v in sols:
        assert (v[1], v[0], v[2], v[3]) in sols
        assert (v[2], v[3], v[0], v[1]) in sols


def test_power_sum_key():
    assert power_sum_key((2, 3), 2).sums == (5, 13)


def test_exact_w_diagonal_cases():
    chi = crt_character(factor_squarefree(15), (1, 1))
    w = exact_W_squarefree(chi, None, P(1, 1, 1))
    assert w == pytest.approx(8.0, abs=1e-9)  # phi(15) unit shifts
    leg = crt_character(factor_squarefree(5), (2,))
    assert exact_W_squarefree(leg, None, P(1, 1, 2)) == pytest.approx(8.0, abs=1e-9)


def test_exact_w_matches_quadrature():
    leg = crt_character(factor_squarefree(5), (2,))
    for r in (1, 2):
        for V in (2, 3):
            w = exact_W_squarefree(leg, None, P(r, 1, V))
            ref = quadrature_W_reference(leg, None, P(r, 1, V), grid=2**10)
            assert w == pytest.approx(ref, rel=1e-3)
    chi21 = crt_character(factor_squarefree(21), (1, 2))
    w = exact_W_squarefree(chi21, None, P(2, 1, 3))
    ref = quadrature_W_reference(chi21, None, P(2, 1, 3), grid=2**10)
    assert w == pytest.approx(ref, rel=1e-3)


def test_exact_w_weighted():
    leg = crt_character(factor_squarefree(5), (2,))
    beta = [0.5, -0.25, 0.8j]
    w = exact_W_squarefree(leg, beta, P(2, 1, 3))
    ref = quadrature_W_reference(leg, beta, P(2, 1, 3), grid=2**10)
    assert w == pytest.approx(ref, rel=1e-6)
    with pytest.raises(ValueError):
        exact_W_squarefree(leg, [2.0, 0.0, 0.0], P(2, 1, 3))
    exact_W_squarefree(leg, [2.0, 0.0, 0.0], P(2, 1, 3), allow_large_weights=True)


def test_exact_w_multichar():
    chis = [crt_character(factor_squarefree(5), (1,)),
            crt_character(factor_squarefree(7), (2,))]
    w = exact_W_multichar(chis, None, P(1, 1, 1))
    assert w == pytest.approx(4 * 6, abs=1e-9)
    w2 = exact_W_multichar(chis, None, P(1, 1, 2))
    ref = quadrature_W_reference(chis, None, P(1, 1, 2), grid=2**10)
    assert w2 == pytest.approx(ref, rel=1e-3)
    with pytest.raises(RangeViolation):
        exact_W_multichar(chis, None, P(1, 1, 6))


def test_exact_w_field():
    f = build_field(3, 2)
    chi = FieldCharacter(f, 1)
    assert exact_W_field(chi, None, P(1, 1, 1)) == pytest.approx(8.0, abs=1e-9)
    w = exact_W_field(chi, None, P(1, 1, 2))
    ref = quadrature_W_reference(chi, None, P(1, 1, 2), grid=2**10)
    assert w == pytest.approx(ref, rel=1e-3)


def test_quadrature_grid_behaviour():
    leg = crt_character(factor_squarefree(5), (2,))
    p = P(2, 1, 4)
    exact = exact_W_squarefree(leg, None, p)
    # the integrand is a trig polynomial with frequencies below r*V, so
    # coarse grids alias (nonzero error) and any grid > r*(V-1) is exact
    errs = {g: abs(quadrature_W_reference(leg, None, p, grid=g) - exact)
            for g in (2, 4, 5, 6, 7, 8, 16)}
    assert errs[4] > 1.0 and errs[5] > 1.0
    for g in (7, 8, 16):
        assert errs[g] < 1e-9
    # doubling from a sub-threshold grid into the exact regime only helps
    assert errs[8] <= errs[4] and errs[16] <= errs[8] + 1e-12
    with pytest.raises(UnsupportedDegree):
        quadrature_W_reference(leg, None, P(1, 2, 2))


def riemann_w_2d(chi, p, grids):
    """Independent oracle for d = 2: a product-grid Riemann sum of the
    defining double integral, exact whenever grids[k] > r*(V^(k+1) - 1)
    because the integrand is a trigonometric polynomial in each alpha."""
    import numpy as np

    assert p.d == 2
    lam = np.arange(1, chi.q + 1, dtype=np.int64)
    T = np.stack([chi.value_many(lam + v) for v in range(1, p.V + 1)], axis=-1)
    vs = np.arange(1, p.V + 1)
    total = 0.0
    for a1 in range(grids[0]):
        for a2 in range(grids[1]):
            phase = np.exp(2j * np.pi * (a1 / grids[0] * vs
                                         + a2 / grids[1] * vs**2))
            S = T @ phase
            total += float((np.abs(S) ** (2 * p.r)).sum())
    return total / (grids[0] * grids[1])


def test_exact_w_degree_two_against_independent_quadrature():
    p = P(2, 2, 3)
    grids = (2 * 3 + 1, 2 * 9 + 1)  # beyond the aliasing thresholds
    for q, idx in [(15, (1, 1)), (7, (2,))]:
        chi = crt_character(factor_squarefree(q), idx)
        w = exact_W_squarefree(chi, None, p)
        ref = riemann_w_2d(chi, p, grids)
        assert w == pytest.approx(ref, rel=1e-9), q
    # weighted variant
    chi = crt_character(factor_squarefree(11), (3,))
    beta = [0.9, -0.4j, 0.2]
    w = exact_W_squarefree(chi, beta, p)
    # fold the weights into the value matrix by hand

    import numpy as np

    lam = np.arange(1, 12, dtype=np.int64)
    T = np.stack([chi.value_many(lam + v) for v in (1, 2, 3)], axis=-1)
    T = T * np.asarray(beta)[None, :]
    vs = np.arange(1, 4)
    total = 0.0
    for a1 in range(grids[0]):
        for a2 in range(grids[1]):
            phase = np.exp(2j * np.pi * (a1 / grids[0] * vs + a2 / grids[1] * vs**2))
            total += float((np.abs(T @ phase) ** 4).sum())
    assert w == pytest.approx(total / (grids[0] * grids[1]), rel=1e-9)


def test_lemma_rhs_values():
    assert lemma_rhs("L3", q=30, V=3, r=2, j_count=15) == pytest.approx(
        270 + (30 * 15) ** 0.5 * 9)
    assert lemma_rhs("L6", q=9, V=3, r=2, j_count=15) == pytest.approx(126.0)
    assert lemma_rhs("L4", q=30, V=3, r=4, s=1, j_count=15) == pytest.approx(
        30 * 81 + 30**0.5 * 15 * 81)
    assert lemma_rhs("L5", q=35, V=3, r=2, j_count=15) == pytest.approx(
        35 * 9 + 35**0.5 * 15)
    with pytest.raises(MissingCount):
        lemma_rhs("L3", q=30, V=3, r=2)
    with pytest.raises(MissingCount):
        lemma_rhs("L4", q=30, V=3, r=4, j_count=15)
