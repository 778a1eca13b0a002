import itertools
import math

import pytest

from charsumlab.campaigns import (CampaignConfig, chang_epsilon,
                                  compare_exponents, phi_factor, run_campaign,
                                  sample_phase_poly, theorem_exponent)
from charsumlab.errors import DegenerateDenominator, HypothesisViolated
from charsumlab.rng import SplitMix64, point_hash


def run(target, **kw):
    return run_campaign(CampaignConfig(target=target, **kw))


def test_unknown_target():
    with pytest.raises(ValueError):
        run("thm9")


def test_thm1_structure_q15():
    rep = run("thm1", seed=5, d=2, r_d=5, q_min=15, q_max=15, samples=1,
              chars_per_modulus=3)
    assert len(rep.records) == 3  # all three primitive characters mod 15
    assert math.isfinite(rep.aggregate["max_ratio"])
    assert rep.passed
    for rec in rep.records:
        assert rec["lhs"] <= rec["nterms"] + 1e-9
        assert rec["q"] == 15


def test_thm1_requires_r_d():
    with pytest.raises(HypothesisViolated):
        run("thm1", seed=0, d=2)
    with pytest.raises(HypothesisViolated):
        run("thm1", seed=0, d=2, r_d=5, r=4)


def test_thm1_diagnostics():
    rep = run("thm1", seed=3, d=1, r_d=3, q_min=80, q_max=120, samples=1,
              chars_per_modulus=1, diagnostics=True)
    rec = rep.records[0]
    assert rec["diag_V"] >= 1 and rec["diag_U"] >= 1
    assert rec["diag_I_sum"] == 2 * rec["N"] * rec["diag_units"]
    assert rec["diag_I_max"] >= 1
    assert rec["diag_W1_phi_weighted"] >= 0
    assert rec["diag_lemma3_rhs"] > 0


def test_campaign_determinism_across_threads_and_runs():
    for target, kw in [("thm1", dict(d=2, r_d=5, samples=3, q_max=200)),
                       ("thm3", dict(d=2, r_d=5, samples=2)),
                       ("weil", dict(q_max=13)),
                       ("lemma5", dict(V_list=(4, 8)))]:
        base = run(target, seed=11, threads=1, **kw).to_json_bytes()
        again = run(target, seed=11, threads=1, **kw).to_json_bytes()
        threaded = run(target, seed=11, threads=8, **kw).to_json_bytes()
        assert base == again
        assert base == threaded
        changed = run(target, seed=12, threads=1, **kw).to_json_bytes()
        assert changed != base


def test_weil_small_primes():
    rep = run("weil", seed=0, q_max=11)
    assert rep.passed
    assert rep.aggregate["total_violations"] == 0
    for rec in rep.records:
        assert rec["violations"] == 0
        assert len(rec["argmax_tuple"]) == 4
        # excluded tuples: fewer than r+1 distinct entries never appear
        assert len(set(rec["argmax_tuple"])) >= 3
        assert rec["ratio"] <= 1.0 + 1e-9


def test_weil_tuple_filter():
    from charsumlab.campaigns import _distinct_rich_tuples

    tuples = _distinct_rich_tuples(3, 2)
    as_set = {tuple(map(int, row)) for row in tuples}
    for v in itertools.product(range(1, 4), repeat=4):
        if len(set(v)) >= 3:
            assert v in as_set
        else:
            assert v not in as_set


def test_smoothing_campaign_runs():
    rep = run("smoothing", seed=2, samples=4, grid=128)
    assert rep.passed
    assert len(rep.records) == 4
    for rec in rep.records:
        assert math.isfinite(rec["ratio"])
        assert rec["rhs_inner_max"] >= rec["rhs_single_alpha"] - 1e-9
    # lemma1 is an alias
    alias = run("lemma1", seed=2, samples=4, grid=128)
    assert alias.to_json_bytes() != b""


def test_smoothing_constant_function_structure():
    # G identically 1: with alpha = 0 every inner sum is V, so the RHS
    # machinery must dominate the plain box sum
    N, U, V = 12, 2, 4
    assert U * V <= N
    lhs = N
    box0 = range(-N, N + 1)
    total = sum(V for _ in box0 for _ in range(1, U + 1))
    rhs = math.log(N) / (V * U) * total
    assert rhs >= lhs
    # G supported on a single point: the box sum is at most 1
    lhs_single = abs(sum(1 if pt == 3 else 0 for pt in range(1, N + 1)))
    assert lhs_single <= 1


def test_phi_campaign():
    rep = run("phi", seed=0, d=4, V_phi=60)
    assert rep.passed
    assert len(rep.records) == 4
    for rec in rep.records:
        assert rec["max_identity_residual"] <= 1e-12
        assert rec["max_phi_over_cap"] <= 1.0
        assert rec["monotone"]
        assert rec["endpoint_phi"] == pytest.approx(rec["endpoint_expected"], rel=1e-12)


def test_phi_factor_endpoint():
    V = 16
    for i in (1, 2, 3):
        assert phi_factor(i, V, V) == pytest.approx(math.pi * V**i, rel=1e-13)
        assert abs(phi_factor(i, 1, V)) <= math.pi**2 * V**i


def test_mean_value_campaigns_respect_threshold():
    rep = run("lemma3", seed=0, V_list=(4, 8))
    assert rep.passed
    assert rep.aggregate["max_ratio"] <= rep.aggregate["threshold"]
    rep4 = run("lemma4", seed=0, V_list=(4, 6))
    assert any("lemma4" in note for note in rep4.notes)
    rep6 = run("lemma6", seed=0, V_list=(4,), field_max=700)
    assert all(rec["field_size"] <= 700 for rec in rep6.records)


def test_energy_campaigns():
    rep = run("lemma7", seed=0)
    assert rep.passed
    for rec in rep.records:
        assert rec["count"] >= rec["N"]
    rep8 = run("lemma8", seed=0)
    assert rep8.passed
    assert rep8.aggregate["max_ratio"] <= rep8.aggregate["threshold"]
    rep9 = run("lemma9", seed=0)
    assert rep9.passed
    assert any("lemma9" in note for note in rep9.notes)


def test_compare_exponents_values():
    table = compare_exponents(N=1000, q=10**6, d=2, r=5, delta=0.05)
    assert table["chang_epsilon"] == pytest.approx(0.0025 / 48.4, abs=1e-12)
    assert table["heath_brown_pierce_exponent"] == pytest.approx(
        (5 + 1 - 3) / (4 * 5 * (5 - 3)))
    assert table["squarefree_few_factors_exponent"] == pytest.approx(
        table["heath_brown_pierce_exponent"])
    e1 = theorem_exponent("thm1", 5, 2)
    assert table["squarefree_general_exponent"] == pytest.approx(e1)
    assert e1 > table["heath_brown_pierce_exponent"]  # weaker, as expected


def test_compare_exponents_degenerate():
    with pytest.raises(DegenerateDenominator):
        compare_exponents(N=100, q=1000, d=2, r=3, delta=0.05)  # r = D
    with pytest.raises(DegenerateDenominator):
        theorem_exponent("thm2", 3, 2)
    with pytest.raises(DegenerateDenominator):
        theorem_exponent("thm1", 1, 2)  # r <= D/2
    assert chang_epsilon(0.05, 2) == pytest.approx(5.1652892561983474e-05, abs=1e-15)


def test_sample_phase_poly():
    rng = SplitMix64(9)
    F = sample_phase_poly(rng, 2, 3)
    assert F.degree == 3
    top = [c for e, c in F.terms if sum(e) == 3]
    assert max(abs(c) for c in top) >= 1e-3
    again = sample_phase_poly(SplitMix64(9), 2, 3)
    assert again.terms == F.terms


def test_point_hash_is_stable():
    a = point_hash(5, 1, 2, 3).next_float()
    b = point_hash(5, 1, 2, 3).next_float()
    c = point_hash(5, 1, 2, 4).next_float()
    assert a == b
    assert a != c


def test_report_emission_from_campaign(tmp_path):
    out = tmp_path / "r.json"
    csv = tmp_path / "r.csv"
    rep = run("lemma7", seed=0, out=str(out), csv=str(csv))
    assert out.read_bytes() == rep.to_json_bytes()
    assert csv.read_text().count("\n") == len(rep.records) + 1
