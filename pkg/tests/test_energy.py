import math

import pytest

from charsumlab import (EnergyInstance, LinearSystem, build_field,
                        cong_energy, ff_box_energy, linear_forms_energy)
from charsumlab.errors import BudgetExceeded, HypothesisViolated


def test_cong_energy_example():
    assert cong_energy(5, 0, 2, 2) == 6
    assert cong_energy(5, 0, 2, 2, method="naive") == 6


def test_cong_energy_diagonal_and_u1():
    for q, N in [(11, 3), (101, 9)]:
        assert cong_energy(q, 0, N, 1) == N
    q, M, N, U = 101, 5, 9, 7
    units = sum(1 for u in range(1, U + 1) if math.gcd(u, q) == 1)
    assert cong_energy(q, M, N, U) >= N * units


def test_cong_energy_methods_agree():
    for q, M, N, U in [(11, 0, 3, 3), (35, 2, 5, 7), (101, 10, 10, 10),
                       (97, 0, 9, 9)]:
        assert (cong_energy(q, M, N, U, method="hashed")
                == cong_energy(q, M, N, U, method="naive"))


def test_cong_energy_role_symmetry():
    # the relation is symmetric under swapping the two (n, u) pairs, so
    # the count must be (number of pairs) + 2 * (strictly ordered matches)
    q, M, N, U = 31, 3, 5, 5
    units = [u for u in range(1, U + 1) if math.gcd(u, q) == 1]
    prods = [n * u % q for n in range(M + 1, M + N + 1) for u in units]
    strictly_ordered = sum(1 for i in range(len(prods))
                           for j in range(i + 1, len(prods))
                           if prods[i] == prods[j])
    assert cong_energy(q, M, N, U) == len(prods) + 2 * strictly_ordered


def test_cong_energy_hypothesis():
    with pytest.raises(HypothesisViolated):
        cong_energy(5, 0, 3, 3)
    assert cong_energy(5, 0, 3, 3, override_hypotheses=True) >= 3 * 3


def test_cong_energy_budget():
    with pytest.raises(BudgetExceeded):
        cong_energy(10_007, 0, 50, 50, method="naive", budget=10**4)


def test_ff_box_energy():
    f25 = build_field(5, 2)
    assert ff_box_energy(f25, 1, 1) == 1
    hashed = ff_box_energy(f25, 2, 2)
    naive = ff_box_energy(f25, 2, 2, method="naive")
    assert hashed == naive
    assert hashed >= (2 * 2) ** 2
    f49 = build_field(7, 2)
    assert (ff_box_energy(f49, 2, 2) == ff_box_energy(f49, 2, 2, method="naive"))


def test_ff_box_energy_hypothesis():
    f9 = build_field(3, 2)
    with pytest.raises(HypothesisViolated):
        ff_box_energy(f9, 2, 1)
    assert ff_box_energy(f9, 2, 1, override_hypotheses=True) >= 4


def test_linear_forms_energy_identity_reduces():
    q = 101
    ident = LinearSystem(((1,),))
    for H, U in [(3, 3), (5, 7)]:
        assert (linear_forms_energy(q, ident, H, U)
                == cong_energy(q, 0, H, U))


def test_linear_forms_energy_example():
    q = 7
    L = LinearSystem(((1, 1), (0, 1)))
    assert linear_forms_energy(q, L, 1, 1) == 1
    hashed = linear_forms_energy(q, L, 2, 2)
    naive = linear_forms_energy(q, L, 2, 2, method="naive")
    assert hashed == naive
    assert hashed >= (2 * 2) ** 2


def test_linear_forms_energy_hypothesis_and_singular():
    from charsumlab.errors import SingularSystem

    q = 7
    with pytest.raises(SingularSystem):
        linear_forms_energy(q, LinearSystem(((1, 1), (2, 2))), 2, 2)
    with pytest.raises(HypothesisViolated):
        linear_forms_energy(q, LinearSystem(((1, 0), (0, 1))), 3, 2)


def test_energy_instance_dispatch():
    f25 = build_field(5, 2)
    inst = EnergyInstance(variant="congruence", q=11, M=0, N=3, U=3)
    assert inst.count() == cong_energy(11, 0, 3, 3)
    inst2 = EnergyInstance(variant="field-box", field=f25, H=2, U=2)
    assert inst2.count() == ff_box_energy(f25, 2, 2)
    inst3 = EnergyInstance(variant="linear-forms", q=7,
                           forms=LinearSystem(((1, 1), (0, 1))), H=2, U=2)
    assert inst3.count() == linear_forms_energy(7, LinearSystem(((1, 1), (0, 1))), 2, 2)
    with pytest.raises(ValueError):
        EnergyInstance(variant="nope").count()


def test_energy_is_sum_of_squared_multiplicities():
    # recount the congruence energy from the definition
    q, M, N, U = 35, 1, 5, 7
    units = [u for u in range(1, U + 1) if math.gcd(u, q) == 1]
    mult = {}
    for n in range(M + 1, M + N + 1):
        for u in units:
            c = n * u % q
            mult[c] = mult.get(c, 0) + 1
    assert cong_energy(q, M, N, U) == sum(m * m for m in mult.values())
