import math
from fractions import Fraction

import numpy as np
import pytest

from hermcert.exact import EXACT, PERRON, Enclosure
from hermcert.groups import FreeGroup, FreeProductCyclic, cyclic_group, parse_generators
from hermcert.growth import (
    MemoryBudgetExceeded,
    SubmultiplicativityError,
    check_submultiplicative,
    enumerate_balls,
    exact_growth,
    growth_estimate,
    omega_sigma_agreement,
    theta_index,
)
from hermcert.perron import build_cone_automaton, perron_enclosure, strongly_connected_components

PHI = (1 + math.sqrt(5)) / 2


def modular(gens="a,ab,bba"):
    M = FreeProductCyclic([2, 3])
    return M, parse_generators(M, gens)


def test_free_group_spheres_and_balls():
    F = FreeGroup(2)
    S = parse_generators(F, "standard")
    t = enumerate_balls(F, S, 12, store_limit=3)
    assert t.sphere_sizes[1:] == [4 * 3 ** (n - 1) for n in range(1, 13)]
    assert t.ball_sizes[1:4] == [5, 17, 53]
    assert len(t.sphere(3)) == 36 and len(t.ball(2)) == 17
    with pytest.raises(KeyError):
        t.sphere(4)
    est = exact_growth(F, S, table=t)
    assert est.exact_value == Enclosure.point(3) and est.provenance == EXACT


def test_integers_and_literal_powers():
    Z = FreeGroup(1)
    S = parse_generators(Z, "standard")
    t = enumerate_balls(Z, S, 10, literal_powers=True)
    assert t.sphere_sizes[1:] == [2] * 10
    assert t.ball_sizes[10] == 21
    assert t.power_sizes == list(range(1, 12))
    assert growth_estimate(t).per_n_ball_roots[10] == pytest.approx(21 ** 0.1)
    assert check_submultiplicative(t)["ok"]


def test_identity_in_generating_set_warns(caplog):
    Z = FreeGroup(1)
    S = parse_generators(Z, "1,a,a'")
    t = enumerate_balls(Z, S, 5, literal_powers=True)
    assert "identity" in caplog.text
    assert t.power_sizes[1:] == t.ball_sizes[1:]  # S^n is the ball when e is in S


def test_modular_group_growth():
    M, S = modular()
    t = enumerate_balls(M, S, 25)
    est = growth_estimate(t)
    assert abs(est.ratio_estimate - PHI) < 0.01
    exact = exact_growth(M, S, table=t)
    assert exact.provenance == PERRON
    assert exact.exact_value.contains(PHI) and exact.exact_value.width < Fraction(1, 10**6)
    # the automaton reproduces enumeration beyond the depth it was built from
    assert exact.automaton.sphere_counts(25) == t.sphere_sizes


def test_sqrt2_generating_set():
    M, S = modular("a,b,bb")
    exact = exact_growth(M, S)
    assert exact.exact_value.contains(math.sqrt(2))
    assert exact.exact_value.lo ** 2 <= 2 <= exact.exact_value.hi ** 2


def test_automaton_predicts_large_radius():
    M, S = modular()
    auto = build_cone_automaton(M, S)
    counts = auto.sphere_counts(30)
    assert counts[30] == 4356618
    fib = enumerate_balls(M, S, 16).sphere_sizes
    assert counts[:17] == fib


def test_finite_group_has_growth_one():
    Z5 = cyclic_group(5)
    S = parse_generators(Z5, "1,4")
    t = enumerate_balls(Z5, S, 4)
    assert t.sphere_sizes == [1, 2, 2, 0, 0]
    assert exact_growth(Z5, S, table=t).exact_value == Enclosure.point(1)


def test_nonsymmetric_free_semigroup():
    F = FreeGroup(2)
    S = parse_generators(F, "a,b")
    t = enumerate_balls(F, S, 8)
    assert t.sphere_sizes[1:] == [2**n for n in range(1, 9)]
    assert exact_growth(F, S, table=t) is None


def test_memory_budget():
    F = FreeGroup(2)
    S = parse_generators(F, "standard")
    with pytest.raises(MemoryBudgetExceeded) as info:
        enumerate_balls(F, S, 20, memory_budget=200_000)
    assert 1 <= info.value.table.radius_max < 20


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_submultiplicative_tables(rank):
    F = FreeGroup(rank)
    t = enumerate_balls(F, parse_generators(F, "standard"), 8, literal_powers=True)
    assert check_submultiplicative(t)["ok"]
    M, S = modular()
    assert check_submultiplicative(enumerate_balls(M, S, 14, literal_powers=True))["ok"]


def test_submultiplicativity_violation_detected():
    F = FreeGroup(2)
    t = enumerate_balls(F, parse_generators(F, "standard"), 5)
    t.ball_sizes[4] = 10**6
    with pytest.raises(SubmultiplicativityError):
        check_submultiplicative(t)


def test_agreement_and_theta():
    M, S = modular()
    agree = omega_sigma_agreement(enumerate_balls(M, S, 25), 0.01)
    assert agree["agree"] and agree["ratio_gap"] < 1e-4
    assert theta_index(Fraction(3), 4) == Fraction(1)
    assert theta_index(Enclosure.point(1), 3) == Enclosure.point(0)
    with pytest.raises(ValueError):
        theta_index(2, 2)


@pytest.mark.parametrize("M", [
    [[1, 1], [1, 0]],
    [[0, 2, 0], [0, 0, 1], [1, 1, 0]],
    [[2, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 3], [0, 0, 1, 0]],
    [[0, 1], [0, 0]],
])
def test_perron_enclosure_matches_numpy(M):
    enc = perron_enclosure(M)
    rho = max(abs(np.linalg.eigvals(np.array(M, dtype=float))))
    assert float(enc.lo) - 1e-12 <= rho <= float(enc.hi) + 1e-12
    assert enc.width < Fraction(1, 10**9)


def test_scc():
    comps = strongly_connected_components([[0, 1, 0], [1, 0, 0], [0, 1, 0]])
    assert sorted(map(sorted, comps)) == [[0, 1], [2]]
