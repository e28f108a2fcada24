import random
from fractions import Fraction

import pytest

from hermcert.criteria import Verdict
from hermcert.tree import (
    TreeSpec,
    double_coset_measure,
    sphere_size,
    sphere_size_recursive,
    tree_criterion,
    tree_growth_lower,
)


def test_sphere_sizes():
    assert sphere_size(TreeSpec.of([3]), 4) == 24
    assert sphere_size(TreeSpec.of([3, 4]), 2) == 9
    assert {sphere_size(TreeSpec.of([2]), n) for n in range(1, 20)} == {2}
    with pytest.raises(ValueError):
        sphere_size(TreeSpec.of([3]), 0)


def test_measures_and_growth():
    assert double_coset_measure(TreeSpec.of([3]), 1) == 3
    assert double_coset_measure(TreeSpec.of([3, 4]), 2) == 54
    assert double_coset_measure(TreeSpec.of([2]), 5) == 2
    assert tree_growth_lower(TreeSpec.of([3])) == 2
    assert tree_growth_lower(TreeSpec.of([3, 4])) == 6
    for q in range(1, 10):
        assert tree_growth_lower(TreeSpec.of([q + 1])) == q


def test_growth_is_limit_of_measures():
    t = TreeSpec.of([3, 5, 4])
    g = tree_growth_lower(t)
    for n in range(1, 10):
        assert double_coset_measure(t, n) == t.degree(0) * (t.degree(0) - 1) ** (n - 1) * (4 * 3) ** n
        assert double_coset_measure(t, n + 1) == g * double_coset_measure(t, n)


def test_criterion_examples():
    v = tree_criterion(TreeSpec.of([3]))
    assert (v.measure, v.growth_lower, v.verdict) == (3, 2, Verdict.CERTIFIED)
    v = tree_criterion(TreeSpec.of([3, 4]))
    assert (v.measure, v.growth_lower) == (9, 6)
    assert v.two_thirds_equality and Fraction(2, 3) * 9 == 6
    v = tree_criterion(TreeSpec.of([2]))
    assert v.verdict is Verdict.INCONCLUSIVE and not v.criterion.conditions["degree_at_least_3"]


def test_recursion_matches_product():
    rng = random.Random(5)
    for _ in range(200):
        t = TreeSpec.of([rng.randint(2, 12) for _ in range(rng.randint(1, 6))])
        for n in range(1, 65):
            assert sphere_size(t, n) == sphere_size_recursive(t, n)


def test_two_thirds_bound():
    rng = random.Random(6)
    for _ in range(500):
        t = TreeSpec.of([rng.randint(3, 12) for _ in range(rng.randint(1, 4))])
        lower, mu = tree_growth_lower(t), double_coset_measure(t, 1)
        assert 3 * lower >= 2 * mu
        assert (3 * lower == 2 * mu) == (t.degree(0) == 3)
        v = tree_criterion(t)
        assert v.verdict is Verdict.CERTIFIED and all(v.criterion.conditions.values())


def test_parse():
    assert TreeSpec.parse("degrees=3,4 k=2") == TreeSpec((3, 4), 2)
    assert TreeSpec.parse("degrees=5") == TreeSpec((5,), 1)
    assert str(TreeSpec.parse("degrees=3,4 k=2")) == "degrees=3,4 k=2"
    for bad in ("degrees=3,4 k=3", "degrees=1", "k=2", "degrees=3 x=1", "degrees=a"):
        with pytest.raises(ValueError):
            TreeSpec.parse(bad)
