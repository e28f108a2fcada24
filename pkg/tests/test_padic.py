import itertools
from fractions import Fraction

import pytest

from hermcert.criteria import Verdict
from hermcert.padic import (
    NotPrime,
    closed_form_measure,
    direct_measure,
    dominant_shifted,
    corner_signature,
    gl_criterion,
    gl_growth_lower,
    hecke_measure,
    inequality_scan,
    inequality_value,
    inner_rho,
    is_prime,
    nu_lambda,
    nu_m,
    sl_measure,
)

GRID = [(n, p) for n in range(1, 6) for p in (2, 3, 5, 7)]


def test_nu():
    t = Fraction(1, 5)
    assert nu_m(0, t) == 1 and nu_m(1, t) == 1
    assert nu_m(2, t) == Fraction(6, 5)
    assert nu_lambda((2, 1, 0), t) == 1
    assert nu_lambda((0, 0), t) == Fraction(6, 5)
    for n in range(3, 7):
        lam = (4,) + (2,) * (n - 2) + (0,)
        assert nu_lambda(lam, t) == nu_m(n - 2, t)
    with pytest.raises(ValueError):
        nu_lambda((1, -1), t)
    # cancelled form agrees with the quotient away from t = 1
    for m in range(6):
        q = Fraction(1, 3)
        prod = Fraction(1)
        for i in range(1, m + 1):
            prod *= (1 - q**i) / (1 - q)
        assert nu_m(m, q) == prod


def test_inner_rho():
    for n in range(2, 8):
        assert inner_rho(corner_signature(n)) == n - 1
        assert inner_rho((3,) * n) == 0
    assert inner_rho((1, 0)) == Fraction(1, 2)
    for lam in itertools.product(range(-2, 3), repeat=4):
        assert (2 * inner_rho(lam)).denominator == 1


def test_hecke_examples():
    assert hecke_measure(2, 5, (1, -1)).value == 30
    assert hecke_measure(2, 2, (1, -1)).value == 6
    for n, p in GRID:
        assert hecke_measure(n, p, (0,) * n).value == 1
    # (1, 0, 0): lines in F_p^3
    assert hecke_measure(3, 5, (1, 0, 0)).value == 31
    with pytest.raises(NotPrime):
        hecke_measure(2, 4, (1, -1))
    with pytest.raises(NotPrime):
        hecke_measure(2, 2**31 + 11, (1, -1))
    with pytest.raises(ValueError):
        hecke_measure(3, 5, (1, -1))


@pytest.mark.parametrize("n,p", GRID)
def test_integrality_shift_permutation(n, p):
    for lam in itertools.product(range(-3, 4), repeat=n):
        m = hecke_measure(n, p, lam).value
        assert m >= 1
        if n <= 3:
            for c in range(-2, 3):
                assert hecke_measure(n, p, [x + c for x in lam]).value == m
            for perm in itertools.permutations(lam):
                assert hecke_measure(n, p, perm).value == m
        else:
            assert hecke_measure(n, p, [x + 2 for x in lam]).value == m
            assert hecke_measure(n, p, lam[::-1]).value == m
            assert hecke_measure(n, p, lam[1:] + lam[:1]).value == m


def test_integer_form_matches_direct_formula():
    for n, p in GRID:
        for lam in itertools.product(range(-2, 3), repeat=min(n, 4)):
            lam = lam + (0,) * (n - len(lam))
            assert hecke_measure(n, p, lam).value == direct_measure(n, p, dominant_shifted(lam))


def test_closed_form_agreement():
    for k in range(1, 7):
        for n in range(2, 7):
            for p in (2, 3, 5):
                assert hecke_measure(n, p, corner_signature(n, k)).value == closed_form_measure(n, p, k)


def test_growth_lower():
    assert gl_growth_lower(2, 5).value == 25
    assert gl_growth_lower(3, 5).value == 625
    g = gl_growth_lower(2, 2, k_max=8)
    assert g.value == 4
    # mu(K pi^(k lam) K)^(1/k) tends to p^(2(n-1)) from above
    assert all(r.lo >= 4 for r in g.per_k_roots)


def test_criterion_examples():
    v = gl_criterion(2, 5)
    assert v.inequality == Fraction(64, 125) and v.verdict is Verdict.CERTIFIED
    assert (v.measure, v.omega_lower) == (30, 25)
    assert gl_criterion(2, 2).inequality == Fraction(1, 8)
    v = gl_criterion(10, 2)
    assert v.inequality < 0 and v.verdict is Verdict.INCONCLUSIVE
    assert inequality_value(3, 3) == Fraction(8, 243)
    assert inequality_value(4, 3) == Fraction(-136, 2187)


def test_scan_and_monotone_region():
    res = inequality_scan(range(2, 11), (5, 7, 11, 13))
    assert res.claim_holds and not res.failures
    assert all(r.certified for r in res.rows)
    primes = [p for p in range(2, 60) if is_prime(p)]
    for n in range(2, 12):
        cert = [gl_criterion(n, p).verdict is Verdict.CERTIFIED for p in primes]
        first = cert.index(True)
        assert all(cert[first:])


def test_sl_measure():
    assert sl_measure(2, 5, (1, -1)).value == 30
    with pytest.raises(ValueError, match="valuation"):
        sl_measure(2, 5, (1, 0))
    assert sl_measure(3, 5, (2, -1, -1)).value == hecke_measure(3, 5, (2, -1, -1)).value
    for lam in itertools.product(range(-2, 3), repeat=3):
        if sum(lam) == 0:
            assert sl_measure(3, 3, lam).value == hecke_measure(3, 3, lam).value
