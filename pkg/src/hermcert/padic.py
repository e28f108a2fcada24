"""Double-coset measures in GL_n(Q_p) and SL_n(Q_p).

With mu(K) = 1 for K = GL_n(Z_p) and a dominant signature lambda,

    mu(K pi^lambda K) = p^(2<lambda,rho>) nu_n(1/p) / nu_lambda(1/p)

(Macdonald's formula), where rho = ((n-1)/2, (n-3)/2, ..., (1-n)/2).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .criteria import CriterionVerdict, Verdict, double_coset_criterion
from .exact import EXACT, Enclosure, root_enclosure

PRIME_LIMIT = 2**31


class NotPrime(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, isqrt(p) + 1, 2))


def _check_prime(p: int) -> None:
    if p >= PRIME_LIMIT:
        raise NotPrime(f"p = {p} is beyond the supported range (< 2^31)")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def nu_m(m: int, t) -> Fraction:
    """prod_{i=1}^m (1 - t^i)/(1 - t), evaluated as prod (1 + t + ... + t^(i-1))."""
    if m < 0:
        raise ValueError("m must be >= 0")
    t = Fraction(t)
    out = Fraction(1)
    geom = Fraction(0)
    power = Fraction(1)
    for _ in range(m):
        geom += power   # 1 + t + ... + t^(i-1)
        power *= t
        out *= geom
    return out


def nu_lambda(lam: Sequence[int], t) -> Fraction:
    """Product of nu_{m_i}(t) over the multiplicities m_i of each value i >= 0."""
    if any(x < 0 for x in lam):
        raise ValueError("signature entries must be >= 0; shift first")
    out = Fraction(1)
    for mult in Counter(lam).values():
        out *= nu_m(mult, t)
    return out


def inner_rho(lam: Sequence[int]) -> Fraction:
    n = len(lam)
    return sum((Fraction(x * (n - 1 - 2 * i), 2) for i, x in enumerate(lam)), Fraction(0))


@dataclass(frozen=True)
class HeckeMeasure:
    value: int
    n: int
    p: int
    signature: tuple[int, ...]
    normalized: tuple[int, ...] = field(default=())
    notes: tuple[str, ...] = ()


def dominant_shifted(lam: Sequence[int]) -> tuple[int, ...]:
    """Sort decreasingly and shift so the smallest entry is 0.

    Permutation matrices lie in K and central elements only translate cosets,
    so neither step changes the double coset measure.
    """
    lam = sorted((int(x) for x in lam), reverse=True)
    low = lam[-1]
    return tuple(x - low for x in lam)


def direct_measure(n: int, p: int, lam: Sequence[int]) -> Fraction:
    """The formula evaluated term by term in rationals, for a dominant shifted lambda."""
    t = Fraction(1, p)
    two_rho = 2 * inner_rho(lam)
    return Fraction(p) ** int(two_rho) * nu_m(n, t) / nu_lambda(lam, t)


@lru_cache(maxsize=None)
def _q_factorial(m: int, p: int) -> int:
    """prod_{i=1}^m (1 + p + ... + p^(i-1)); nu_m(1/p) is this over p^(m(m-1)/2)."""
    out, geom = 1, 0
    for i in range(m):
        geom += p**i
        out *= geom
    return out


def _evaluate(n: int, p: int, lam: tuple[int, ...]) -> Fraction:
    # integer form: p^E * [n]_p! / prod_j [m_j]_p!
    mults = Counter(lam).values()
    twice = sum(x * (n - 1 - 2 * i) for i, x in enumerate(lam))  # 2<lam, rho>
    e = twice - n * (n - 1) // 2 + sum(m * (m - 1) // 2 for m in mults)
    num = _q_factorial(n, p) * p ** max(e, 0)
    den = p ** max(-e, 0)
    for m in mults:
        den *= _q_factorial(m, p)
    return Fraction(num, den)


def hecke_measure(n: int, p: int, lam: Sequence[int]) -> HeckeMeasure:
    if n < 1 or len(lam) != n:
        raise ValueError(f"signature must have n = {n} >= 1 entries")
    _check_prime(p)
    norm = dominant_shifted(lam)
    value = _evaluate(n, p, norm)
    if value.denominator != 1 or value < 1:
        raise ArithmeticError(f"measure {value} is not a positive integer")
    return HeckeMeasure(int(value), n, p, tuple(int(x) for x in lam), norm)


def closed_form_measure(n: int, p: int, k: int) -> Fraction:
    """mu(K pi^(k(1,0,...,0,-1)) K) = p^(2k(n-1)) (1-p^-(n-1))(1-p^-n)/(1-p^-1)^2."""
    q = Fraction(1, p)
    return Fraction(p) ** (2 * k * (n - 1)) * (1 - q ** (n - 1)) * (1 - q ** n) / (1 - q) ** 2


def corner_signature(n: int, k: int = 1) -> tuple[int, ...]:
    """k * (1, 0, ..., 0, -1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return (k,) + (0,) * (n - 2) + (-k,)


@dataclass(frozen=True)
class GrowthLower:
    value: int
    per_k_roots: tuple[Enclosure, ...]


def gl_growth_lower(n: int, p: int, k_max: int = 6) -> GrowthLower:
    """p^(2(n-1)), with mu(K pi^(k lambda) K)^(1/k) for k = 1..k_max."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_prime(p)
    roots = tuple(root_enclosure(hecke_measure(n, p, corner_signature(n, k)).value, k)
                  for k in range(1, k_max + 1))
    return GrowthLower(p ** (2 * (n - 1)), roots)


def inequality_value(n: int, p: int) -> Fraction:
    """2(1 - 1/p)^2 - (1 - p^-(n-1))(1 - p^-n)."""
    q = Fraction(1, p)
    return 2 * (1 - q) ** 2 - (1 - q ** (n - 1)) * (1 - q ** n)


@dataclass(frozen=True)
class GLVerdict:
    n: int
    p: int
    inequality: Fraction
    measure: int
    omega_lower: int
    criterion: CriterionVerdict

    @property
    def verdict(self) -> Verdict:
        return self.criterion.verdict


def gl_criterion(n: int, p: int) -> GLVerdict:
    """Decide via the sign of the inequality and via the double-coset criterion.

    The two routes are algebraically the same comparison (divide
    omega > mu/2 by p^(2(n-1))/(1-1/p)^2); disagreement is an internal error.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_prime(p)
    ineq = inequality_value(n, p)
    mu = hecke_measure(n, p, corner_signature(n)).value
    omega = p ** (2 * (n - 1))
    crit = double_coset_criterion(mu, Enclosure.point(omega, EXACT), symmetric=True,
                                  symmetry_note="K contains the permutation matrices")
    sign_route = (Verdict.CERTIFIED if ineq > 0 else
                  Verdict.EQUALITY_BOUNDARY if ineq == 0 else Verdict.INCONCLUSIVE)
    if sign_route is not crit.verdict:
        raise ArithmeticError(f"routes disagree at n={n}, p={p}: {sign_route} vs {crit.verdict}")
    return GLVerdict(n, p, ineq, mu, omega, crit)


@dataclass(frozen=True)
class ScanRow:
    n: int
    p: int
    value: Fraction

    @property
    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    @property
    def certified(self) -> bool:
        return self.value > 0


SPECIAL_CASES = ((2, 2), (2, 3), (3, 3))


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    claim_holds: bool
    failures: tuple[tuple[int, int], ...]


def inequality_scan(n_range: Iterable[int], p_range: Iterable[int],
                    include_special: bool = True) -> ScanResult:
    """Exact signs on the grid, plus the small special cases.

    The claim checked: positive for every p >= 5, and at the special cases.
    """
    ns, ps = list(n_range), list(p_range)
    pairs = [(n, p) for n in ns for p in ps]
    if include_special:
        pairs += [c for c in SPECIAL_CASES if c not in pairs]
    rows = []
    for n, p in pairs:
        if n < 2:
            raise ValueError("n must be >= 2")
        _check_prime(p)
        rows.append(ScanRow(n, p, inequality_value(n, p)))
    failures = tuple((r.n, r.p) for r in rows
                     if (r.p >= 5 or (r.n, r.p) in SPECIAL_CASES) and not r.certified)
    return ScanResult(tuple(rows), not failures, failures)


def sl_measure(n: int, p: int, lam: Sequence[int]) -> HeckeMeasure:
    """Same count in SL_n: each GL double coset meets SL_n in one double coset
    of the same measure. Needs total valuation zero."""
    total = sum(lam)
    if total != 0:
        raise ValueError(f"valuation sum {total} != 0; not an element of SL_n")
    m = hecke_measure(n, p, lam)
    return HeckeMeasure(m.value, m.n, m.p, m.signature, m.normalized,
                        ("SL_n measure equals the GL_n measure",))
