"""Growth thresholds for non-Hermitianity on measure-level data.

All three criteria compare a rigorous lower bound on a growth rate with a
threshold built from Haar measures: the general one, its discrete form
(threshold |S|/2) and the double-coset form (threshold mu(KgK)/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exact import PAPER_CONSTANT, RIGOROUS_PROVENANCE, USER_ASSERTED, Enclosure, Rational


class Verdict(str, Enum):
    CERTIFIED = "CERTIFIED"
    EQUALITY_BOUNDARY = "EQUALITY_BOUNDARY"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


_RANK = {Verdict.INCONCLUSIVE: 0, Verdict.EQUALITY_BOUNDARY: 1, Verdict.CERTIFIED: 2}


def verdict_rank(v: Verdict) -> int:
    return _RANK[v]


@dataclass(frozen=True)
class CriterionVerdict:
    verdict: Verdict
    threshold: Fraction
    omega_lower: Enclosure
    margin: Fraction
    provenance: str
    conditions: dict[str, bool] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


def _as_enclosure(omega, provenance: str | None = None) -> Enclosure:
    if isinstance(omega, Enclosure):
        return omega
    return Enclosure.point(Fraction(omega), provenance or USER_ASSERTED)


def compare(omega_lower: Enclosure, threshold: Fraction, conditions: dict[str, bool] | None = None,
            notes: tuple[str, ...] = ()) -> CriterionVerdict:
    """Verdict from the lower end of omega against a threshold.

    Any failed side condition forces INCONCLUSIVE.
    """
    conditions = dict(conditions or {})
    margin = omega_lower.lo - threshold
    if not all(conditions.values()):
        v = Verdict.INCONCLUSIVE
    elif margin > 0:
        v = Verdict.CERTIFIED
    elif margin == 0:
        v = Verdict.EQUALITY_BOUNDARY
    else:
        v = Verdict.INCONCLUSIVE
    if omega_lower.provenance not in RIGOROUS_PROVENANCE and v is Verdict.CERTIFIED:
        v = Verdict.INCONCLUSIVE
        notes = notes + (f"growth provenance {omega_lower.provenance} cannot certify",)
    return CriterionVerdict(v, threshold, omega_lower, margin, omega_lower.provenance, conditions, notes)


@dataclass(frozen=True)
class CriterionInput:
    """Measure data: integral of Delta^(-1/2) over S, mu(K), inf of Delta^(-1/2)
    over S, and a growth lower bound. ``mu_S`` is optional and only used for
    validation; with ``unimodular_flag`` the integral must equal mu(S)."""

    integral_S_delta: Fraction
    mu_K: Fraction
    inf_delta_S: Fraction
    omega_lower: Enclosure
    unimodular_flag: bool = False
    mu_S: Fraction | None = None

    def __post_init__(self) -> None:
        for name in ("integral_S_delta", "mu_K", "inf_delta_S"):
            val = Fraction(getattr(self, name))
            if val <= 0:
                raise ValueError(f"{name} must be positive, got {val}")
            object.__setattr__(self, name, val)
        object.__setattr__(self, "omega_lower", _as_enclosure(self.omega_lower))
        if self.mu_S is not None:
            mu_S = Fraction(self.mu_S)
            if mu_S <= 0:
                raise ValueError("mu_S must be positive")
            object.__setattr__(self, "mu_S", mu_S)
            if self.inf_delta_S > self.integral_S_delta / mu_S:
                raise ValueError("inf of Delta^(-1/2) exceeds its mean over S")
        if self.unimodular_flag:
            if self.inf_delta_S != 1:
                raise ValueError("unimodular data needs inf Delta^(-1/2) = 1")
            if self.mu_S is not None and self.mu_S != self.integral_S_delta:
                raise ValueError("unimodular data needs integral = mu(S)")
        if self.omega_lower.provenance not in RIGOROUS_PROVENANCE:
            raise ValueError(f"omega_lower provenance {self.omega_lower.provenance} is not rigorous")

    @classmethod
    def discrete(cls, set_size: int, omega_lower) -> CriterionInput:
        """Counting measure, K = {e}, Delta = 1."""
        return cls(Fraction(set_size), Fraction(1), Fraction(1), _as_enclosure(omega_lower),
                   True, Fraction(set_size))

    def rescaled(self, lam: Rational) -> CriterionInput:
        """Same data under Haar measure multiplied by ``lam``."""
        lam = Fraction(lam)
        return CriterionInput(self.integral_S_delta * lam, self.mu_K * lam, self.inf_delta_S,
                              self.omega_lower, self.unimodular_flag,
                              None if self.mu_S is None else self.mu_S * lam)


def general_threshold(data: CriterionInput) -> Fraction:
    return data.integral_S_delta / (2 * data.mu_K * data.inf_delta_S)


def general_criterion(data: CriterionInput) -> CriterionVerdict:
    return compare(data.omega_lower, general_threshold(data))


def discrete_criterion(set_size: int, omega_lower) -> CriterionVerdict:
    """Certify when omega(S) > |S|/2."""
    if set_size < 2:
        raise ValueError("set_size must be >= 2")
    return compare(_as_enclosure(omega_lower), Fraction(set_size, 2))


def double_coset_criterion(mu_KgK, omega_lower, symmetric: bool,
                           symmetry_note: str = "asserted by caller",
                           extra_conditions: dict[str, bool] | None = None) -> CriterionVerdict:
    """Certify when KgK is symmetric, mu(KgK) > 1 and omega(KgK) > mu(KgK)/2.

    ``extra_conditions`` lets callers record further hypotheses; any False
    entry makes the verdict INCONCLUSIVE.
    """
    mu = Fraction(mu_KgK)
    if mu < 1:
        raise ValueError("mu(KgK) must be >= 1 with mu(K) = 1")
    conditions = {"symmetric": bool(symmetric), "measure_above_one": mu > 1}
    conditions.update(extra_conditions or {})
    return compare(_as_enclosure(omega_lower), mu / 2, conditions,
                   (f"symmetry: {symmetry_note}",))


ADIAN_RATE = Fraction(29, 10)


def burnside_check(adian_rate: Rational = ADIAN_RATE) -> CriterionVerdict:
    """Free Burnside groups on two generators with the four-element S.

    The growth bound is Adian's published constant, taken as given.
    """
    omega = Enclosure.point(Fraction(adian_rate), PAPER_CONSTANT)
    v = discrete_criterion(4, omega)
    return CriterionVerdict(v.verdict, v.threshold, v.omega_lower, v.margin, v.provenance,
                            v.conditions, ("growth bound is Adian's constant, not recomputed",))
