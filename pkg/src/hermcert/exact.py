"""Exact rational helpers: enclosures and bracketed n-th roots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

# Provenance tags carried by growth values and enclosures.
EXACT = "exact-closed-form"
PERRON = "perron-enclosure"
PAPER_CONSTANT = "paper-constant"
USER_ASSERTED = "user-asserted"
EMPIRICAL = "empirical"

RIGOROUS_PROVENANCE = frozenset({EXACT, PERRON, PAPER_CONSTANT, USER_ASSERTED})

ROOT_BITS = 30  # 2**-30 < 1e-9


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi] with a provenance tag."""

    lo: Fraction
    hi: Fraction
    provenance: str = EXACT

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Rational, provenance: str = EXACT) -> Enclosure:
        return cls(Fraction(value), Fraction(value), provenance)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: float | Rational) -> bool:
        if isinstance(x, float):
            return float(self.lo) <= x <= float(self.hi)
        return self.lo <= x <= self.hi

    def scale(self, factor: Rational) -> Enclosure:
        factor = Fraction(factor)
        if factor < 0:
            raise ValueError("negative scale factor")
        return Enclosure(self.lo * factor, self.hi * factor, self.provenance)

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __str__(self) -> str:
        if self.is_exact:
            return fmt_fraction(self.lo)
        return f"[{fmt_fraction(self.lo)},{fmt_fraction(self.hi)}]"


def fmt_fraction(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def iroot(x: int, n: int) -> int:
    """Floor of the real n-th root of a nonnegative integer."""
    if x < 0 or n < 1:
        raise ValueError("iroot needs x >= 0 and n >= 1")
    if x < 2 or n == 1:
        return x
    # Newton from an overestimate; converges monotonically downward.
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        s = ((n - 1) * r + x // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def exact_root(q: Fraction, n: int) -> Fraction | None:
    """Return q**(1/n) if it is rational, else None."""
    a, b = q.numerator, q.denominator
    if a < 0:
        return None
    ra, rb = iroot(a, n), iroot(b, n)
    if ra ** n == a and rb ** n == b:
        return Fraction(ra, rb)
    return None


def root_enclosure(q: Rational, n: int, bits: int = ROOT_BITS) -> Enclosure:
    """Rational bracket of q**(1/n) of width at most 2**-bits."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of a negative number")
    exact = exact_root(q, n)
    if exact is not None:
        return Enclosure.point(exact)
    scale = 1 << bits
    t = (q.numerator * scale ** n) // q.denominator
    r = iroot(t, n)
    return Enclosure(Fraction(r, scale), Fraction(r + 1, scale))
