"""Finitely supported elements of the discrete group algebra with exact
rational coefficients.

Coefficients are stored as integer numerators over one common denominator,
so convolution runs on integers; the public view is a map to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

from .exact import Enclosure, Rational, root_enclosure
from .groups import BackendMismatch, GeneratingSet, GroupBackend, GroupError, validate_symmetric


class SupportBudgetExceeded(MemoryError):
    def __init__(self, completed: int, budget: int) -> None:
        super().__init__(f"support budget {budget} exceeded; largest completed power {completed}")
        self.completed = completed


class AlgebraElement:
    __slots__ = ("group", "num", "den")

    def __init__(self, group: GroupBackend, num: Mapping, den: int = 1) -> None:
        if den <= 0:
            raise ValueError("denominator must be positive")
        num = {g: int(a) for g, a in num.items() if a}
        d = reduce(gcd, num.values(), den)
        if d > 1:
            num = {g: a // d for g, a in num.items()}
            den //= d
        self.group = group
        self.num = num
        self.den = den

    # -- construction -------------------------------------------------------
    @classmethod
    def from_coefficients(cls, group: GroupBackend, coeffs: Mapping) -> AlgebraElement:
        fr = {g: Fraction(c) for g, c in coeffs.items() if c}
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr.values()), 1)
        return cls(group, {g: c.numerator * (den // c.denominator) for g, c in fr.items()}, den)

    @classmethod
    def delta(cls, group: GroupBackend, form=None, coeff: Rational = 1) -> AlgebraElement:
        form = group.identity_form if form is None else form
        return cls.from_coefficients(group, {form: coeff})

    # -- views --------------------------------------------------------------
    @property
    def backend_id(self) -> str:
        return self.group.backend_id

    @property
    def coefficients(self) -> dict:
        return {g: Fraction(a, self.den) for g, a in self.num.items()}

    @property
    def support(self) -> set:
        return set(self.num)

    def coeff(self, form) -> Fraction:
        return Fraction(self.num.get(form, 0), self.den)

    def l1_norm(self) -> Fraction:
        return Fraction(sum(abs(a) for a in self.num.values()), self.den)

    def mass(self, forms: Iterable) -> Fraction:
        """Sum of coefficients over ``forms``."""
        num = self.num
        return Fraction(sum(num.get(g, 0) for g in forms), self.den)

    def restrict(self, forms: Iterable) -> AlgebraElement:
        keep = set(forms)
        return AlgebraElement(self.group, {g: a for g, a in self.num.items() if g in keep}, self.den)

    def is_nonnegative(self) -> bool:
        return all(a > 0 for a in self.num.values())

    def __len__(self) -> int:
        return len(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.backend_id == other.backend_id and self.den == other.den and self.num == other.num

    __hash__ = None

    def __repr__(self) -> str:
        terms = sorted(self.coefficients.items(), key=lambda kv: self.group.format_form(kv[0]))
        body = " + ".join(f"{c}*{self.group.format_form(g)}" for g, c in terms[:8])
        more = f" + ... ({len(terms)} terms)" if len(terms) > 8 else ""
        return f"AlgebraElement({body or '0'}{more})"

    # -- linear structure ---------------------------------------------------
    def _same(self, other: AlgebraElement) -> None:
        if self.backend_id != other.backend_id:
            raise BackendMismatch(f"{self.backend_id} vs {other.backend_id}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same(other)
        den = self.den * other.den // gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        acc = {g: a * fa for g, a in self.num.items()}
        for g, b in other.num.items():
            acc[g] = acc.get(g, 0) + b * fb
        return AlgebraElement(self.group, acc, den)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.group, {g: -a for g, a in self.num.items()}, self.den)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: Rational) -> AlgebraElement:
        c = Fraction(c)
        return AlgebraElement(self.group, {g: a * c.numerator for g, a in self.num.items()},
                              self.den * c.denominator)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return convolve(self, other)


def convolve(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """(x*y)(g) = sum_h x(h) y(h^-1 g), i.e. sum over pairs with h k = g."""
    x._same(y)
    return AlgebraElement(x.group, x.group.convolve_ints(x.num, y.num), x.den * y.den)


def involution(x: AlgebraElement) -> AlgebraElement:
    """x*(g) = x(g^-1); conjugation is trivial on rational coefficients."""
    inv = x.group.inv_forms
    return AlgebraElement(x.group, {inv(g): a for g, a in x.num.items()}, x.den)


def powers(x: AlgebraElement, n: int, support_budget: int | None = None) -> list[AlgebraElement]:
    """[x^0 = delta_e, x^1, ..., x^n] by iterated convolution."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = [AlgebraElement.delta(x.group)]
    for k in range(1, n + 1):
        nxt = x if k == 1 else convolve(out[-1], x)
        if support_budget is not None and len(nxt) > support_budget:
            raise SupportBudgetExceeded(k - 1, support_budget)
        out.append(nxt)
    return out


def power(x: AlgebraElement, n: int, support_budget: int | None = None) -> AlgebraElement:
    if n < 1:
        raise ValueError("power needs n >= 1")
    return powers(x, n, support_budget)[-1]


def witness_element(G: GroupBackend, S: GeneratingSet) -> AlgebraElement:
    """f = (1/|S|) chi_S for a symmetric set with at least two elements."""
    if S.backend_id != G.backend_id:
        raise BackendMismatch("generating set belongs to another backend")
    if len(S) < 2:
        raise GroupError("witness needs |S| >= 2")
    if not validate_symmetric(G, S):
        raise GroupError("witness needs a symmetric set")
    return AlgebraElement(G, {g: 1 for g in S.forms}, len(S))


def spectral_radius_upper(x: AlgebraElement, m: int, support_budget: int | None = None,
                          pows: list[AlgebraElement] | None = None) -> Enclosure:
    """Enclosure of min_{1<=n<=m} ||x^n||^(1/n); its upper end bounds R(x)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not x.num:
        raise ValueError("zero element")
    if pows is None or len(pows) <= m:
        pows = powers(x, m, support_budget)
    best: Enclosure | None = None
    for n in range(1, m + 1):
        enc = root_enclosure(pows[n].l1_norm(), n)
        if best is None or enc.hi < best.hi:
            best = Enclosure(min(best.lo, enc.lo) if best else enc.lo, enc.hi)
        elif enc.lo < best.lo:
            best = Enclosure(enc.lo, best.hi)
    return best


def to_lines(x: AlgebraElement) -> list[str]:
    """Serialize as ``word numerator denominator`` lines, sorted by word."""
    rows = []
    for g, c in x.coefficients.items():
        rows.append((x.group.format_form(g), c.numerator, c.denominator))
    rows.sort()
    return [f"{w} {a} {b}" for w, a, b in rows]


def from_lines(G: GroupBackend, lines: Iterable[str]) -> AlgebraElement:
    coeffs = {}
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'word numerator denominator'")
        g = G.parse_word(parts[0]).form
        coeffs[g] = coeffs.get(g, 0) + Fraction(int(parts[1]), int(parts[2]))
    return AlgebraElement.from_coefficients(G, coeffs)
