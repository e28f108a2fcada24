"""Two-sided capacity estimates for witness elements and the spectral
certificate.

Lower side: the mass of f^n on the sphere of radius n. Any monic p of degree
n has p(f) = f^n + (terms supported in the ball of radius n-1), so that
mass bounds ||p(f)|| from below. Upper side: the l1 distance from f^n to
the span of f^0, ..., f^(n-1), minimized over real coefficients by an exact
linear program.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraElement, powers, spectral_radius_upper
from .exact import (
    EMPIRICAL,
    PAPER_CONSTANT,
    RIGOROUS_PROVENANCE,
    USER_ASSERTED,
    Enclosure,
    Rational,
    root_enclosure,
)
from .groups import BackendMismatch, GeneratingSet, GroupError
from .growth import BallTable, GrowthEstimate
from .simplex import simplex_min

log = logging.getLogger(__name__)

NOT_HERMITIAN = "NOT_HERMITIAN"
INCONCLUSIVE = "INCONCLUSIVE"


class CertificationError(ValueError):
    """Raised when no rigorous lower bound is available to certify from."""


@dataclass
class CapacityBounds:
    degrees: list[int]
    sphere_masses: list[Fraction]
    lower_sphere_roots: list[Enclosure]
    lower_limit: Enclosure | None = None
    upper_lp_values: dict[int, Fraction] = field(default_factory=dict)
    upper_lp_roots: dict[int, Enclosure] = field(default_factory=dict)
    spectral_upper: Enclosure | None = None
    set_size: int = 0
    description: str = ""

    @property
    def lower_provenance(self) -> str | None:
        return self.lower_limit.provenance if self.lower_limit is not None else None

    def check_order(self) -> list[int]:
        """Degrees where the sphere mass exceeds the LP optimum (should be none)."""
        return [n for n, v in self.upper_lp_values.items()
                if 1 <= n <= len(self.sphere_masses) and self.sphere_masses[n - 1] > v]


def _check_witness(f: AlgebraElement, S: GeneratingSet) -> None:
    if f.backend_id != S.backend_id:
        raise BackendMismatch("witness and generating set belong to different backends")
    if len(S) < 2:
        raise GroupError("need |S| >= 2")
    if not f.is_nonnegative():
        raise GroupError("witness must be nonnegative")
    if f.support != set(S.forms):
        raise GroupError("witness support differs from S")


def sphere_mass_lower(f: AlgebraElement, S: GeneratingSet, table: BallTable, n_max: int,
                      growth: GrowthEstimate | Enclosure | None = None,
                      pows: list[AlgebraElement] | None = None) -> CapacityBounds:
    """Exact masses m_n of f^n on sphere n, their n-th roots, and the limit.

    The limit sigma/|S| is filled in only from a rigorous growth value
    (exact, Perron enclosure, or an asserted constant).
    """
    _check_witness(f, S)
    if table.backend_id != f.backend_id:
        raise BackendMismatch("ball table belongs to another backend")
    if table.store_limit < n_max:
        raise ValueError(f"table stores spheres to radius {table.store_limit}, need {n_max}")
    if pows is None or len(pows) <= n_max:
        pows = powers(f, n_max)
    masses, roots = [], []
    for n in range(1, n_max + 1):
        m = pows[n].mass(table.sphere(n))
        masses.append(m)
        roots.append(root_enclosure(m, n))
    bounds = CapacityBounds(list(range(1, n_max + 1)), masses, roots, set_size=len(S))
    omega = growth.exact_value if isinstance(growth, GrowthEstimate) else growth
    if omega is not None and omega.provenance in RIGOROUS_PROVENANCE:
        bounds.lower_limit = omega.scale(Fraction(1, len(S)))
    elif omega is not None:
        log.info("growth value has provenance %s; no lower limit", omega.provenance)
    return bounds


def lp_l1_minimize(columns: Sequence[AlgebraElement],
                   target: AlgebraElement) -> tuple[list[Fraction], Fraction]:
    """min_c ||target + sum_k c_k columns[k]||_1 over real c, solved exactly.

    Variables are c = c+ - c- and the residual r = u - v on every support
    point; the objective is sum(u + v). The slack of each row whose sign
    matches the right-hand side gives a feasible starting basis.
    """
    for col in columns:
        target._same(col)
    rows = sorted(set(target.num).union(*(col.num for col in columns)), key=repr)
    d = len(columns)
    m = len(rows)
    nvar = 2 * d + 2 * m
    A, b, basis = [], [], []
    for i, g in enumerate(rows):
        row = [Fraction(0)] * nvar
        for k, col in enumerate(columns):
            a = col.coeff(g)
            if a:
                row[k] = a
                row[d + k] = -a
        row[2 * d + i] = Fraction(-1)      # u_i
        row[2 * d + m + i] = Fraction(1)   # v_i
        rhs = -target.coeff(g)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            basis.append(2 * d + i)
        else:
            basis.append(2 * d + m + i)
        A.append(row)
        b.append(rhs)
    cost = [0] * (2 * d) + [1] * (2 * m)
    x, value = simplex_min(A, b, cost, basis)
    coeffs = [x[k] - x[d + k] for k in range(d)]
    resid = target
    for k, col in enumerate(columns):
        if coeffs[k]:
            resid = resid + col.scale(coeffs[k])
    if resid.l1_norm() != value:  # the certificate of optimality must be self-consistent
        raise ArithmeticError(f"LP residual {resid.l1_norm()} differs from optimum {value}")
    return coeffs, value


def lp_value(f: AlgebraElement, n: int,
             pows: list[AlgebraElement] | None = None) -> tuple[list[Fraction], Fraction]:
    """Coefficients and optimum of the degree-n problem for f."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if pows is None or len(pows) <= n:
        pows = powers(f, n)
    return lp_l1_minimize(pows[:n], pows[n])


def capacity_upper_lp(f: AlgebraElement, n: int,
                      pows: list[AlgebraElement] | None = None) -> Enclosure:
    """(min over real monic p of degree n of ||p(f)||_1)^(1/n), bracketed."""
    return root_enclosure(lp_value(f, n, pows)[1], n)


def capacity_bounds(f: AlgebraElement, S: GeneratingSet, table: BallTable, n_max: int,
                    lp_degrees: Sequence[int] = (), growth=None,
                    spectral_m: int | None = None, description: str = "") -> CapacityBounds:
    """Sphere lower data, LP upper data and the spectral bound in one pass."""
    top = max([n_max, *lp_degrees, spectral_m or 1])
    pows = powers(f, top)
    bounds = sphere_mass_lower(f, S, table, n_max, growth, pows)
    for n in lp_degrees:
        _, value = lp_value(f, n, pows)
        bounds.upper_lp_values[n] = value
        bounds.upper_lp_roots[n] = root_enclosure(value, n)
    bounds.spectral_upper = spectral_radius_upper(f, spectral_m or top, pows=pows)
    bounds.description = description
    bad = bounds.check_order()
    if bad:
        raise ArithmeticError(f"sphere mass exceeds LP optimum at degrees {bad}")
    return bounds


@dataclass
class CertificateResult:
    verdict: str
    lower: Enclosure
    R_upper: Enclosure
    margin: Fraction
    provenance: list[str]
    conditional: bool
    description: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == NOT_HERMITIAN


def frw_certificate(bounds: CapacityBounds, R_upper: Enclosure | Rational) -> CertificateResult:
    """NOT_HERMITIAN when cap lower > R/2, compared on enclosure endpoints.

    A self-adjoint element with real spectrum has capacity at most half its
    spectral radius, so a witness beating that bound has non-real spectrum.
    """
    lo = bounds.lower_limit
    if lo is None:
        raise CertificationError("no rigorous capacity lower limit; per-n data are not certificates")
    if lo.provenance not in RIGOROUS_PROVENANCE or lo.provenance == EMPIRICAL:
        raise CertificationError(f"lower limit has non-rigorous provenance {lo.provenance}")
    if not isinstance(R_upper, Enclosure):
        R_upper = Enclosure.point(R_upper)
    margin = lo.lo - R_upper.hi / 2
    verdict = NOT_HERMITIAN if margin > 0 else INCONCLUSIVE
    chain = [
        f"growth:{lo.provenance}",
        f"capacity-lower=growth/|S| with |S|={bounds.set_size}",
        "spectral-upper=min_n ||f^n||_1^(1/n)",
        "real-spectrum elements satisfy cap <= R/2",
    ]
    return CertificateResult(
        verdict=verdict,
        lower=lo,
        R_upper=R_upper,
        margin=margin,
        provenance=chain,
        conditional=lo.provenance in (USER_ASSERTED, PAPER_CONSTANT),
        description=bounds.description,
    )


__all__ = [
    "CapacityBounds",
    "CertificateResult",
    "CertificationError",
    "INCONCLUSIVE",
    "NOT_HERMITIAN",
    "capacity_bounds",
    "capacity_upper_lp",
    "frw_certificate",
    "lp_l1_minimize",
    "lp_value",
    "sphere_mass_lower",
]
