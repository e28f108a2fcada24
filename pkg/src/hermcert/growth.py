"""Ball enumeration and growth-rate estimates.

Radii follow the word metric of S: ``B_n = {e} ∪ S ∪ ... ∪ S^n`` and the
sphere of radius n is ``B_n \\ B_{n-1}``. Lists in :class:`BallTable` are
indexed by radius, so index 0 holds the identity (``ball_sizes[0] ==
sphere_sizes[0] == 1``). When asked, the literal power sets ``S^n`` are
counted as well.
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import EMPIRICAL, EXACT, Enclosure, root_enclosure
from .groups import FreeGroup, FreeProductCyclic, GeneratingSet, GroupBackend, GroupError
from .perron import AutomatonError, ConeAutomaton, build_cone_automaton, perron_enclosure

log = logging.getLogger(__name__)

DEFAULT_MEMORY_BUDGET = 2 * 1024**3
_SLOT_OVERHEAD = 40  # hash-set slot plus list pointer, per element


class MemoryBudgetExceeded(MemoryError):
    def __init__(self, table: "BallTable", budget: int) -> None:
        super().__init__(
            f"memory budget of {budget} bytes exceeded; largest completed radius {table.radius_max}"
        )
        self.table = table
        self.budget = budget


class SubmultiplicativityError(AssertionError):
    """An enumerated table violates a counting inequality (enumeration bug)."""


@dataclass
class BallTable:
    backend_id: str
    set_size: int
    symmetric: bool
    contains_identity: bool
    radius_max: int
    ball_sizes: list[int]
    sphere_sizes: list[int]
    spheres: dict[int, list] = field(default_factory=dict, repr=False)
    power_sizes: list[int] | None = None

    @property
    def store_limit(self) -> int:
        return max(self.spheres, default=-1)

    def sphere(self, n: int) -> list:
        if n not in self.spheres:
            raise KeyError(f"sphere {n} not stored (store_limit={self.store_limit})")
        return self.spheres[n]

    def ball(self, n: int) -> set:
        return {g for r in range(n + 1) for g in self.sphere(r)}


def _form_size(form) -> int:
    return sys.getsizeof(form) + _SLOT_OVERHEAD


def enumerate_balls(G: GroupBackend, S: GeneratingSet, n_max: int, store_limit: int = 0,
                    memory_budget: int = DEFAULT_MEMORY_BUDGET,
                    literal_powers: bool = False) -> BallTable:
    """Breadth-first enumeration of word-metric spheres up to radius ``n_max``.

    Spheres up to ``store_limit`` are kept in the table. For symmetric S only
    the two most recent spheres are needed to detect repeats, otherwise the
    whole ball is kept.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if S.backend_id != G.backend_id:
        raise GroupError("generating set belongs to another backend")
    if S.contains_identity:
        log.warning("generating set contains the identity; S^n is then nested and spheres "
                    "coincide with the literal differences S^n \\ S^(n-1)")
    gens = list(S.forms)
    e = G.identity_form
    table = BallTable(G.backend_id, len(gens), S.symmetric_flag, S.contains_identity,
                      0, [1], [1], {0: [e]} if store_limit >= 0 else {})
    seen = {e}
    prev: list = []
    cur = [e]
    live = _form_size(e)
    power = [e] if literal_powers else None
    if literal_powers:
        table.power_sizes = [1]
    for n in range(1, n_max + 1):
        new = G.expand(cur, gens, seen)
        if S.symmetric_flag:
            seen.difference_update(prev)
            live -= sum(_form_size(g) for g in prev) if n - 2 > store_limit else 0
        live += sum(_form_size(g) for g in new)
        if literal_powers:
            power = G.expand(power, gens, set())
            live_power = sum(_form_size(g) for g in power)
        else:
            live_power = 0
        if live + live_power > memory_budget:
            raise MemoryBudgetExceeded(table, memory_budget)
        table.sphere_sizes.append(len(new))
        table.ball_sizes.append(table.ball_sizes[-1] + len(new))
        if literal_powers:
            table.power_sizes.append(len(power))
        if n <= store_limit:
            table.spheres[n] = new
        table.radius_max = n
        prev, cur = cur, new
    return table


@dataclass
class GrowthEstimate:
    per_n_ball_roots: list[float]
    per_n_sphere_roots: list[float]
    per_n_ratio_roots: list[float | None]
    fekete_upper: float
    fekete_bound: Fraction | None
    exact_value: Enclosure | None = None
    provenance: str = EMPIRICAL
    automaton: ConeAutomaton | None = field(default=None, repr=False)

    @property
    def ratio_estimate(self) -> float | None:
        """Two-step sphere ratio (|S_n|/|S_{n-2}|)^(1/2) at the largest radius."""
        vals = [r for r in self.per_n_ratio_roots if r is not None]
        return vals[-1] if vals else None

    @property
    def value(self) -> float:
        """Best single number: exact midpoint, else the ratio estimate."""
        if self.exact_value is not None:
            return float(self.exact_value)
        r = self.ratio_estimate
        return r if r is not None else self.per_n_ball_roots[-1]


def _two_step_ratios(sizes: list[int]) -> list[float | None]:
    out: list[float | None] = [None]
    for n in range(1, len(sizes)):
        if n < 3 or sizes[n - 2] == 0:
            out.append(None)
        else:
            out.append(math.sqrt(sizes[n] / sizes[n - 2]))
    return out


def growth_estimate(table: BallTable) -> GrowthEstimate:
    """Per-radius roots, the two-step ratio estimate and the Fekete infimum.

    ``per_n_*`` lists are indexed by radius; index 0 holds 1.0.
    """
    if table.radius_max < 2:
        raise ValueError("need at least two radii")
    N = table.radius_max
    ball_roots = [1.0] + [table.ball_sizes[n] ** (1.0 / n) for n in range(1, N + 1)]
    sphere_roots = [1.0] + [table.sphere_sizes[n] ** (1.0 / n) for n in range(1, N + 1)]
    bound = min(root_enclosure(table.ball_sizes[n], n).hi for n in range(1, N + 1))
    return GrowthEstimate(
        per_n_ball_roots=ball_roots,
        per_n_sphere_roots=sphere_roots,
        per_n_ratio_roots=_two_step_ratios(table.sphere_sizes),
        fekete_upper=min(ball_roots[1:]),
        fekete_bound=bound,
    )


def _is_standard(G: FreeGroup, S: GeneratingSet) -> bool:
    return set(S.forms) == {x.form for x in G.standard_generators()}


def exact_growth(G: GroupBackend, S: GeneratingSet, tol: float | Fraction = Fraction(1, 10**9),
                 table: BallTable | None = None) -> GrowthEstimate | None:
    """Rigorous growth rate for free groups and free products of cyclics.

    A table with an empty sphere shows the generated group is finite, so the
    rate is exactly 1 for any backend. Returns ``None`` when no closed form
    or automaton route applies.
    """
    if table is not None and table.radius_max >= 2 and 0 in table.sphere_sizes[1:]:
        est = growth_estimate(table)
        est.exact_value = Enclosure.point(1, EXACT)
        est.provenance = EXACT
        return est
    if not isinstance(G, (FreeGroup, FreeProductCyclic)) or not S.symmetric_flag:
        return None
    if table is None:
        table = enumerate_balls(G, S, 6)
    est = growth_estimate(table)
    if isinstance(G, FreeGroup) and _is_standard(G, S):
        est.exact_value = Enclosure.point(2 * G.rank - 1, EXACT)
        est.provenance = EXACT
        return est
    try:
        auto = build_cone_automaton(G, S)
    except AutomatonError as exc:
        log.warning("no growth automaton: %s", exc)
        return None
    est.automaton = auto
    if auto.is_finite():
        est.exact_value = Enclosure.point(1, EXACT)
        est.provenance = EXACT
        return est
    enc = perron_enclosure(auto.matrix(), tol=tol)
    est.exact_value = enc
    est.provenance = enc.provenance
    return est


def check_submultiplicative(table: BallTable) -> dict:
    """Check |B_{n+k}| <= |B_n||B_k| and the same for spheres and powers.

    Raises :class:`SubmultiplicativityError` on any violation.
    """
    N = table.radius_max
    if N < 3:
        raise ValueError("need at least three radii")
    series = {"ball": table.ball_sizes, "sphere": table.sphere_sizes}
    if table.power_sizes is not None:
        series["power"] = table.power_sizes
    pairs = 0
    violations = []
    for name, a in series.items():
        for n in range(1, N):
            for k in range(1, N - n + 1):
                pairs += 1
                if a[n + k] > a[n] * a[k]:
                    violations.append((name, n, k, a[n + k], a[n] * a[k]))
    if violations:
        raise SubmultiplicativityError(f"submultiplicativity violated: {violations[:5]}")
    return {"pairs_checked": pairs, "series": sorted(series), "ok": True}


def omega_sigma_agreement(table: BallTable, tol: float) -> dict:
    """Compare ball and sphere growth at the largest radius (advisory).

    Both the raw n-th roots and the two-step ratios are reported; the
    ``agree`` flag uses the ratios, which converge much faster.
    """
    N = table.radius_max
    if N < 3:
        raise ValueError("need at least three radii")
    ball_root = table.ball_sizes[N] ** (1 / N)
    sphere_root = table.sphere_sizes[N] ** (1 / N)
    ball_ratio = math.sqrt(table.ball_sizes[N] / table.ball_sizes[N - 2])
    sphere_ratio = (math.sqrt(table.sphere_sizes[N] / table.sphere_sizes[N - 2])
                    if table.sphere_sizes[N - 2] else 0.0)
    return {
        "n": N,
        "ball_root": ball_root,
        "sphere_root": sphere_root,
        "root_gap": abs(ball_root - sphere_root),
        "ball_ratio": ball_ratio,
        "sphere_ratio": sphere_ratio,
        "ratio_gap": abs(ball_ratio - sphere_ratio),
        "agree": abs(ball_ratio - sphere_ratio) < tol,
        "identity_in_s": table.contains_identity,
    }


def theta_index(omega, set_size: int):
    """Normalized growth index (omega - 1) / (|S| - 2).

    Rational or :class:`Enclosure` input gives exact output; floats give a
    float.
    """
    if set_size <= 2:
        raise ValueError("theta index needs |S| >= 3")
    d = set_size - 2
    if isinstance(omega, Enclosure):
        return Enclosure((omega.lo - 1) / d, (omega.hi - 1) / d, omega.provenance)
    if isinstance(omega, (int, Fraction)):
        value = (Fraction(omega) - 1) / d
    else:
        value = (float(omega) - 1) / d
    if not 0 <= value <= 1:
        log.warning("theta index %s outside [0, 1]; numerical artifact in omega", value)
    return value
