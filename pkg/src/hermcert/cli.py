"""Command-line front end.

Every command prints a report on standard output, as ``key=value`` records
(``--format records``, the default) or as aligned tables. Exit status is 0 on
success, 1 on errors and 2 when ``--strict`` is set and the verdict is not
CERTIFIED.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__, kernels
from .algebra import AlgebraElement, convolve, involution, witness_element
from .capacity import capacity_bounds, frw_certificate
from .criteria import Verdict, discrete_criterion
from .exact import USER_ASSERTED, Enclosure
from .groupfile import SpecError, parse_group_spec
from .groups import GroupError, parse_generators
from .growth import (
    DEFAULT_MEMORY_BUDGET,
    MemoryBudgetExceeded,
    SubmultiplicativityError,
    check_submultiplicative,
    enumerate_balls,
    exact_growth,
    growth_estimate,
    omega_sigma_agreement,
    theta_index,
)
from .padic import (
    corner_signature,
    gl_criterion,
    gl_growth_lower,
    hecke_measure,
    inequality_scan,
    sl_measure,
)
from .records import emit, header, render_table
from .tree import TreeSpec, sphere_size, sphere_size_recursive, tree_criterion

log = logging.getLogger("hermcert")

COMMANDS = ("growth", "capacity", "certify-discrete", "certify-tree", "certify-padic",
            "scan-padic", "check-properties")
N_MAX_LIMIT = 64
LP_DEGREE_LIMIT = 24

Record = tuple[str, dict]


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group_spec: str | None = None
    gens: str = "standard"
    n_max: int = 8
    store_limit: int | None = None
    lp_degree_max: int = 0
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    tolerance: Fraction = Fraction(1, 10**9)
    output_format: str = "records"
    strict: bool = False
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not 1 <= self.n_max <= N_MAX_LIMIT:
            raise UsageError(f"--n-max must be in 1..{N_MAX_LIMIT}")
        if not 0 <= self.lp_degree_max <= LP_DEGREE_LIMIT:
            raise UsageError(f"--lp-degree must be in 0..{LP_DEGREE_LIMIT}")
        if self.store_limit is not None and self.store_limit < 0:
            raise UsageError("--store-limit must be >= 0")
        if self.memory_budget <= 0:
            raise UsageError("--memory-budget must be positive")
        if self.tolerance <= 0:
            raise UsageError("--tolerance must be positive")
        if self.output_format not in ("records", "table"):
            raise UsageError("--format must be records or table")


@dataclass
class Report:
    records: list[Record]
    verdict: Verdict | None = None
    failed: bool = False


# -- argument helpers ---------------------------------------------------------

def _size(text: str) -> int:
    m = re.fullmatch(r"(\d+)([KMG]?)i?B?", text.strip(), re.IGNORECASE)
    if not m:
        raise argparse.ArgumentTypeError(f"bad size {text!r}; use e.g. 512M or 2G")
    scale = {"": 1, "K": 1024, "M": 1024**2, "G": 1024**3}[m.group(2).upper()]
    return int(m.group(1)) * scale


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", part)
        if not m:
            raise argparse.ArgumentTypeError(f"bad range {text!r}; use e.g. 2..10 or 5,7,11")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        out.extend(range(lo, hi + 1))
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# -- commands -----------------------------------------------------------------

def _group_and_gens(cfg: RunConfig):
    if not cfg.group_spec:
        raise UsageError("--group is required")
    G = parse_group_spec(cfg.group_spec)
    S = parse_generators(G, cfg.gens)
    return G, S


def _group_fields(G, S) -> dict:
    return {
        "group": G.backend_id,
        "gens": [G.format_form(g) for g in S.forms],
        "set_size": len(S),
        "symmetric": S.symmetric_flag,
    }


def run_growth(cfg: RunConfig) -> Report:
    G, S = _group_and_gens(cfg)
    recs: list[Record] = []
    literal = cfg.options.get("powers", False)
    try:
        table = enumerate_balls(G, S, cfg.n_max, store_limit=0, memory_budget=cfg.memory_budget,
                                literal_powers=literal)
    except MemoryBudgetExceeded as exc:
        table = exc.table
        recs.append(("error", {"reason": "memory-budget", "completed_radius": table.radius_max}))
        recs[:0] = _radius_records(table, growth_estimate(table) if table.radius_max >= 2 else None)
        return Report(recs, failed=True)
    est = growth_estimate(table)
    recs.extend(_radius_records(table, est))
    exact = exact_growth(G, S, cfg.tolerance, table)
    if table.radius_max >= 3:
        check_submultiplicative(table)
    summary = _group_fields(G, S)
    summary.update({
        "radius_max": table.radius_max,
        "estimate": est.ratio_estimate,
        "fekete_bound": est.fekete_bound,
        "exact": exact.exact_value if exact else None,
        "exact_approx": float(exact.exact_value) if exact else None,
        "provenance": exact.provenance if exact else est.provenance,
        "automaton_states": exact.automaton.nstates if exact and exact.automaton else None,
        "submultiplicative": table.radius_max >= 3,
    })
    if exact and len(S) >= 3:
        summary["theta"] = theta_index(exact.exact_value, len(S))
    recs.append(("growth", summary))
    if table.radius_max >= 3:
        agree = omega_sigma_agreement(table, float(cfg.options.get("agree_tol", 0.01)))
        recs.append(("agreement", {k: v for k, v in agree.items()}))
    return Report(recs)


def _radius_records(table, est) -> list[Record]:
    out = []
    for n in range(1, table.radius_max + 1):
        row = {"n": n}
        if table.power_sizes is not None:
            row["power"] = table.power_sizes[n]
        row["ball"] = table.ball_sizes[n]
        row["sphere"] = table.sphere_sizes[n]
        if est is not None:
            row["ball_root"] = est.per_n_ball_roots[n]
            row["sphere_root"] = est.per_n_sphere_roots[n]
            row["ratio_root"] = est.per_n_ratio_roots[n]
        out.append(("radius", row))
    return out


def _bounds(cfg: RunConfig, G, S, asserted: Fraction | None):
    f = witness_element(G, S)
    store = max(cfg.n_max, cfg.store_limit or 0)
    table = enumerate_balls(G, S, store, store_limit=store, memory_budget=cfg.memory_budget)
    exact = exact_growth(G, S, cfg.tolerance, table)
    omega = exact.exact_value if exact else None
    if omega is None and asserted is not None:
        omega = Enclosure.point(asserted, USER_ASSERTED)
    degrees = list(range(1, cfg.lp_degree_max + 1))
    bounds = capacity_bounds(f, S, table, cfg.n_max, degrees, omega, spectral_m=cfg.n_max,
                             description=f"f = chi_S/{len(S)} on {G.backend_id}")
    return table, omega, bounds


def run_capacity(cfg: RunConfig) -> Report:
    G, S = _group_and_gens(cfg)
    table, omega, b = _bounds(cfg, G, S, cfg.options.get("assert_growth"))
    recs: list[Record] = []
    for n in b.degrees:
        recs.append(("degree", {
            "n": n,
            "sphere_mass": b.sphere_masses[n - 1],
            "lower_root": float(b.lower_sphere_roots[n - 1]),
            "lp_value": b.upper_lp_values.get(n),
            "upper_root": float(b.upper_lp_roots[n]) if n in b.upper_lp_roots else None,
        }))
    for n in sorted(k for k in b.upper_lp_values if k > cfg.n_max):
        recs.append(("degree", {"n": n, "sphere_mass": None, "lower_root": None,
                                "lp_value": b.upper_lp_values[n],
                                "upper_root": float(b.upper_lp_roots[n])}))
    summary = _group_fields(G, S)
    summary.update({
        "growth": omega,
        "lower_limit": b.lower_limit,
        "lower_provenance": b.lower_provenance,
        "spectral_upper": b.spectral_upper,
    })
    recs.append(("capacity", summary))
    return Report(recs)


def run_certify_discrete(cfg: RunConfig) -> Report:
    G, S = _group_and_gens(cfg)
    table, omega, b = _bounds(cfg, G, S, cfg.options.get("assert_growth"))
    recs: list[Record] = [("sphere", {"n": n, "size": table.sphere_sizes[n]})
                          for n in range(1, table.radius_max + 1)]
    cert_fields = _group_fields(G, S)
    if omega is None:
        cert_fields.update({"verdict": Verdict.INCONCLUSIVE, "certificate": "INCONCLUSIVE",
                            "reason": "no rigorous growth value; use --assert-growth"})
        recs.append(("certificate", cert_fields))
        return Report(recs, Verdict.INCONCLUSIVE)
    crit = discrete_criterion(len(S), omega)
    cert = frw_certificate(b, b.spectral_upper)
    cert_fields.update({
        "growth": omega,
        "growth_approx": float(omega),
        "growth_provenance": omega.provenance,
        "threshold": crit.threshold,
        "criterion_margin": crit.margin,
        "cap_lower": cert.lower,
        "cap_lower_approx": float(cert.lower),
        "r_upper": cert.R_upper,
        "cap_margin": cert.margin,
        "verdict": crit.verdict,
        "certificate": cert.verdict,
        "conditional": cert.conditional,
        "chain": "; ".join(cert.provenance),
    })
    recs.append(("certificate", cert_fields))
    return Report(recs, crit.verdict)


def run_certify_tree(cfg: RunConfig) -> Report:
    spec = cfg.options.get("tree")
    if spec is None:
        raise UsageError("--tree or --degrees is required")
    tv = tree_criterion(spec)
    c = tv.criterion
    return Report([("tree", {
        "tree": str(spec),
        "measure": tv.measure,
        "growth_lower": tv.growth_lower,
        "threshold": c.threshold,
        "margin": c.margin,
        "two_thirds": tv.two_thirds_holds,
        "two_thirds_equality": tv.two_thirds_equality,
        "conditions": [f"{k}:{str(v).lower()}" for k, v in c.conditions.items()],
        "symmetry": c.notes[0] if c.notes else None,
        "verdict": c.verdict,
    })], c.verdict)


def run_certify_padic(cfg: RunConfig) -> Report:
    n, p = cfg.options["n"], cfg.options["p"]
    v = gl_criterion(n, p)
    growth = gl_growth_lower(n, p, k_max=cfg.options.get("k_max", 4))
    recs: list[Record] = [("padic", {
        "n": n,
        "p": p,
        "lambda": corner_signature(n),
        "measure": v.measure,
        "omega_lower": v.omega_lower,
        "threshold": v.criterion.threshold,
        "inequality": v.inequality,
        "margin": v.criterion.margin,
        "per_k_roots": [float(r) for r in growth.per_k_roots],
        "symmetry": v.criterion.notes[0],
        "verdict": v.verdict,
    })]
    lam = cfg.options.get("lam")
    if lam is not None:
        if len(lam) != n:
            raise UsageError(f"--lambda needs {n} entries")
        m = hecke_measure(n, p, lam)
        row = {"n": n, "p": p, "lambda": lam, "gl_measure": m.value}
        if sum(lam) == 0:
            row["sl_measure"] = sl_measure(n, p, lam).value
        recs.append(("measure", row))
    return Report(recs, v.verdict)


def run_scan_padic(cfg: RunConfig) -> Report:
    res = inequality_scan(cfg.options["ns"], cfg.options["primes"])
    recs: list[Record] = [("scan", {"n": r.n, "p": r.p, "value": r.value, "sign": r.sign,
                                    "certified": r.certified}) for r in res.rows]
    recs.append(("scan_summary", {"rows": len(res.rows), "claim_holds": res.claim_holds,
                                  "failures": [f"{n}:{p}" for n, p in res.failures] or None}))
    return Report(recs, Verdict.CERTIFIED if res.claim_holds else Verdict.INCONCLUSIVE)


def _random_element(G, rng: random.Random) -> AlgebraElement:
    coeffs = {}
    for _ in range(rng.randint(1, 5)):
        g = G.random_element(rng, rng.randint(0, 4)).form
        coeffs[g] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return AlgebraElement.from_coefficients(G, coeffs)


def run_check_properties(cfg: RunConfig) -> Report:
    recs: list[Record] = []
    ok_all = True

    def record(name: str, cases: int, ok: bool, detail: str | None = None) -> None:
        nonlocal ok_all
        ok_all &= ok
        recs.append(("check", {"name": name, "cases": cases, "ok": ok, "detail": detail}))

    G, S = _group_and_gens(cfg)
    table = enumerate_balls(G, S, cfg.n_max, memory_budget=cfg.memory_budget, literal_powers=True)
    try:
        res = check_submultiplicative(table)
        record("submultiplicative", res["pairs_checked"], True)
    except SubmultiplicativityError as exc:
        record("submultiplicative", 0, False, str(exc))
    except ValueError as exc:
        record("submultiplicative", 0, False, str(exc))

    rng = random.Random(cfg.options.get("seed", 0))
    pairs = cfg.options.get("pairs", 1000)
    bad = {"norm": 0, "nonneg": 0, "isometry": 0, "anti": 0}
    for _ in range(pairs):
        x, y = _random_element(G, rng), _random_element(G, rng)
        xy = convolve(x, y)
        bad["norm"] += xy.l1_norm() > x.l1_norm() * y.l1_norm()
        ax = AlgebraElement(G, {g: abs(a) for g, a in x.num.items()}, x.den)
        ay = AlgebraElement(G, {g: abs(a) for g, a in y.num.items()}, y.den)
        bad["nonneg"] += convolve(ax, ay).l1_norm() != ax.l1_norm() * ay.l1_norm()
        bad["isometry"] += involution(x).l1_norm() != x.l1_norm()
        bad["anti"] += involution(xy) != convolve(involution(y), involution(x))
    for name, count in bad.items():
        record(f"algebra_{name}", pairs, count == 0, f"{count} failures" if count else None)

    cases = fails = 0
    for n in range(1, 4):
        for p in (2, 3, 5, 7):
            for lam in itertools.product(range(-2, 3), repeat=n):
                m = hecke_measure(n, p, lam).value
                cases += 1
                fails += m != hecke_measure(n, p, [x + 1 for x in lam]).value
                fails += m != hecke_measure(n, p, lam[::-1]).value
    record("hecke_invariance", cases, fails == 0)

    cases = fails = 0
    trng = random.Random(cfg.options.get("seed", 0))
    for _ in range(50):
        spec = TreeSpec.of([trng.randint(2, 12) for _ in range(trng.randint(1, 4))])
        for n in range(1, 33):
            cases += 1
            fails += sphere_size(spec, n) != sphere_size_recursive(spec, n)
    record("tree_recursion", cases, fails == 0)
    recs.append(("summary", {"ok": ok_all, "kernel": kernels.IMPLEMENTATION}))
    return Report(recs, failed=not ok_all)


RUNNERS: dict[str, Callable[[RunConfig], Report]] = {
    "growth": run_growth,
    "capacity": run_capacity,
    "certify-discrete": run_certify_discrete,
    "certify-tree": run_certify_tree,
    "certify-padic": run_certify_padic,
    "scan-padic": run_scan_padic,
    "check-properties": run_check_properties,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a config; returns (exit status, report text)."""
    cfg.validate()
    report = RUNNERS[cfg.command](cfg)
    if cfg.output_format == "records":
        text = "\n".join([header(cfg.command), *(emit(k, f) for k, f in report.records)]) + "\n"
    else:
        text = render_table(report.records)
    if report.failed:
        return 1, text
    if cfg.strict and report.verdict is not None and report.verdict is not Verdict.CERTIFIED:
        return 2, text
    return 0, text


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("records", "table"),
                        default="records", help="output format (default: records)")
    common.add_argument("--strict", action="store_true",
                        help="exit with status 2 unless the verdict is CERTIFIED")
    common.add_argument("--tolerance", type=_rational, default=Fraction(1, 10**9),
                        help="width target for Perron enclosures (default 1e-9)")
    common.add_argument("-v", "--verbose", action="store_true")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", required=True,
                     help="free:R, fpc:M1,M2,..., cayley:FILE, rws:FILE or file:FILE")
    grp.add_argument("--gens", default="standard",
                     help="'standard' or comma-separated words, e.g. a,ab,bba or a'")
    grp.add_argument("--store-limit", type=int, default=None,
                     help="store element sets up to this radius")
    grp.add_argument("--memory-budget", type=_size, default=DEFAULT_MEMORY_BUDGET,
                     help="approximate byte limit for enumeration (default 2G)")

    parser = argparse.ArgumentParser(prog="hermcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", parents=[common, grp], help="ball and sphere growth table")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--powers", action="store_true", help="also count the literal sets S^n")
    p.add_argument("--agree-tol", type=float, default=0.01,
                   help="tolerance for the ball/sphere ratio agreement check")

    for name, n_default, lp_default, text in (
        ("capacity", 8, 6, "capacity lower and upper data for the witness"),
        ("certify-discrete", 8, 0, "certificate for a discrete group"),
    ):
        p = sub.add_parser(name, parents=[common, grp], help=text)
        p.add_argument("--n-max", type=int, default=n_default)
        p.add_argument("--lp-degree", type=int, default=lp_default,
                       help="solve the l1 problem for degrees 1..D")
        p.add_argument("--assert-growth", type=_rational, default=None,
                       help="growth lower bound to use when none can be computed (user-asserted)")

    p = sub.add_parser("certify-tree", parents=[common], help="double-coset criterion on a tree")
    p.add_argument("--tree", help="e.g. 'degrees=3,4 k=2'")
    p.add_argument("--degrees", type=_int_list, help="comma-separated degree sequence")
    p.add_argument("--k", type=int, default=None, help="translation length")

    p = sub.add_parser("certify-padic", parents=[common], help="GL_n(Q_p) criterion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_int_list, default=None,
                   help="also report the measure of this signature")
    p.add_argument("--k-max", type=int, default=4)

    p = sub.add_parser("scan-padic", parents=[common], help="scan the GL_n(Q_p) inequality")
    p.add_argument("--ns", type=_int_range, default=_int_range("2..10"))
    p.add_argument("--primes", type=_int_range, default=_int_range("5,7,11,13"))

    p = sub.add_parser("check-properties", parents=[common, grp], help="run invariant checks")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        group_spec=getattr(args, "group", None),
        gens=getattr(args, "gens", "standard"),
        n_max=getattr(args, "n_max", 8),
        store_limit=getattr(args, "store_limit", None),
        lp_degree_max=getattr(args, "lp_degree", 0),
        memory_budget=getattr(args, "memory_budget", DEFAULT_MEMORY_BUDGET),
        tolerance=args.tolerance,
        output_format=args.output_format,
        strict=args.strict,
    )
    opts = cfg.options
    for key in ("powers", "agree_tol", "assert_growth", "n", "p", "lam", "k_max", "ns", "primes",
                "pairs", "seed"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)
    if args.command == "certify-tree":
        if args.tree:
            opts["tree"] = TreeSpec.parse(args.tree)
        elif args.degrees:
            opts["tree"] = TreeSpec(tuple(args.degrees), args.k or len(args.degrees))
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        status, text = run(cfg)
    except (SpecError, GroupError, UsageError, ValueError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
