"""Perron roots of nonnegative integer matrices and growth automata.

The spectral radius is enclosed with Collatz-Wielandt bounds: for a
nonnegative matrix ``M`` and any positive vector ``v``,

    min_i (Mv)_i / v_i  <=  rho(M)  <=  max_i (Mv)_i / v_i.

``v`` comes from floating power iteration, but the ratios are evaluated in
exact rationals, so the enclosure holds whatever the quality of ``v``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import PERRON, Enclosure

log = logging.getLogger(__name__)


def strongly_connected_components(M) -> list[list[int]]:
    """SCCs of the digraph with an edge i -> j whenever M[i][j] > 0."""
    A = (np.asarray(M) > 0).astype(np.int64)
    n = A.shape[0]
    reach = ((A + np.eye(n, dtype=np.int64)) > 0).astype(np.int64)
    while True:
        nxt = ((reach @ reach) > 0).astype(np.int64)
        if (nxt == reach).all():
            break
        reach = nxt
    mutual = (reach > 0) & (reach.T > 0)
    comps, done = [], set()
    for i in range(n):
        if i not in done:
            comp = [j for j in range(n) if mutual[i, j]]
            done.update(comp)
            comps.append(comp)
    return comps


def _irreducible_enclosure(A: np.ndarray, tol: Fraction, max_iter: int) -> Enclosure:
    n = A.shape[0]
    Aint = [[int(x) for x in row] for row in A]
    B = A.astype(float) + np.eye(n)
    v = np.ones(n)
    best: Enclosure | None = None
    for it in range(1, max_iter + 1):
        w = B @ v
        v = w / w.max()
        if it % 25 and it != max_iter:
            continue
        if (v <= 0).any():
            v = np.maximum(v, np.finfo(float).tiny)
        q = [Fraction(float(x)) for x in v]
        ratios = [sum(Aint[i][j] * q[j] for j in range(n) if Aint[i][j]) / q[i] for i in range(n)]
        enc = Enclosure(min(ratios), max(ratios), PERRON)
        if best is None or enc.width < best.width:
            best = enc
        if best.width <= tol:
            return best
    log.warning("Perron enclosure width %.3g above tolerance after %d iterations",
                float(best.width), max_iter)
    return best


def perron_enclosure(M, tol: float | Fraction = Fraction(1, 10**9), max_iter: int = 20000) -> Enclosure:
    """Rational enclosure of the spectral radius of a nonnegative integer matrix."""
    A = np.asarray(M, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    if (A < 0).any():
        raise ValueError("matrix has negative entries")
    tol = Fraction(tol)
    lo = hi = Fraction(0)
    for comp in strongly_connected_components(A):
        sub = A[np.ix_(comp, comp)]
        if len(comp) == 1 and sub[0, 0] == 0:
            continue  # acyclic vertex contributes eigenvalue 0
        if len(comp) == 1:
            enc = Enclosure.point(int(sub[0, 0]), PERRON)
        else:
            enc = _irreducible_enclosure(sub, tol, max_iter)
        lo, hi = max(lo, enc.lo), max(hi, enc.hi)
    return Enclosure(lo, hi, PERRON)


@dataclass
class ConeAutomaton:
    """Counting automaton for word-metric spheres.

    Each state is the tail signature ``h -> |gh| - |g|`` over the ball of
    radius ``tail_radius``. Every element of length n+1 is attached to one
    designated parent of length n (the one reached through the earliest
    generator), so the number of accepted paths of length n equals the
    sphere size.
    """

    nstates: int
    start: int
    children: list[list[int]]
    tail_radius: int
    depth: int
    observed_spheres: list[int] = field(default_factory=list)

    def matrix(self) -> list[list[int]]:
        M = [[0] * self.nstates for _ in range(self.nstates)]
        for i, kids in enumerate(self.children):
            for j in kids:
                M[i][j] += 1
        return M

    def sphere_counts(self, n_max: int) -> list[int]:
        """Exact sphere sizes for radii 0..n_max."""
        vec = [0] * self.nstates
        vec[self.start] = 1
        out = [1]
        for _ in range(n_max):
            nxt = [0] * self.nstates
            for i, c in enumerate(vec):
                if c:
                    for j in self.children[i]:
                        nxt[j] += c
            vec = nxt
            out.append(sum(vec))
        return out

    def is_finite(self) -> bool:
        """True when no cycle is reachable, i.e. the group is finite."""
        return self.sphere_counts(self.nstates + 1)[-1] == 0


class AutomatonError(RuntimeError):
    pass


def _enumerate_lengths(G, gens: list, depth: int) -> tuple[dict, list[list]]:
    e = G.identity_form
    dist = {e: 0}
    spheres = [[e]]
    seen = {e}
    for n in range(1, depth + 1):
        new = G.expand(spheres[-1], gens, seen)
        for h in new:
            dist[h] = n
        spheres.append(new)
    return dist, spheres


def build_cone_automaton(G, S, max_tail: int = 6, max_depth: int = 40,
                         max_elements: int = 2_000_000) -> ConeAutomaton:
    """Identify the sphere-counting automaton of (G, S) from enumeration data.

    The tail radius starts at 2 (the smallest radius that decides designated
    parents) and grows until every observed element with a given signature
    has the same multiset of child signatures. The depth grows until every
    reachable signature has been observed with its children. The resulting
    automaton is then checked against the enumerated sphere sizes.
    """
    gens = list(S.forms)
    mul, inv = G.mul_forms, G.inv_forms
    gen_inv = [inv(s) for s in gens]
    for K in range(2, max_tail + 1):
        depth = K + 8
        while depth <= max_depth:
            dist, spheres = _enumerate_lengths(G, gens, depth)
            if len(dist) > max_elements:
                raise AutomatonError(f"ball of radius {depth} exceeds {max_elements} elements")
            tail = [h for r in range(1, K + 1) for h in spheres[r]]
            sig_id: dict[tuple, int] = {}
            children: dict[int, list[int]] = {}

            def state(g, n):
                key = tuple(dist[mul(g, h)] - n for h in tail)
                return sig_id.setdefault(key, len(sig_id))

            conflict = False
            finished = len(spheres[-1]) == 0
            for n in range(0, depth - K):
                for g in spheres[n]:
                    sid = state(g, n)
                    kids = []
                    for i, s in enumerate(gens):
                        x = mul(g, s)
                        if dist[x] != n + 1:
                            continue
                        if any(dist[mul(x, gen_inv[t])] == n for t in range(i)):
                            continue
                        kids.append(state(x, n + 1))
                    kids.sort()
                    if children.setdefault(sid, kids) != kids:
                        conflict = True
                        break
                if conflict:
                    break
            if conflict:
                break  # enlarge the tail radius
            missing = [s for s in range(len(sig_id)) if s not in children]
            if missing and not finished:
                depth += 4
                continue
            for s in missing:
                children[s] = []
            auto = ConeAutomaton(
                nstates=len(sig_id),
                start=0,
                children=[children[s] for s in range(len(sig_id))],
                tail_radius=K,
                depth=depth,
                observed_spheres=[len(sp) for sp in spheres],
            )
            predicted = auto.sphere_counts(depth)
            if predicted != auto.observed_spheres:
                raise AutomatonError(
                    f"automaton prediction {predicted} disagrees with enumeration {auto.observed_spheres}"
                )
            return auto
        else:
            raise AutomatonError(f"signatures not closed by depth {max_depth}")
    raise AutomatonError(f"no deterministic automaton with tail radius <= {max_tail}")
