"""Sphere counts in trees with a periodic degree sequence along an axis.

``degrees[i]`` is the degree of the vertices on sphere i around the base
vertex x_0 (so ``degrees[0]`` is the degree of x_0), extended periodically
with period k, the translation length of the hyperbolic element g.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .criteria import CriterionVerdict, double_coset_criterion
from .exact import EXACT, Enclosure


@dataclass(frozen=True)
class TreeSpec:
    degrees: tuple[int, ...]
    translation_length: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.translation_length < 1:
            raise ValueError("translation length must be >= 1")
        if len(self.degrees) != self.translation_length:
            raise ValueError(f"expected {self.translation_length} degrees, got {len(self.degrees)}")
        if any(d < 2 for d in self.degrees):
            raise ValueError("degrees must be >= 2")

    @classmethod
    def of(cls, degrees) -> TreeSpec:
        degrees = tuple(degrees)
        return cls(degrees, len(degrees))

    @classmethod
    def parse(cls, text: str) -> TreeSpec:
        """Parse ``degrees=3,4 k=2``; ``k`` defaults to the number of degrees."""
        fields = {}
        for tok in text.split():
            m = re.fullmatch(r"(degrees|k)=(\S+)", tok)
            if not m:
                raise ValueError(f"tree spec: cannot parse {tok!r}; expected degrees=D1,D2,... k=K")
            fields[m.group(1)] = m.group(2)
        if "degrees" not in fields:
            raise ValueError("tree spec: missing degrees=")
        try:
            degrees = tuple(int(d) for d in fields["degrees"].split(","))
            k = int(fields.get("k", len(degrees)))
        except ValueError as exc:
            raise ValueError(f"tree spec: {exc}") from None
        return cls(degrees, k)

    def degree(self, i: int) -> int:
        return self.degrees[i % self.translation_length]

    def __str__(self) -> str:
        return f"degrees={','.join(map(str, self.degrees))} k={self.translation_length}"


def sphere_size(tree: TreeSpec, n: int) -> int:
    """|S_n(x_0)| = deg_0 * prod_{i=1}^{n-1} (deg_i - 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return tree.degree(0) * prod(tree.degree(i) - 1 for i in range(1, n))


def sphere_size_recursive(tree: TreeSpec, n: int) -> int:
    """Same count from |S_{m+1}| = (deg_m - 1)|S_m|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = tree.degree(0)
    for m in range(1, n):
        size *= tree.degree(m) - 1
    return size


def double_coset_measure(tree: TreeSpec, power: int = 1) -> int:
    """mu(K g^power K) with mu(K) = 1: the sphere of radius power*k."""
    if power < 1:
        raise ValueError("power must be >= 1")
    return sphere_size(tree, power * tree.translation_length)


def tree_growth_lower(tree: TreeSpec) -> int:
    """lim_n mu(K g^n K)^(1/n) = (deg_0 - 1) * prod_{i=1}^{k-1} (deg_i - 1)."""
    return (tree.degree(0) - 1) * prod(tree.degree(i) - 1 for i in range(1, tree.translation_length))


@dataclass(frozen=True)
class TreeVerdict:
    tree: TreeSpec
    measure: int
    growth_lower: int
    two_thirds_holds: bool
    two_thirds_equality: bool
    criterion: CriterionVerdict

    @property
    def verdict(self):
        return self.criterion.verdict


def tree_criterion(tree: TreeSpec) -> TreeVerdict:
    mu = double_coset_measure(tree, 1)
    lower = tree_growth_lower(tree)
    crit = double_coset_criterion(
        mu, Enclosure.point(lower, EXACT), symmetric=True,
        symmetry_note="stabilizer assumed transitive on spheres around x_0",
        extra_conditions={"degree_at_least_3": any(d >= 3 for d in tree.degrees)},
    )
    two_thirds = Fraction(2, 3) * mu
    return TreeVerdict(tree, mu, lower, lower >= two_thirds, lower == two_thirds, crit)
