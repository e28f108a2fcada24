"""Discrete group backends with canonical forms.

Four families are supported:

* ``FreeGroup(rank)`` and ``FreeProductCyclic(orders)`` store elements as
  ``bytes`` over a letter alphabet. Adjacent letters are merged through a
  precomputed table, so the normal form is obtained by a single pass.
* ``FiniteCayley`` stores elements as indices into a multiplication table.
* ``RewritingSystem`` stores elements as shortlex-reduced ``bytes`` words
  under a user-supplied confluent system.

Raw words are sequences of signed generator indices: ``k`` stands for the
``k``-th generator (1-based) and ``-k`` for its inverse.
"""

from __future__ import annotations

import logging
import random
import re
import zlib
from array import array
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels
from ._pykernels import CANCEL, KEEP

log = logging.getLogger(__name__)

Form = Union[bytes, int]

ALPHABET = "abcdefghijklmnopqrstuvwxyz"
_TOKEN = re.compile(r"([a-z])('*)")


class GroupError(ValueError):
    """Invalid group definition or element."""


class BackendMismatch(GroupError):
    pass


@dataclass(frozen=True)
class GroupElement:
    backend_id: str
    form: Form

    def __repr__(self) -> str:
        return f"GroupElement({self.backend_id!r}, {self.form!r})"


class GroupBackend:
    """Common surface of every backend.

    Subclasses provide ``mul_forms``, ``inv_forms``, ``identity_form``,
    ``generator_form`` and the kernel dispatch methods.
    """

    kind: str = ""
    backend_id: str = ""
    ngens: int = 0
    identity_form: Form = b""

    def __init__(self, kernel=None) -> None:
        self.kernel = kernel if kernel is not None else kernels.active

    # -- element construction -------------------------------------------
    def element(self, form: Form) -> GroupElement:
        return GroupElement(self.backend_id, form)

    @property
    def identity(self) -> GroupElement:
        return self.element(self.identity_form)

    def _check(self, x: GroupElement) -> Form:
        if x.backend_id != self.backend_id:
            raise BackendMismatch(f"element of {x.backend_id} used in {self.backend_id}")
        return x.form

    def canonicalize(self, word: Iterable[int]) -> GroupElement:
        form = self.identity_form
        for k in word:
            if not isinstance(k, (int, np.integer)) or k == 0 or abs(k) > self.ngens:
                raise GroupError(f"generator index {k} out of range 1..{self.ngens}")
            g = self.generator_form(abs(int(k)) - 1)
            if k < 0:
                g = self.inv_forms(g)
            form = self.mul_forms(form, g)
        return self.element(form)

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.element(self.mul_forms(self._check(x), self._check(y)))

    def invert(self, x: GroupElement) -> GroupElement:
        return self.element(self.inv_forms(self._check(x)))

    # -- text -------------------------------------------------------------
    def parse_word(self, text: str) -> GroupElement:
        """Parse ``ab``, ``bba``, ``a'b`` (``'`` inverts the preceding letter)
        or ``1`` for the identity."""
        text = text.strip()
        if text == "1":
            return self.identity
        pos = 0
        word = []
        for m in _TOKEN.finditer(text):
            if m.start() != pos:
                break
            idx = ALPHABET.index(m.group(1)) + 1
            word.append(-idx if len(m.group(2)) % 2 else idx)
            pos = m.end()
        if pos != len(text) or not text:
            raise GroupError(f"cannot parse word {text!r}")
        return self.canonicalize(word)

    def format_form(self, form: Form) -> str:
        raise NotImplementedError

    def format(self, x: GroupElement) -> str:
        return self.format_form(self._check(x))

    def standard_generators(self) -> list[GroupElement]:
        """Every generator together with its inverse, deduplicated."""
        out: list[Form] = []
        for j in range(self.ngens):
            g = self.generator_form(j)
            for h in (g, self.inv_forms(g)):
                if h != self.identity_form and h not in out:
                    out.append(h)
        return [self.element(f) for f in out]

    def random_element(self, rng: random.Random, length: int) -> GroupElement:
        word = [rng.choice((-1, 1)) * rng.randint(1, self.ngens) for _ in range(length)]
        return self.canonicalize(word)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.backend_id}>"

    # -- to be provided ---------------------------------------------------
    def generator_form(self, j: int) -> Form:
        raise NotImplementedError

    def mul_forms(self, a: Form, b: Form) -> Form:
        raise NotImplementedError

    def inv_forms(self, a: Form) -> Form:
        raise NotImplementedError

    def expand(self, frontier: list, gens: list, seen: set) -> list:
        return self.kernel.expand_generic(frontier, gens, seen, self.mul_forms)

    def convolve_ints(self, x: dict, y: dict) -> dict:
        return self.kernel.convolve_generic(x, y, self.mul_forms)


class _LetterWordGroup(GroupBackend):
    """Free products of cyclic groups over a merge table of letters."""

    def __init__(self, orders: Sequence[int], kernel=None) -> None:
        super().__init__(kernel)
        orders = [int(m) for m in orders]
        if not orders or any(m < 0 for m in orders):
            raise GroupError("orders must be a nonempty list of nonnegative integers")
        letters: list[tuple[int, int]] = []
        for j, m in enumerate(orders):
            if m == 0:
                letters += [(j, 1), (j, -1)]
            else:
                letters += [(j, e) for e in range(1, m)]
        if len(letters) > 250:
            raise GroupError("alphabet too large (more than 250 letters)")
        code = {lt: i for i, lt in enumerate(letters)}
        n = len(letters)
        merge = bytearray(n * n)
        inv = bytearray(n)
        for x, (jx, ex) in enumerate(letters):
            m = orders[jx]
            inv[x] = code[(jx, -ex)] if m == 0 else code[(jx, m - ex)]
            for y, (jy, ey) in enumerate(letters):
                if jx != jy:
                    r = KEEP
                elif m == 0:
                    r = CANCEL if ex + ey == 0 else KEEP
                else:
                    e = (ex + ey) % m
                    r = CANCEL if e == 0 else code[(jx, e)]
                merge[x * n + y] = r
        self.orders = tuple(orders)
        self.letters = tuple(letters)
        self._code = code
        self.merge = bytes(merge)
        self.inv_table = bytes(inv)
        self.nletters = n
        self.ngens = len(orders)

    def generator_form(self, j: int) -> bytes:
        if self.orders[j] == 1:
            return b""
        return bytes((self._code[(j, 1)],))

    def mul_forms(self, a: bytes, b: bytes) -> bytes:
        return self.kernel.word_mul(a, b, self.merge, self.nletters)

    def inv_forms(self, a: bytes) -> bytes:
        return self.kernel.word_inv(a, self.inv_table)

    def expand(self, frontier, gens, seen):
        return self.kernel.expand_words(frontier, gens, seen, self.merge, self.nletters)

    def convolve_ints(self, x, y):
        return self.kernel.convolve_words(x, y, self.merge, self.nletters)

    def syllables(self, form: bytes) -> list[tuple[int, int]]:
        """Exponent-compressed view: list of (factor, exponent)."""
        out: list[list[int]] = []
        for c in form:
            j, e = self.letters[c]
            if out and out[-1][0] == j:
                out[-1][1] += e
            else:
                out.append([j, e])
        return [(j, e) for j, e in out]

    def format_form(self, form: bytes) -> str:
        if not form:
            return "1"
        parts = []
        for c in form:
            j, e = self.letters[c]
            parts.append(ALPHABET[j] * e if e > 0 else (ALPHABET[j] + "'") * -e)
        return "".join(parts)


class FreeGroup(_LetterWordGroup):
    kind = "free"

    def __init__(self, rank: int, kernel=None) -> None:
        if rank < 1:
            raise GroupError("free group rank must be >= 1")
        super().__init__([0] * rank, kernel)
        self.rank = rank
        self.backend_id = f"free:{rank}"


class FreeProductCyclic(_LetterWordGroup):
    kind = "fpc"

    def __init__(self, orders: Sequence[int], kernel=None) -> None:
        super().__init__(orders, kernel)
        self.backend_id = "fpc:" + ",".join(str(m) for m in self.orders)


class FiniteCayley(GroupBackend):
    kind = "cayley"

    def __init__(self, table, inverses=None, generators=None, kernel=None, name=None) -> None:
        super().__init__(kernel)
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("Cayley table must be a nonempty square matrix")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise GroupError("Cayley table entries out of range")
        ident = [e for e in range(n) if (t[e] == np.arange(n)).all() and (t[:, e] == np.arange(n)).all()]
        if len(ident) != 1:
            raise GroupError("Cayley table has no two-sided identity")
        e = ident[0]
        for axis_rows in (t, t.T):
            if not all(len(set(row.tolist())) == n for row in axis_rows):
                raise GroupError("Cayley table is not a Latin square")
        if n <= 512:
            for a in range(n):
                # (a b) c == a (b c) for all b, c
                if not (t[t[a]] == t[a][t]).all():
                    raise GroupError(f"Cayley table is not associative (first failure at a={a})")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 100_000))
            if not (t[t[a, b], c] == t[a, t[b, c]]).all():
                raise GroupError("Cayley table is not associative")
            log.warning("table of order %d: associativity checked on 100000 random triples", n)
        computed = np.argmax(t == e, axis=1)
        if inverses is not None:
            inv = np.asarray(inverses, dtype=np.int64)
            if inv.shape != (n,) or not (t[np.arange(n), inv] == e).all():
                raise GroupError("inverse table does not match the Cayley table")
        self.order = n
        self.identity_form = int(e)
        self.inverses = tuple(int(x) for x in computed)
        self.table = t
        self.flat = array("i", t.ravel().tolist())
        self.generators = tuple(range(n)) if generators is None else tuple(int(g) for g in generators)
        if any(not 0 <= g < n for g in self.generators):
            raise GroupError("generator index out of range")
        self.ngens = len(self.generators)
        self.backend_id = name or f"cayley:{n}:{zlib.crc32(t.tobytes()):08x}"

    def generator_form(self, j: int) -> int:
        return self.generators[j]

    def mul_forms(self, a: int, b: int) -> int:
        return self.flat[a * self.order + b]

    def inv_forms(self, a: int) -> int:
        return self.inverses[a]

    def expand(self, frontier, gens, seen):
        return self.kernel.expand_table(frontier, gens, seen, self.flat, self.order)

    def convolve_ints(self, x, y):
        return self.kernel.convolve_table(x, y, self.flat, self.order)

    def parse_word(self, text: str) -> GroupElement:
        text = text.strip()
        m = re.fullmatch(r"(\d+)('*)", text)
        if m:
            g = int(m.group(1))
            if g >= self.order:
                raise GroupError(f"element {g} out of range")
            return self.element(self.inverses[g] if len(m.group(2)) % 2 else g)
        return super().parse_word(text)

    def format_form(self, form: int) -> str:
        return str(form)

    def standard_generators(self) -> list[GroupElement]:
        out: list[int] = []
        for g in self.generators:
            for h in (g, self.inverses[g]):
                if h != self.identity_form and h not in out:
                    out.append(h)
        return [self.element(f) for f in out]


def cyclic_group(n: int, **kw) -> FiniteCayley:
    """Z/n as a Cayley table."""
    return FiniteCayley([[(i + j) % n for j in range(n)] for i in range(n)], name=f"cayley:Z{n}", **kw)


def _shortlex_key(w: bytes) -> tuple[int, bytes]:
    return (len(w), w)


class RewritingSystem(GroupBackend):
    """Group given by a confluent shortlex rewriting system.

    Letters ``2j`` and ``2j+1`` are the j-th generator and its inverse; the
    free cancellation rules are added automatically. Shortlex order uses
    ``a < a' < b < b' < ...``.
    """

    kind = "rws"

    def __init__(self, ngens: int, rules: Sequence[tuple[Sequence[int], Sequence[int]]],
                 kernel=None, name=None) -> None:
        super().__init__(kernel)
        if ngens < 1:
            raise GroupError("rewriting system needs at least one generator")
        self.ngens = ngens
        rule_map: dict[bytes, bytes] = {}
        for j in range(ngens):
            rule_map[bytes((2 * j, 2 * j + 1))] = b""
            rule_map[bytes((2 * j + 1, 2 * j))] = b""
        for lhs, rhs in rules:
            l, r = self._encode(lhs), self._encode(rhs)
            if _shortlex_key(l) <= _shortlex_key(r):
                raise GroupError(f"rule {self.format_form(l)} -> {self.format_form(r)} is not shortlex-decreasing")
            if l in rule_map and rule_map[l] != r:
                raise GroupError(f"two rules share the left side {self.format_form(l)}")
            rule_map[l] = r
        self.rules = rule_map
        self._lengths = sorted({len(l) for l in rule_map})
        self._maxlen = max(self._lengths)
        bad = self.critical_pair_failures()
        if bad:
            w, x, y = bad[0]
            raise GroupError(
                f"rewriting system is not locally confluent: {self.format_form(w)} reduces to "
                f"{self.format_form(x)} and {self.format_form(y)}"
            )
        self.backend_id = name or "rws:" + ";".join(
            f"{self.format_form(l)}>{self.format_form(r)}" for l, r in sorted(rule_map.items())
        )

    def _encode(self, word: Sequence[int]) -> bytes:
        out = []
        for k in word:
            if k == 0 or abs(k) > self.ngens:
                raise GroupError(f"generator index {k} out of range 1..{self.ngens}")
            out.append(2 * (abs(k) - 1) + (k < 0))
        return bytes(out)

    def reduce(self, w: bytes) -> bytes:
        rules, lengths = self.rules, self._lengths
        i = 0
        while i < len(w):
            for L in lengths:
                r = rules.get(w[i : i + L])
                if r is not None:
                    w = w[:i] + r + w[i + L :]
                    i = max(0, i - self._maxlen + 1)
                    break
            else:
                i += 1
        return w

    def critical_pair_failures(self) -> list[tuple[bytes, bytes, bytes]]:
        bad = []
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                # overlaps: proper suffix of l1 equals proper prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        w = l1 + l2[k:]
                        x, y = self.reduce(r1 + l2[k:]), self.reduce(l1[:-k] + r2)
                        if x != y:
                            bad.append((w, x, y))
                # inclusion of l2 in l1
                if l1 != l2:
                    start = l1.find(l2)
                    while start != -1:
                        x = self.reduce(r1)
                        y = self.reduce(l1[:start] + r2 + l1[start + len(l2):])
                        if x != y:
                            bad.append((l1, x, y))
                        start = l1.find(l2, start + 1)
        return bad

    def generator_form(self, j: int) -> bytes:
        return self.reduce(bytes((2 * j,)))

    def mul_forms(self, a: bytes, b: bytes) -> bytes:
        return self.reduce(a + b)

    def inv_forms(self, a: bytes) -> bytes:
        return self.reduce(bytes(c ^ 1 for c in reversed(a)))

    def canonicalize(self, word: Iterable[int]) -> GroupElement:
        return self.element(self.reduce(self._encode(list(word))))

    def format_form(self, form: bytes) -> str:
        if not form:
            return "1"
        return "".join(ALPHABET[c >> 1] + ("'" if c & 1 else "") for c in form)


@dataclass(frozen=True)
class GeneratingSet:
    backend_id: str
    forms: tuple
    symmetric_flag: bool
    contains_identity: bool

    def __len__(self) -> int:
        return len(self.forms)

    @property
    def elements(self) -> list[GroupElement]:
        return [GroupElement(self.backend_id, f) for f in self.forms]


def generating_set(G: GroupBackend, elements: Iterable[GroupElement],
                   symmetric: bool | None = None) -> GeneratingSet:
    """Deduplicate ``elements`` and record whether the set is symmetric.

    Passing ``symmetric=True`` demands symmetry and raises if it fails.
    """
    forms: list[Form] = []
    for x in elements:
        f = G._check(x)
        if f not in forms:
            forms.append(f)
    if not forms:
        raise GroupError("generating set is empty")
    fs = set(forms)
    sym = all(G.inv_forms(f) in fs for f in forms)
    if symmetric and not sym:
        raise GroupError("generating set is not closed under inversion")
    return GeneratingSet(G.backend_id, tuple(forms), sym, G.identity_form in fs)


def validate_symmetric(G: GroupBackend, S: GeneratingSet) -> bool:
    if S.backend_id != G.backend_id:
        raise BackendMismatch("generating set belongs to another backend")
    fs = set(S.forms)
    return all(G.inv_forms(f) in fs for f in S.forms)


def parse_generators(G: GroupBackend, text: str) -> GeneratingSet:
    """``standard`` or a comma-separated list of words."""
    text = text.strip()
    if text == "standard":
        return generating_set(G, G.standard_generators())
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise GroupError("empty generator list")
    return generating_set(G, [G.parse_word(t) for t in tokens])
