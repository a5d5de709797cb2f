"""Permutations of {1..n} and small symmetric groups.

Composition convention: ``p * q`` (and ``compose(p, q)``) applies ``q``
first and then ``p``.  A word ``g1 g2 ... gk`` therefore evaluates to
``img(g1) * img(g2) * ... * img(gk)``, which makes word evaluation a
homomorphism from the free group.

Points are stored 0-based internally; everything rendered for humans is
1-based cycle notation such as ``(1,2)(3,4)``, with ``()`` for the identity.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import DegreeError, RelatorViolation
from .words import Presentation, Word

MAX_DEGREE = 6


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def transposition(n: int, i: int, j: int) -> Permutation:
    """The transposition of the 1-based points ``i`` and ``j``."""
    imgs = list(range(n))
    imgs[i - 1], imgs[j - 1] = j - 1, i - 1
    return Permutation(tuple(imgs))


def tau(n: int, i: int) -> Permutation:
    """Adjacent transposition ``(i, i+1)``, 1-based."""
    return transposition(n, i, i + 1)


def compose(p: Permutation, q: Permutation) -> Permutation:
    if p.degree != q.degree:
        raise DegreeError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, by: Permutation) -> Permutation:
    """``by * p * by^-1``."""
    return compose(compose(by, p), by.inverse())


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    out = identity(n)
    for p in perms:
        out = compose(out, p)
    return out


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation (1-based); cycles compose right to left."""
    text = text.strip()
    out = identity(n)
    if text in ("()", ""):
        return out
    if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\))+", text):
        raise ValueError(f"malformed cycle notation {text!r}")
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) - 1 for x in body.split(",")]
        if any(not 0 <= x < n for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({body}) for degree {n}")
        imgs = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a] = b
        out = compose(out, Permutation(tuple(imgs)))
    return out


def evaluate_word(word: Word, images: Sequence[Permutation]) -> Permutation:
    if not images:
        raise DegreeError("no images given")
    n = images[0].degree
    if any(p.degree != n for p in images):
        raise DegreeError("images have different degrees")
    cur = list(range(n))
    for gen, sign in word:
        try:
            img = images[gen]
        except IndexError:
            raise KeyError(f"no image for generator index {gen}") from None
        arr = img.images if sign > 0 else img.inverse().images
        cur = [cur[j] for j in arr]
    return Permutation(tuple(cur))


class Closure(NamedTuple):
    elements: frozenset[Permutation]
    is_abelian: bool
    is_full_symmetric: bool


def closure(gens: Iterable[Permutation]) -> Closure:
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise DegreeError("generators have different degrees")
    if n > MAX_DEGREE:
        raise DegreeError(f"degree {n} exceeds cap {MAX_DEGREE}")
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    abelian = all(compose(a, b) == compose(b, a) for a, b in itertools.combinations(gens, 2))
    return Closure(frozenset(seen), abelian, len(seen) == math.factorial(n))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic one-line order."""
    return tuple(Permutation(t) for t in itertools.permutations(range(n)))


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _rep_of_type(parts: Sequence[int], n: int) -> Permutation:
    imgs = list(range(n))
    start = 0
    for k in parts:
        for i in range(k):
            imgs[start + i] = start + (i + 1) % k
        start += k
    return Permutation(tuple(imgs))


# class order for S_4 used by the character table: (), (12)(34), (12), (1234), (123)
_S4_ORDER = [(1, 1, 1, 1), (2, 2), (2, 1, 1), (4,), (3, 1)]


def cycle_types(n: int) -> list[tuple[int, ...]]:
    if n == 4:
        return list(_S4_ORDER)
    types = list(_partitions(n))
    return sorted(types, key=lambda t: (n - t.count(1), tuple(-x for x in t)))


def conjugacy_classes(n: int) -> list[tuple[Permutation, int]]:
    """(representative, size) per cycle type of S_n, 1 <= n <= 6."""
    if not 1 <= n <= MAX_DEGREE:
        raise DegreeError(f"degree must be in 1..{MAX_DEGREE}")
    counts = Counter(p.cycle_type() for p in all_permutations(n))
    return [(_rep_of_type([k for k in t if k > 1], n), counts[t]) for t in cycle_types(n)]


def class_index(p: Permutation) -> int:
    """Position of the conjugacy class of ``p`` in ``conjugacy_classes``."""
    return cycle_types(p.degree).index(p.cycle_type())


class SymmetricGroup:
    """Index-based multiplication table of S_n, used by the search code."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_DEGREE:
            raise DegreeError(f"degree must be in 1..{MAX_DEGREE}")
        self.n = n
        self.elements = all_permutations(n)
        self.index = {p: i for i, p in enumerate(self.elements)}
        size = len(self.elements)
        self.mul = [
            [self.index[compose(p, q)] for q in self.elements] for p in self.elements
        ]
        self.inv = [self.index[p.inverse()] for p in self.elements]
        self.identity = self.index[identity(n)]
        self.involutions = [i for i in range(size) if self.mul[i][i] == self.identity]

    def __len__(self) -> int:
        return len(self.elements)

    def evaluate(self, word: Word, images: Sequence[int]) -> int:
        mul, inv = self.mul, self.inv
        cur = self.identity
        for gen, sign in word:
            x = images[gen]
            cur = mul[cur][x if sign > 0 else inv[x]]
        return cur

    def conjugate(self, x: int, by: int) -> int:
        return self.mul[self.mul[by][x]][self.inv[by]]


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> SymmetricGroup:
    return SymmetricGroup(n)


@dataclass(frozen=True)
class Homomorphism:
    """A presentation together with permutation images of its generators.

    The images are validated against every relator at construction.
    """

    presentation: Presentation
    images: tuple[Permutation, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.presentation.ngens:
            raise ValueError(
                f"{len(images)} images for {self.presentation.ngens} generators"
            )
        if not images:
            raise ValueError("presentation without generators")
        n = images[0].degree
        if any(p.degree != n for p in images):
            raise DegreeError("images have different degrees")
        for r in self.presentation.relators:
            if not evaluate_word(r, images).is_identity():
                raise RelatorViolation(
                    f"relator {self.presentation.format(r)} not satisfied by "
                    f"{[format_cycles(p) for p in images]}"
                )

    @property
    def degree(self) -> int:
        return self.images[0].degree

    def __call__(self, word: Word) -> Permutation:
        return evaluate_word(word, self.images)

    def image(self) -> Closure:
        return closure(self.images)

    def conjugated(self, by: Permutation) -> "Homomorphism":
        return Homomorphism(self.presentation, tuple(conjugate(p, by) for p in self.images))

    def key(self) -> tuple[int, ...]:
        """Concatenated one-line images; the lexicographic sort key."""
        return tuple(i for p in self.images for i in p.images)

    def describe(self) -> dict[str, str]:
        return {g: format_cycles(p) for g, p in zip(self.presentation.generators, self.images)}
