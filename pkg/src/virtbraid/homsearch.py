"""Enumeration of homomorphisms into S_n, conjugacy classification, descent
and kernel-equality tests, and the characteristic-subgroup certificate.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DegreeError, VirtbraidError
from .intlin import AbInv
from .perms import Homomorphism, Permutation, closure, symmetric_group
from .words import Presentation, Word

MAX_SEARCH_DEGREE = 4


def _unchecked(pres: Presentation, images: tuple[Permutation, ...]) -> Homomorphism:
    """Build a Homomorphism whose images are already known to satisfy the relators."""
    h = object.__new__(Homomorphism)
    object.__setattr__(h, "presentation", pres)
    object.__setattr__(h, "images", images)
    return h


def search_order(pres: Presentation) -> list[int]:
    """Involution generators first; within each group, greedily pick the
    generator that completes the most relators."""
    rel_gens = [frozenset(g for g, _ in r) for r in pres.relators]
    order: list[int] = []
    placed: set[int] = set()
    for pool in (sorted(pres.involutions), [g for g in range(pres.ngens) if g not in pres.involutions]):
        remaining = list(pool)
        while remaining:
            def score(g):
                now = placed | {g}
                done = sum(1 for s in rel_gens if g in s and s <= now)
                touch = sum(1 for s in rel_gens if g in s and s & placed)
                return (done, touch, -g)
            g = max(remaining, key=score)
            remaining.remove(g)
            order.append(g)
            placed.add(g)
    return order


def _plan(pres: Presentation, order: Sequence[int]) -> list[list[Word]]:
    """Relators to check right after assigning each position of ``order``."""
    pos = {g: i for i, g in enumerate(order)}
    checks: list[list[Word]] = [[] for _ in order]
    for r in pres.relators:
        if r:
            checks[max(pos[g] for g, _ in r)].append(r)
    return checks


def _search(pres: Presentation, n: int, first: int | None) -> list[tuple[int, ...]]:
    sg = symmetric_group(n)
    order = search_order(pres)
    checks = _plan(pres, order)
    every = list(range(len(sg)))
    cands = [sg.involutions if g in pres.involutions else every for g in order]
    ident = sg.identity
    images = [0] * pres.ngens
    out: list[tuple[int, ...]] = []
    depth_max = len(order)

    def rec(d: int):
        if d == depth_max:
            out.append(tuple(images))
            return
        g = order[d]
        pool = cands[d] if not (d == 0 and first is not None) else [first]
        for x in pool:
            images[g] = x
            if all(sg.evaluate(r, images) == ident for r in checks[d]):
                rec(d + 1)

    if pres.ngens:
        rec(0)
    return out


def _search_task(args):
    return _search(*args)


def enumerate_homs(pres: Presentation, n: int, threads: int = 1) -> list[Homomorphism]:
    """All homomorphisms ``pres -> S_n``, sorted by concatenated one-line images."""
    if not 1 <= n <= MAX_SEARCH_DEGREE:
        raise DegreeError(f"homomorphism enumeration is capped at degree {MAX_SEARCH_DEGREE}, got {n}")
    if pres.ngens == 0:
        raise VirtbraidError("presentation has no generators")
    sg = symmetric_group(n)
    if threads > 1:
        g0 = search_order(pres)[0]
        firsts = sg.involutions if g0 in pres.involutions else range(len(sg))
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = ex.map(_search_task, [(pres, n, x) for x in firsts])
            tuples = [t for part in parts for t in part]
    else:
        tuples = _search(pres, n, None)
    tuples.sort()
    els = sg.elements
    return [_unchecked(pres, tuple(els[i] for i in t)) for t in tuples]


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class HomClass:
    representative: Homomorphism
    orbit_size: int
    image_order: int
    surjective: bool
    abelian_image: bool
    matched_name: str | None = None

    @property
    def flags(self) -> dict[str, bool]:
        return {"surjective": self.surjective, "abelian_image": self.abelian_image}

    @property
    def label(self) -> str:
        if self.matched_name:
            return self.matched_name
        return " ".join(f"{g}->{p}" for g, p in self.representative.describe().items())


def _index_tuple(h: Homomorphism) -> tuple[int, ...]:
    sg = symmetric_group(h.degree)
    return tuple(sg.index[p] for p in h.images)


def _orbit(t: tuple[int, ...], n: int) -> set[tuple[int, ...]]:
    sg = symmetric_group(n)
    return {tuple(sg.conjugate(x, u) for x in t) for u in range(len(sg))}


def canonical_form(h: Homomorphism) -> Homomorphism:
    """The lexicographically least conjugate of ``h``."""
    sg = symmetric_group(h.degree)
    best = min(_orbit(_index_tuple(h), h.degree))
    return _unchecked(h.presentation, tuple(sg.elements[i] for i in best))


def classify(homs: Iterable[Homomorphism], named: Iterable = ()) -> list[HomClass]:
    """Partition homomorphisms into conjugacy classes.

    ``named`` is an optional iterable of catalog ``NamedHom`` objects (or
    ``(name, Homomorphism)`` pairs); a class whose canonical representative
    coincides with a named hom's canonical form gets that name.
    """
    homs = list(homs)
    if not homs:
        return []
    n = homs[0].degree
    pres = homs[0].presentation
    if any(h.degree != n or h.presentation != pres for h in homs):
        raise VirtbraidError("classify needs homomorphisms with one source and degree")
    names: dict[tuple[int, ...], str] = {}
    for item in named:
        name, hom = (item.name, item.hom) if hasattr(item, "hom") else item
        if hom.degree == n:
            names.setdefault(min(_orbit(_index_tuple(hom), n)), name)
    sg = symmetric_group(n)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for h in homs:
        t = _index_tuple(h)
        if t in seen:
            continue
        orb = _orbit(t, n)
        seen |= orb
        rep = min(orb)
        rep_hom = _unchecked(pres, tuple(sg.elements[i] for i in rep))
        img = rep_hom.image()
        classes.append(HomClass(
            representative=rep_hom,
            orbit_size=len(orb),
            image_order=len(img.elements),
            surjective=img.is_full_symmetric,
            abelian_image=img.is_abelian,
            matched_name=names.get(rep),
        ))
    classes.sort(key=lambda c: _index_tuple(c.representative))
    return classes


FILTERS = ("all", "nonabelian", "surjective", "nontrivial")


def filter_classes(classes: Iterable[HomClass], which: str) -> list[HomClass]:
    if which == "all":
        return list(classes)
    if which == "nonabelian":
        return [c for c in classes if not c.abelian_image]
    if which == "surjective":
        return [c for c in classes if c.surjective]
    if which == "nontrivial":
        return [c for c in classes if c.image_order > 1]
    raise ValueError(f"unknown filter {which!r}")


# ---------------------------------------------------------------- descent and kernels


def descends(h: Homomorphism, extra_relators: Iterable[Word]) -> bool:
    """Does ``h`` kill every extra relator (i.e. factor through the quotient)?"""
    return all(h(r).is_identity() for r in extra_relators)


def _pair_closure(gens: Sequence[tuple[Permutation, Permutation]]) -> int:
    start = (gens[0][0].inverse() * gens[0][0], gens[0][1].inverse() * gens[0][1])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for a, b in frontier:
            for g, k in gens:
                y = (a * g, b * k)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def kernel_equal(h1: Homomorphism, h2: Homomorphism) -> bool:
    """Do ``h1`` and ``h2`` (same source) have the same kernel?

    Equivalent to ``h1(g) -> h2(g)`` extending to an isomorphism of images,
    which holds exactly when the subgroup of image(h1) x image(h2) generated
    by the pairs ``(h1(g), h2(g))`` is the graph of a bijection.
    """
    if h1.presentation.generators != h2.presentation.generators:
        raise VirtbraidError("kernel_equal needs homomorphisms on the same generators")
    o1 = len(h1.image().elements)
    o2 = len(h2.image().elements)
    if o1 != o2:
        return False
    return _pair_closure(list(zip(h1.images, h2.images))) == o1


# ---------------------------------------------------------------- certificate


class Verdict(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    NOT_CERTIFIED = "NOT_CERTIFIED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    target: HomClass
    offenders: tuple[HomClass, ...] = ()
    witnesses: tuple[tuple[HomClass, str], ...] = field(default=())

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    @property
    def reason(self) -> str:
        if self.certified:
            return "every class has different kernel invariants or an equal kernel"
        names = ", ".join(c.label for c in self.offenders)
        return f"kernels with equal invariants but different subgroups: {names}"


def characteristic_certificate(classes: Sequence[HomClass], target: HomClass,
                               invariants: Mapping[HomClass, AbInv]) -> Certificate:
    """Sufficient test that the kernel of ``target`` is characteristic.

    Every class must either have kernel invariants different from the
    target's (so its kernel is not isomorphic to the target kernel) or have
    literally the same kernel.
    """
    missing = [c for c in list(classes) + [target] if c not in invariants]
    if missing:
        raise KeyError(f"no invariants for {len(missing)} class(es), e.g. {missing[0].label}")
    goal = invariants[target]
    offenders = []
    witnesses = []
    for c in classes:
        if invariants[c] != goal:
            witnesses.append((c, "invariants differ"))
        elif kernel_equal(c.representative, target.representative):
            witnesses.append((c, "equal kernel"))
        else:
            offenders.append(c)
    verdict = Verdict.NOT_CERTIFIED if offenders else Verdict.CERTIFIED
    return Certificate(verdict, target, tuple(offenders), tuple(witnesses))


def find_class(classes: Iterable[HomClass], hom: Homomorphism) -> HomClass:
    """The class containing ``hom``."""
    t = min(_orbit(_index_tuple(hom), hom.degree))
    for c in classes:
        if _index_tuple(c.representative) == t:
            return c
    raise KeyError("homomorphism is not in the given classification")


def orbit_total(classes: Iterable[HomClass]) -> int:
    return sum(c.orbit_size for c in classes)


def centralizer_order(h: Homomorphism) -> int:
    return math.factorial(h.degree) // len(_orbit(_index_tuple(h), h.degree))


def image_closure(h: Homomorphism):
    return closure(h.images)
