"""Abelian invariants of kernels of homomorphisms onto finite permutation groups.

The cosets of ``Ker h`` correspond to the elements of ``image(h)``, so the
coset table is read off directly from the image.  Abelianized
Reidemeister-Schreier rewriting then gives a relation matrix over the
Schreier generators whose Smith normal form yields ``Ker(h)^Ab``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .intlin import AbInv, IntMatrix, smith_normal_form
from .perms import Homomorphism, Permutation, identity
from .words import Presentation, Word


@dataclass(frozen=True)
class CosetTable:
    """Cosets of ``Ker h`` indexed by image elements; coset 0 is the identity.

    ``action[g][c]`` is the coset reached from ``c`` by right multiplication
    with ``h(g)``; ``transversal[c]`` is the shortlex Schreier representative.
    ``tree`` is the set of (coset, generator) edges used by the transversal.
    """

    elements: tuple[Permutation, ...]
    action: tuple[tuple[int, ...], ...]
    transversal: tuple[Word, ...]
    tree: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.elements)

    def follow(self, start: int, word: Word) -> int:
        c = start
        for g, s in word:
            c = self.action[g][c] if s > 0 else self.inverse_action(g)[c]
        return c

    def inverse_action(self, g: int) -> tuple[int, ...]:
        act = self.action[g]
        inv = [0] * len(act)
        for c, d in enumerate(act):
            inv[d] = c
        return tuple(inv)


def coset_table(h: Homomorphism) -> CosetTable:
    e = identity(h.degree)
    index = {e: 0}
    elements = [e]
    reps: list[Word] = [()]
    tree: set[tuple[int, int]] = set()
    gens = h.images
    invs = [p.inverse() for p in gens]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        x = elements[c]
        for g in range(len(gens)):
            for s, img in ((1, gens[g]), (-1, invs[g])):
                y = x * img
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    reps.append(reps[c] + ((g, s),))
                    # the edge c --g--> y (or y --g--> c for an inverse letter)
                    tree.add((c, g) if s > 0 else (index[y], g))
                    queue.append(index[y])
    action = tuple(tuple(index[x * gens[g]] for x in elements) for g in range(len(gens)))
    return CosetTable(tuple(elements), action, tuple(reps), frozenset(tree))


@dataclass(frozen=True)
class KernelReport:
    invariants: AbInv
    schreier_generators: int
    matrix_shape: tuple[int, int]
    cosets: int

    def as_dict(self) -> dict:
        return {
            "invariants": str(self.invariants),
            "gap_format": self.invariants.gap_format(),
            "schreier_generators": self.schreier_generators,
            "matrix_shape": list(self.matrix_shape),
            "cosets": self.cosets,
        }


def relation_matrix(pres: Presentation, table: CosetTable) -> tuple[IntMatrix, int]:
    """Abelianized rewrites of every conjugate ``t r t^-1`` of every relator.

    Returns the matrix (one row per coset and relator, in that order) and
    the number of Schreier generators (its column count).
    """
    ncos = len(table)
    col: dict[tuple[int, int], int] = {}
    for c in range(ncos):
        for g in range(pres.ngens):
            if (c, g) not in table.tree:
                col[(c, g)] = len(col)
    inv_actions = [table.inverse_action(g) for g in range(pres.ngens)]
    rows = []
    for c in range(ncos):
        for r in pres.relators:
            row = [0] * len(col)
            x = c
            for g, s in r:
                if s > 0:
                    j = col.get((x, g))
                    if j is not None:
                        row[j] += 1
                    x = table.action[g][x]
                else:
                    x = inv_actions[g][x]
                    j = col.get((x, g))
                    if j is not None:
                        row[j] -= 1
            rows.append(row)
    return IntMatrix(rows, len(col)), len(col)


def kernel_report(pres: Presentation, h: Homomorphism) -> KernelReport:
    if h.presentation.generators != pres.generators:
        raise ValueError("homomorphism is defined on a different generating set")
    table = coset_table(h)
    matrix, ngen = relation_matrix(pres, table)
    inv, _ = smith_normal_form(matrix)
    return KernelReport(inv, ngen, matrix.shape, len(table))


def kernel_abelianization(pres: Presentation, h: Homomorphism) -> AbInv:
    return kernel_report(pres, h).invariants


def abelianization(pres: Presentation) -> AbInv:
    """Abelian invariants of the presented group itself."""
    rows = []
    for r in pres.relators:
        row = [0] * pres.ngens
        for g, s in r:
            row[g] += s
        rows.append(row)
    return smith_normal_form(IntMatrix(rows, pres.ngens))[0]
