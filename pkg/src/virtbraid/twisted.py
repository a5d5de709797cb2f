"""Twisted conjugacy (Reidemeister) classes.

``x ~ y`` iff ``x = z y endo(z)^-1`` for some ``z``.  On a finite group the
classes are the orbits of the left action ``z . y = z y endo(z)^-1``, so it
suffices to follow the action of a generating set; orbits are read off as
connected components of the resulting graph.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .crystal import INFINITE, CrystModel, eval_affine
from .errors import NotAHomomorphism, NotDescending, VirtbraidError
from .intlin import IntMatrix, abs_det, smith_normal_form
from .perms import all_permutations, compose, identity, symmetric_group

MAX_ELEMENTS = 20000


@dataclass
class FiniteGroupTable:
    """A finite group by its multiplication table (identity at index 0) and
    an endomorphism given as an index array."""

    elements: list
    mul: np.ndarray
    endo: np.ndarray
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        self.mul = np.asarray(self.mul, dtype=np.int64)
        self.endo = np.asarray(self.endo, dtype=np.int64)
        size = len(self.elements)
        if self.mul.shape != (size, size) or self.endo.shape != (size,):
            raise VirtbraidError("table shapes do not match the element list")
        if size > MAX_ELEMENTS:
            raise VirtbraidError(f"table exceeds {MAX_ELEMENTS} elements")
        if not (np.array_equal(self.mul[0], np.arange(size)) and np.array_equal(self.mul[:, 0], np.arange(size))):
            raise VirtbraidError("index 0 is not the identity")
        rows, cols = np.nonzero(self.mul == 0)
        inv = np.empty(size, dtype=np.int64)
        inv[rows] = cols
        self.inv = inv

    def __len__(self) -> int:
        return len(self.elements)

    def check_associative(self, samples: int = 200, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, len(self), size=(3, samples))
        m = self.mul
        return bool(np.array_equal(m[m[a, b], c], m[a, m[b, c]]))

    def check_endo(self) -> None:
        e, m = self.endo, self.mul
        for a in range(len(self)):
            if not np.array_equal(e[m[a]], m[e[a], e]):
                raise NotAHomomorphism(f"endomorphism fails on element {self.elements[a]!r}")

    def with_endo(self, endo) -> "FiniteGroupTable":
        return FiniteGroupTable(self.elements, self.mul, np.asarray(endo))

    def generating_set(self) -> list[int]:
        """Greedy generating set: add the first element outside the subgroup
        generated so far until everything is covered."""
        size = len(self)
        inside = np.zeros(size, dtype=bool)
        inside[0] = True
        gens: list[int] = []
        while not inside.all():
            g = int(np.flatnonzero(~inside)[0])
            gens.append(g)
            frontier = np.flatnonzero(inside)
            while frontier.size:
                new = np.unique(self.mul[frontier][:, gens].ravel())
                new = new[~inside[new]]
                inside[new] = True
                frontier = new
        return gens


def _count_orbits(size: int, maps: Iterable[np.ndarray]) -> int:
    src, dst = [], []
    for f in maps:
        src.append(np.arange(size))
        dst.append(f)
    if not src:
        return size
    s = np.concatenate(src)
    d = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(s), dtype=np.int8), (s, d)), shape=(size, size))
    return int(connected_components(graph, directed=True, connection="weak")[0])


def twisted_classes_finite(table: FiniteGroupTable, exhaustive: bool = False, check: bool = True) -> int:
    """Number of twisted conjugacy classes of ``table.endo``.

    With ``exhaustive`` every element acts (all ``(x, z)`` pairs); otherwise
    a generating set is used, which gives the same orbits.
    """
    if check:
        table.check_endo()
    zs = range(len(table)) if exhaustive else table.generating_set()
    m, e, inv = table.mul, table.endo, table.inv
    return _count_orbits(len(table), (m[m[z], inv[e[z]]] for z in zs))


# ---------------------------------------------------------------- table builders


def symmetric_group_table(n: int) -> FiniteGroupTable:
    sg = symmetric_group(n)
    # reorder so that the identity sits at index 0
    order = [sg.identity] + [i for i in range(len(sg)) if i != sg.identity]
    pos = {old: new for new, old in enumerate(order)}
    mul = np.array([[pos[sg.mul[a][b]] for b in order] for a in order])
    return FiniteGroupTable([sg.elements[i] for i in order], mul, np.arange(len(order)))


def abelian_table(k: int, m: int, matrix: Sequence[Sequence[int]] | None = None) -> FiniteGroupTable:
    """(Z_k)^m with the endomorphism ``x -> matrix @ x`` (identity by default)."""
    size = k**m
    if size > MAX_ELEMENTS:
        raise VirtbraidError(f"(Z_{k})^{m} exceeds {MAX_ELEMENTS} elements")
    vecs = np.array(list(itertools.product(range(k), repeat=m)), dtype=np.int64).reshape(size, m)
    weights = k ** np.arange(m - 1, -1, -1)
    mul = ((vecs[:, None, :] + vecs[None, :, :]) % k) @ weights
    A = np.eye(m, dtype=np.int64) if matrix is None else np.asarray(matrix, dtype=np.int64).reshape(m, m)
    endo = ((vecs @ A.T) % k) @ weights
    return FiniteGroupTable([tuple(v) for v in vecs], mul, endo)


def cyclic_table(k: int, multiplier: int = 1) -> FiniteGroupTable:
    return abelian_table(k, 1, [[multiplier]])


def abelian_cokernel_order(k: int, matrix: Sequence[Sequence[int]]) -> int:
    """|(Z_k)^m / (I - A)(Z_k)^m|, computed by Smith normal form over Z."""
    m = len(matrix)
    rows = [[int(i == j) - int(matrix[j][i]) for j in range(m)] for i in range(m)]  # columns of I - A
    rows += [[k * int(i == j) for j in range(m)] for i in range(m)]
    inv, _ = smith_normal_form(IntMatrix(rows, m))
    return inv.order


def reidemeister_lattice(matrix: Sequence[Sequence[int]]) -> int | str:
    """|det(I - A)|, or INFINITE when it vanishes."""
    mat = IntMatrix.coerce(matrix)
    if mat.nrows != mat.ncols:
        raise ValueError("matrix is not square")
    n = mat.nrows
    diff = IntMatrix([[int(i == j) - mat.rows[i][j] for j in range(n)] for i in range(n)], n)
    d = abs_det(diff)
    return d if d else INFINITE


# ---------------------------------------------------------------- quotient towers


class TowerVerdict(str, enum.Enum):
    EVIDENCE_CONSISTENT = "EVIDENCE_CONSISTENT"
    INCONSISTENT = "INCONSISTENT"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


class _Quotient:
    """(Z_k)^m x| P for a crystallographic model, elements encoded as
    ``vector_index * |P| + perm_index`` with P = S_n."""

    def __init__(self, model: CrystModel, k: int):
        self.model, self.k = model, k
        m = model.dimension
        self.perms = list(all_permutations(model.degree))
        self.pidx = {p: i for i, p in enumerate(self.perms)}
        self.np_ = len(self.perms)
        self.size = k**m * self.np_
        if self.size > MAX_ELEMENTS:
            raise VirtbraidError(
                f"(Z_{k})^{m} x| S_{model.degree} has {self.size} elements (cap {MAX_ELEMENTS})")
        self.m = m
        self.weights = k ** np.arange(m - 1, -1, -1)
        self.vecs = np.array(list(itertools.product(range(k), repeat=m)), dtype=np.int64).reshape(-1, m)
        # basis permutation of each perm: coordinate (A(w) x)[bp[j]] = x[j]
        self.scatter = np.array([model.action[p] for p in self.perms], dtype=np.int64).reshape(self.np_, m)
        self.pmul = np.array([[self.pidx[compose(p, q)] for q in self.perms] for p in self.perms])
        ident = self.pidx[identity(model.degree)]
        self.identity = self.encode(np.zeros(m, dtype=np.int64), ident)

    def encode(self, vec, p):
        return int((np.asarray(vec) % self.k) @ self.weights) * self.np_ + p

    def decode_all(self):
        idx = np.arange(self.size)
        return self.vecs[idx // self.np_], idx % self.np_

    def element(self, affine) -> int:
        return self.encode(np.asarray(affine.vector, dtype=np.int64), self.pidx[affine.perm])

    def left_mul(self, a: int, xs_vec, xs_p):
        """a * x for arrays of elements x."""
        av, ap = self.vecs[a // self.np_], a % self.np_
        moved = np.empty_like(xs_vec)
        moved[:, self.scatter[ap]] = xs_vec
        return (av + moved) % self.k, self.pmul[ap][xs_p]

    def right_mul(self, xs_vec, xs_p, b: int):
        """x * b for arrays of elements x."""
        bv, bp = self.vecs[b // self.np_], b % self.np_
        moved = np.zeros_like(xs_vec)
        # A(x_p) b_v, per row
        rows = np.arange(len(xs_p))[:, None]
        moved[rows, self.scatter[xs_p]] = bv[None, :]
        return (xs_vec + moved) % self.k, self.pmul[xs_p, bp]

    def codes(self, vec, p):
        return (vec @ self.weights) * self.np_ + p

    def mul1(self, a: int, b: int) -> int:
        v, p = self.right_mul(self.vecs[a // self.np_][None, :], np.array([a % self.np_]), b)
        return int(self.codes(v, p)[0])

    def inverse(self, a: int) -> int:
        av, ap = self.vecs[a // self.np_], a % self.np_
        pinv = self.pidx[self.perms[ap].inverse()]
        moved = np.empty_like(av)
        moved[self.scatter[pinv]] = av
        return self.encode(-moved, pinv)


def _endo_on_quotient(q: _Quotient, endo) -> tuple[list[int], np.ndarray]:
    model = q.model
    gens = [q.element(a) for a in model.assignment]
    if endo is None:
        images = list(gens)
    elif hasattr(endo, "images"):
        images = [q.element(eval_affine(w, model)) for w in endo.images]
    else:
        images = [q.element(a) for a in endo]
    return gens, _induced_endo_bfs(q, gens, images)


def _induced_endo_bfs(q: _Quotient, gens: list[int], images: list[int]) -> np.ndarray:
    phi = np.full(q.size, -1, dtype=np.int64)
    phi[q.identity] = q.identity
    frontier = np.array([q.identity], dtype=np.int64)
    while frontier.size:
        fv, fp = q.vecs[frontier // q.np_], frontier % q.np_
        pv, pp = q.vecs[phi[frontier] // q.np_], phi[frontier] % q.np_
        reached = []
        for g, img in zip(gens, images):
            targets = q.codes(*q.right_mul(fv, fp, g))
            values = q.codes(*q.right_mul(pv, pp, img))
            order = np.argsort(targets, kind="stable")
            targets, values = targets[order], values[order]
            # consistency among frontier elements hitting the same target
            same = targets[1:] == targets[:-1]
            if np.any(values[1:][same] != values[:-1][same]):
                raise NotDescending("the map is not a well-defined endomorphism of the quotient")
            known = phi[targets] >= 0
            if np.any(phi[targets[known]] != values[known]):
                raise NotDescending("the map is not a well-defined endomorphism of the quotient")
            phi[targets[~known]] = values[~known]
            reached.append(targets[~known])
        frontier = np.unique(np.concatenate(reached)) if reached else np.array([], dtype=np.int64)
    if np.any(phi < 0):
        raise NotDescending("the model generators do not generate the finite quotient")
    return phi


def quotient_table(model: CrystModel, k: int, endo=None) -> FiniteGroupTable:
    """The full table of (Z_k)^m x| S_n (small cases; used for cross-checks)."""
    q = _Quotient(model, k)
    vec, p = q.decode_all()
    mul = np.empty((q.size, q.size), dtype=np.int64)
    for a in range(q.size):
        mul[a] = q.codes(*q.left_mul(a, vec, p))
    order = [q.identity] + [i for i in range(q.size) if i != q.identity]
    pos = np.empty(q.size, dtype=np.int64)
    pos[order] = np.arange(q.size)
    mul = pos[mul[np.ix_(order, order)]]
    _, phi = _endo_on_quotient(q, endo)
    return FiniteGroupTable(order, mul, pos[phi[order]])


def tower_count(model: CrystModel, k: int, endo=None) -> int:
    """Twisted class count of the endomorphism induced on (Z_k)^m x| S_n."""
    q = _Quotient(model, k)
    gens, phi = _endo_on_quotient(q, endo)
    vec, p = q.decode_all()
    maps = []
    for z in gens:
        zv, zp = q.left_mul(z, vec, p)
        w = q.inverse(int(phi[z]))
        maps.append(q.codes(*q.right_mul(zv, zp, w)))
    return _count_orbits(q.size, maps)


@dataclass(frozen=True)
class TowerReport:
    counts: tuple[tuple[int, int], ...]
    monotone: bool
    strictly_increasing: bool
    verdict: TowerVerdict

    def as_dict(self) -> dict:
        return {
            "counts": [{"k": k, "classes": c} for k, c in self.counts],
            "monotone": self.monotone,
            "strictly_increasing": self.strictly_increasing,
            "verdict": str(self.verdict),
        }


def quotient_tower(model: CrystModel, endo=None, ks: Sequence[int] = (2, 3, 4, 5)) -> TowerReport:
    """Twisted class counts of the induced maps on the finite quotients
    (Z_k)^m x| S_n.  Each count is a lower bound for the Reidemeister number
    of the endomorphism of the infinite group."""
    counts = tuple((k, tower_count(model, k, endo)) for k in ks)
    vals = [c for _, c in counts]
    monotone = all(a <= b for a, b in zip(vals, vals[1:]))
    strict = all(a < b for a, b in zip(vals, vals[1:]))
    if len(vals) > 1 and strict:
        verdict = TowerVerdict.EVIDENCE_CONSISTENT
    elif len(vals) > 1 and len(set(vals)) == 1:
        verdict = TowerVerdict.INCONSISTENT
    else:
        verdict = TowerVerdict.INCONCLUSIVE
    return TowerReport(counts, monotone, strict, verdict)
