"""Exact integer linear algebra: Smith normal form, abelian invariants, lattices.

Everything runs on Python ints, so there is no overflow and no floating
point.  Matrices act on row vectors for lattice purposes: the lattice of an
``IntMatrix`` is the Z-span of its rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import VirtbraidError


class IntMatrix:
    """A dense integer matrix that remembers its column count when empty."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]] = (), ncols: int | None = None):
        self.rows = [[int(x) for x in row] for row in rows]
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(row) != ncols for row in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def coerce(cls, m, ncols: int | None = None) -> "IntMatrix":
        if isinstance(m, IntMatrix):
            return m
        return cls(m, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(col) for col in zip(*self.rows)] if self.rows else
                         [[] for _ in range(self.ncols)], self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                          for row in self.rows], other.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows!r}, ncols={self.ncols})"


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]]) -> list[int]:
    ncols = len(m[0]) if m else 0
    out = [0] * ncols
    for a, row in zip(v, m):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbInv:
    """Invariants of a finitely generated abelian group Z^r + Z_d1 + ... + Z_dk.

    ``torsion`` is the divisibility chain d1 | d2 | ... with every di > 1.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0 or any(d <= 1 for d in tors):
            raise ValueError(f"bad invariants {self.free_rank}, {tors}")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"torsion {tors} is not a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "AbInv":
        """Build from arbitrary cyclic orders (any order, 1s allowed)."""
        return cls(free_rank, invariant_chain(orders))

    def prime_powers(self) -> list[int]:
        out = []
        for d in self.torsion:
            out += [p**e for p, e in _factorize(d).items()]
        return sorted(out)

    def gap_format(self) -> str:
        items = [0] * self.free_rank + self.prime_powers()
        if not items:
            return "[  ]"
        return "[ " + ", ".join(str(x) for x in items) + " ]"

    @classmethod
    def from_gap(cls, text: str) -> "AbInv":
        body = text.strip().strip("[]").strip()
        items = [int(x) for x in body.split(",")] if body else []
        return cls.from_orders(items.count(0), [x for x in items if x])

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` if the group is infinite."""
        return None if self.free_rank else math.prod(self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        counts: dict[int, int] = {}
        for d in self.torsion:
            counts[d] = counts.get(d, 0) + 1
        for d, c in counts.items():
            parts.append(f"Z_{d}" if c == 1 else f"(Z_{d})^{c}")
        return " + ".join(parts) if parts else "0"


def invariant_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Normalize cyclic orders into the divisibility chain (dropping 1s)."""
    d = [abs(int(x)) for x in orders if abs(int(x)) > 1]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return tuple(x for x in d if x > 1)


class _Diag:
    """Unimodular diagonalization U A V = D, transforms tracked on request."""

    def __init__(self, rows: list[list[int]], ncols: int, track: bool):
        self.a = [list(r) for r in rows]
        self.r = len(rows)
        self.c = ncols
        self.track = track
        if track:
            self.U = [[int(i == j) for j in range(self.r)] for i in range(self.r)]
            self.V = [[int(i == j) for j in range(self.c)] for i in range(self.c)]
            self.Vinv = [[int(i == j) for j in range(self.c)] for i in range(self.c)]
        self.rank = 0
        self._run()

    def _swap_rows(self, i, j):
        if i != j:
            a = self.a
            a[i], a[j] = a[j], a[i]
            if self.track:
                self.U[i], self.U[j] = self.U[j], self.U[i]

    def _swap_cols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            if self.track:
                for row in self.V:
                    row[i], row[j] = row[j], row[i]
                self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def _add_row(self, dst, src, q):
        # row_dst += q * row_src
        rd, rs = self.a[dst], self.a[src]
        for k in range(self.c):
            if rs[k]:
                rd[k] += q * rs[k]
        if self.track:
            ud, us = self.U[dst], self.U[src]
            for k in range(self.r):
                if us[k]:
                    ud[k] += q * us[k]

    def _add_col(self, dst, src, q):
        # col_dst += q * col_src
        for row in self.a:
            if row[src]:
                row[dst] += q * row[src]
        if self.track:
            for row in self.V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = self.Vinv[src], self.Vinv[dst]
            for k in range(self.c):
                if vd[k]:
                    vs[k] -= q * vd[k]

    def _run(self):
        a, r, c = self.a, self.r, self.c
        t = 0
        while t < min(r, c):
            best, pos = 0, None
            for i in range(t, r):
                row = a[i]
                for j in range(t, c):
                    x = row[j]
                    if x and (best == 0 or abs(x) < best):
                        best, pos = abs(x), (i, j)
                        if best == 1:
                            break
                if best == 1:
                    break
            if pos is None:
                break
            self._swap_rows(t, pos[0])
            self._swap_cols(t, pos[1])
            while True:
                p = a[t][t]
                dirty = False
                for i in range(t + 1, r):
                    if a[i][t]:
                        self._add_row(i, t, -(a[i][t] // p))
                        dirty = dirty or bool(a[i][t])
                for j in range(t + 1, c):
                    if a[t][j]:
                        self._add_col(j, t, -(a[t][j] // p))
                        dirty = dirty or bool(a[t][j])
                if not dirty:
                    break
                # a smaller remainder exists in row t or column t: move it to the pivot
                best, pos = abs(p), None
                for i in range(t + 1, r):
                    if a[i][t] and abs(a[i][t]) < best:
                        best, pos = abs(a[i][t]), ("r", i)
                for j in range(t + 1, c):
                    if a[t][j] and abs(a[t][j]) < best:
                        best, pos = abs(a[t][j]), ("c", j)
                if pos[0] == "r":
                    self._swap_rows(t, pos[1])
                else:
                    self._swap_cols(t, pos[1])
            t += 1
        self.rank = t

    @property
    def diagonal(self) -> list[int]:
        return [self.a[i][i] for i in range(self.rank)]


def _rows_of(m) -> tuple[list[list[int]], int]:
    m = IntMatrix.coerce(m)
    return m.rows, m.ncols


def smith_normal_form(m, ncols: int | None = None) -> tuple[AbInv, int]:
    """Invariants of the cokernel Z^cols / rowspace(m), and the rank of m."""
    mat = IntMatrix.coerce(m, ncols)
    d = _Diag(mat.rows, mat.ncols, track=False)
    return AbInv(mat.ncols - d.rank, invariant_chain(d.diagonal)), d.rank


def smith_diagonal(m, ncols: int | None = None) -> list[int]:
    """The invariant factors of ``m`` (the nonzero SNF diagonal, 1s included)."""
    mat = IntMatrix.coerce(m, ncols)
    d = _Diag(mat.rows, mat.ncols, track=False)
    chain = invariant_chain(d.diagonal)
    return [1] * (d.rank - len(chain)) + list(chain)


def smith_decomposition(m, ncols: int | None = None):
    """Return ``(diag, U, V, Vinv)`` with ``U @ m @ V`` diagonal.

    ``diag`` lists the nonzero diagonal entries (not normalized to a chain).
    """
    mat = IntMatrix.coerce(m, ncols)
    d = _Diag(mat.rows, mat.ncols, track=True)
    return (d.diagonal, IntMatrix(d.U, mat.nrows), IntMatrix(d.V, mat.ncols),
            IntMatrix(d.Vinv, mat.ncols))


def lattice_membership(v: Sequence[int], basis, ncols: int | None = None) -> bool:
    """Is ``v`` an integer combination of the rows of ``basis``?"""
    mat = IntMatrix.coerce(basis, ncols if ncols is not None else len(v))
    if len(v) != mat.ncols:
        raise ValueError(f"dimension mismatch: {len(v)} vs {mat.ncols}")
    if not any(v):
        return True
    diag, _, V, _ = smith_decomposition(mat)
    return _member(v, diag, V)


def _member(v, diag, V) -> bool:
    w = vecmat(v, V.rows)
    for j, x in enumerate(w):
        if j < len(diag):
            if x % diag[j]:
                return False
        elif x:
            return False
    return True


class LatticeTester:
    """Repeated membership tests against one fixed lattice."""

    def __init__(self, basis, ncols: int):
        mat = IntMatrix.coerce(basis, ncols)
        self.ncols = ncols
        self.diag, _, self.V, _ = smith_decomposition(mat)

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return _member(v, self.diag, self.V)


def hermite_rows(m, ncols: int | None = None) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows."""
    mat = IntMatrix.coerce(m, ncols)
    rows = [list(r) for r in mat.rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while rows and col < mat.ncols:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                (nxt if r2[col] else rest).append(r2)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for k in range(mat.ncols):
                    r[k] -= q * piv[k]
        out.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    return IntMatrix(out, mat.ncols)


def saturation(basis, ncols: int | None = None) -> IntMatrix:
    """Basis of (Q-span of the rows) intersected with Z^ncols, in Hermite form.

    The rows must be linearly independent; see :func:`saturated_span` for
    arbitrary spanning sets.
    """
    mat = IntMatrix.coerce(basis, ncols)
    if mat.nrows and rank(mat) < mat.nrows:
        raise VirtbraidError("rows are linearly dependent")
    return saturated_span(mat)


def saturated_span(rows, ncols: int | None = None) -> IntMatrix:
    """Like :func:`saturation` but accepts any spanning set of rows."""
    mat = IntMatrix.coerce(rows, ncols)
    if mat.nrows == 0:
        return IntMatrix([], mat.ncols)
    diag, _, _, Vinv = smith_decomposition(mat)
    return hermite_rows(Vinv.rows[: len(diag)], mat.ncols)


def integer_kernel(m, ncols: int | None = None) -> IntMatrix:
    """Rows spanning {x in Z^ncols : m x = 0} (column-vector convention)."""
    mat = IntMatrix.coerce(m, ncols)
    diag, _, V, _ = smith_decomposition(mat)
    cols = list(zip(*V.rows)) if V.rows else []
    return hermite_rows([list(c) for c in cols[len(diag):]], mat.ncols)


def rank(m, ncols: int | None = None) -> int:
    return smith_normal_form(m, ncols)[1]


def abs_det(m) -> int:
    mat = IntMatrix.coerce(m)
    if mat.nrows != mat.ncols:
        raise ValueError("matrix is not square")
    inv, rk = smith_normal_form(mat)
    if rk < mat.ncols:
        return 0
    return math.prod(inv.torsion)


def same_lattice(a, b, ncols: int) -> bool:
    return hermite_rows(a, ncols) == hermite_rows(b, ncols)


def lattice_solve(v: Sequence[int], basis, ncols: int | None = None) -> list[int] | None:
    """Integer coefficients ``z`` with ``z @ basis == v``, or ``None``."""
    mat = IntMatrix.coerce(basis, ncols if ncols is not None else len(v))
    if len(v) != mat.ncols:
        raise ValueError(f"dimension mismatch: {len(v)} vs {mat.ncols}")
    diag, U, V, _ = smith_decomposition(mat)
    w = vecmat(v, V.rows)
    q = [0] * mat.nrows
    for j, x in enumerate(w):
        if j < len(diag):
            if x % diag[j]:
                return None
            q[j] = x // diag[j]
        elif x:
            return None
    return vecmat(q, U.rows) if mat.nrows else []
