"""Rational character theory of small symmetric groups, with the full
character table of S_4, and isotypic sublattices of permutation lattices.

Class functions are indexed by the conjugacy classes of S_n in the order of
:func:`virtbraid.perms.cycle_types`; for S_4 that is
``()``, ``(1,2)(3,4)``, ``(1,2)``, ``(1,2,3,4)``, ``(1,2,3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .crystal import CrystModel, _pair_action, pair_labels
from .errors import DegreeError, VirtbraidError
from .intlin import IntMatrix, abs_det, hermite_rows, rank, saturated_span, smith_decomposition
from .perms import Permutation, all_permutations, conjugacy_classes, cycle_types, identity


@dataclass(frozen=True)
class ClassFunction:
    degree: int
    values: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(cycle_types(self.degree)):
            raise ValueError(f"S_{self.degree} has {len(cycle_types(self.degree))} classes, got {len(vals)}")

    def __call__(self, p: Permutation) -> Fraction:
        return self.values[cycle_types(self.degree).index(p.cycle_type())]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same(self, other)
        return ClassFunction(self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _same(self, other)
        return ClassFunction(self.degree, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, k) -> "ClassFunction":
        return ClassFunction(self.degree, tuple(k * a for a in self.values))

    def as_strings(self) -> list[str]:
        return [fraction_str(v) for v in self.values]


def fraction_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _same(a: ClassFunction, b: ClassFunction):
    if a.degree != b.degree:
        raise DegreeError(f"class functions of S_{a.degree} and S_{b.degree}")


_S4_TABLE = (
    ("chi1", (1, 1, 1, 1, 1)),
    ("chi2", (1, 1, -1, -1, 1)),
    ("chi3", (2, 2, 0, 0, -1)),
    ("chi4", (3, -1, 1, -1, 0)),
    ("chi5", (3, -1, -1, 1, 0)),
)


def s4_character_table() -> list[ClassFunction]:
    return [ClassFunction(4, vals, name) for name, vals in _S4_TABLE]


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    _same(a, b)
    sizes = [size for _, size in conjugacy_classes(a.degree)]
    total = sum(s * x * y for s, x, y in zip(sizes, a.values, b.values))
    return Fraction(total, math.factorial(a.degree))


def permutation_character(model: CrystModel | int) -> ClassFunction:
    """Number of fixed basis vectors per class (the trace of the action)."""
    if isinstance(model, int):
        n, action = model, _pair_action(model)
    else:
        n, action = model.degree, model.action
    vals = []
    for rep, _ in conjugacy_classes(n):
        bp = action[rep]
        vals.append(sum(1 for k, j in enumerate(bp) if k == j))
    return ClassFunction(n, tuple(vals), "perm")


def decompose(a: ClassFunction) -> tuple[int, ...]:
    """Multiplicities of the irreducible characters of S_4 in ``a``."""
    if a.degree != 4:
        raise DegreeError("decompose needs a class function of S_4")
    table = s4_character_table()
    mults = [inner_product(a, chi) for chi in table]
    if any(m.denominator != 1 or m < 0 for m in mults):
        raise VirtbraidError(f"not a character of S_4: multiplicities {[fraction_str(m) for m in mults]}")
    recon = ClassFunction(4, (0,) * 5)
    for m, chi in zip(mults, table):
        recon = recon + chi.scale(m)
    if recon.values != a.values:
        raise VirtbraidError("class function is not a combination of irreducible characters")
    return tuple(int(m) for m in mults)


# ---------------------------------------------------------------- lattices


def _action_of(model: CrystModel | int):
    if isinstance(model, int):
        return model, _pair_action(model), len(pair_labels(model))
    return model.degree, model.action, model.dimension


def projector(model: CrystModel | int, components: Iterable[int]) -> list[list[Fraction]]:
    """Central idempotent ``sum_i (chi_i(1)/24) sum_g chi_i(g^-1) A(g)``."""
    n, action, m = _action_of(model)
    if n != 4:
        raise DegreeError("isotypic projectors are available for S_4 only")
    table = s4_character_table()
    comps = sorted(set(components))
    if any(not 1 <= i <= 5 for i in comps):
        raise ValueError("components are numbered 1..5")
    p = [[Fraction(0)] * m for _ in range(m)]
    for i in comps:
        chi = table[i - 1]
        coef = chi.values[0] / 24
        for g in all_permutations(4):
            c = coef * chi(g.inverse())
            if not c:
                continue
            for col, row in enumerate(action[g]):
                p[row][col] += c
    return p


def _mat_mul_q(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def is_idempotent(p: Sequence[Sequence[Fraction]]) -> bool:
    return _mat_mul_q(p, p) == [list(r) for r in p]


def isotypic_sublattice(model: CrystModel | int, components: Iterable[int]) -> IntMatrix:
    """Saturated integer basis (rows) of ``image(p) ∩ Z^m``."""
    _, _, m = _action_of(model)
    p = projector(model, components)
    den = math.lcm(*(x.denominator for row in p for x in row)) if m else 1
    cols = [[int(p[r][c] * den) for r in range(m)] for c in range(m)]
    cols = [c for c in cols if any(c)]
    if not cols:
        return IntMatrix([], m)
    return saturated_span(cols, m)


@dataclass(frozen=True)
class QuotientAction:
    rank: int
    matrices: dict  # class representative -> IntMatrix (column convention)
    faithful: bool
    character: ClassFunction
    sub_character: ClassFunction

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "faithful": self.faithful,
            "character": self.character.as_strings(),
            "sublattice_character": self.sub_character.as_strings(),
            "matrices": {str(p): m.tolist() for p, m in self.matrices.items()},
        }


def quotient_action(model: CrystModel | int, sublattice: IntMatrix) -> QuotientAction:
    """The action of S_n on ``Z^m / sublattice`` in a basis taken from the
    Smith transform of the inclusion (deterministic)."""
    n, action, m = _action_of(model)
    sub = IntMatrix.coerce(sublattice, m)
    r = sub.nrows
    if r:
        diag, _, V, Vinv = smith_decomposition(sub)
        if len(diag) < r:
            raise VirtbraidError("sublattice rows are dependent")
        if any(abs(d) != 1 for d in diag):
            raise VirtbraidError("quotient has torsion: the sublattice is not saturated")
    else:
        V = Vinv = IntMatrix.identity(m)
    mats = {}
    sub_mats = {}
    for g in all_permutations(n):
        A = IntMatrix([[1 if action[g][c] == rr else 0 for c in range(m)] for rr in range(m)], m)
        # row-vector coordinates y = x V; g acts by y -> y (V^-1 A^T V)
        M = Vinv @ A.transpose() @ V
        if any(M.rows[i][j] for i in range(r) for j in range(r, m)):
            raise VirtbraidError("sublattice is not invariant under the action")
        mats[g] = IntMatrix([row[r:] for row in M.rows[r:]], m - r).transpose()
        sub_mats[g] = IntMatrix([row[:r] for row in M.rows[:r]], r).transpose()
    ident = IntMatrix.identity(m - r)
    faithful = all(mats[g] != ident for g in all_permutations(n) if g != identity(n))
    reps = [rep for rep, _ in conjugacy_classes(n)]
    char = ClassFunction(n, tuple(sum(mats[g].rows[i][i] for i in range(m - r)) for g in reps), "quotient")
    sub_char = ClassFunction(n, tuple(sum(sub_mats[g].rows[i][i] for i in range(r)) for g in reps), "sub")
    return QuotientAction(m - r, {g: mats[g] for g in reps}, faithful, char, sub_char)


def complement_index(a: IntMatrix, b: IntMatrix) -> int:
    """Index of ``span(a) + span(b)`` in Z^m when ranks add up to m (0 otherwise)."""
    rows = a.rows + b.rows
    if len(rows) != a.ncols or rank(IntMatrix(rows, a.ncols)) < a.ncols:
        return 0
    return abs_det(IntMatrix(rows, a.ncols))
