"""Exact models of groups Z^m x| S_n (crystallographic quotients).

The holonomy action is always a permutation action on a labelled basis.
For the pair module of degree n the basis is ``e_(i,j)``, i != j, ordered
lexicographically, and a permutation ``w`` acts by
``A(w) e_(i,j) = e_(w(i),w(j))``; in coordinates
``(A(w) x)_(i,j) = x_(w^-1(i), w^-1(j))``.  With the right-first
composition convention of :mod:`virtbraid.perms` this is a homomorphism:
``A(p q) = A(p) A(q)``.

Elements are pairs ``(x, w)`` multiplied by ``(x, w)(y, u) = (x + A(w) y, w u)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .catalog import Family, _fam, build_presentation
from .errors import DegreeError, NoSolution, UnsupportedFamily
from .intlin import IntMatrix, LatticeTester, integer_kernel, lattice_solve, smith_normal_form
from .kernelab import coset_table
from .perms import Permutation, all_permutations, compose, identity, tau
from .words import Presentation, Word, parse_word

INFINITE = "INFINITE"


class UnderdeterminedWarning(UserWarning):
    """The σ-vector system has more than one solution up to sign."""


@dataclass(frozen=True)
class AffineElement:
    vector: tuple[int, ...]
    perm: Permutation

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))

    def as_dict(self) -> dict:
        return {"vector": list(self.vector), "perm": str(self.perm)}


def pair_labels(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


@lru_cache(maxsize=None)
def _pair_action(n: int) -> dict[Permutation, tuple[int, ...]]:
    labels = pair_labels(n)
    pos = {lab: k for k, lab in enumerate(labels)}
    out = {}
    for w in all_permutations(n):
        out[w] = tuple(pos[(w(i - 1) + 1, w(j - 1) + 1)] for i, j in labels)
    return out


def perm_module(n: int) -> dict[Permutation, IntMatrix]:
    """The 0/1 matrices of the pair-permutation action of S_n on Z^(n(n-1))."""
    if not 2 <= n <= 6:
        raise DegreeError("pair modules need 2 <= n <= 6")
    m = n * (n - 1)
    return {w: _perm_matrix(bp, m) for w, bp in _pair_action(n).items()}


def _perm_matrix(bp: Sequence[int], m: int) -> IntMatrix:
    rows = [[0] * m for _ in range(m)]
    for col, row in enumerate(bp):
        rows[row][col] = 1
    return IntMatrix(rows, m)


@dataclass(frozen=True)
class CrystModel:
    """A group Z^m x| S_n with a generator assignment for a presentation.

    ``action[w][k]`` is the index of the basis vector ``A(w) e_k``.
    """

    degree: int
    labels: tuple
    action: Mapping[Permutation, tuple[int, ...]]
    presentation: Presentation
    assignment: tuple[AffineElement, ...]
    metadata: Mapping = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def label_names(self) -> list[str]:
        return ["l_%d_%d" % lab if isinstance(lab, tuple) else str(lab) for lab in self.labels]

    # group law -------------------------------------------------------
    def apply(self, w: Permutation, x: Sequence[int]) -> tuple[int, ...]:
        bp = self.action[w]
        out = [0] * len(x)
        for k, v in enumerate(x):
            out[bp[k]] = v
        return tuple(out)

    def matrix(self, w: Permutation) -> IntMatrix:
        return _perm_matrix(self.action[w], self.dimension)

    def identity(self) -> AffineElement:
        return AffineElement((0,) * self.dimension, identity(self.degree))

    def mul(self, a: AffineElement, b: AffineElement) -> AffineElement:
        y = self.apply(a.perm, b.vector)
        return AffineElement(tuple(p + q for p, q in zip(a.vector, y)), compose(a.perm, b.perm))

    def inv(self, a: AffineElement) -> AffineElement:
        winv = a.perm.inverse()
        return AffineElement(tuple(-x for x in self.apply(winv, a.vector)), winv)

    def power(self, a: AffineElement, k: int) -> AffineElement:
        base = a if k >= 0 else self.inv(a)
        out = self.identity()
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def generator(self, name: str) -> AffineElement:
        return self.assignment[self.presentation.index(name)]

    def word(self, text: str) -> Word:
        return parse_word(text, self.presentation.generators)

    def relator_check(self) -> list[tuple[str, bool]]:
        ident = self.identity()
        return [(self.presentation.format(r), eval_affine(r, self) == ident)
                for r in self.presentation.relators]


def eval_affine(w: Word, model: CrystModel) -> AffineElement:
    out = model.identity()
    for g, s in w:
        if not 0 <= g < len(model.assignment):
            raise KeyError(f"generator index {g} is not assigned in the model")
        e = model.assignment[g]
        out = model.mul(out, e if s > 0 else model.inv(e))
    return out


def verify_identity(w1: Word, w2: Word, model: CrystModel) -> bool:
    """Do ``w1`` and ``w2`` agree in the model?  (A necessary condition for
    equality in the source group, not a proof of it.)"""
    return eval_affine(w1, model) == eval_affine(w2, model)


def element_order(e: AffineElement, model: CrystModel) -> int | str:
    k = e.perm.order()
    total = [0] * model.dimension
    p = identity(model.degree)
    for _ in range(k):
        y = model.apply(p, e.vector)
        total = [a + b for a, b in zip(total, y)]
        p = compose(p, e.perm)
    return k if not any(total) else INFINITE


def _image_basis(model: CrystModel, c: Permutation) -> list[list[int]]:
    """Rows spanning the image of ``I - A(c)`` (as a column map)."""
    m = model.dimension
    bp = model.action[c]
    rows = []
    for k in range(m):
        col = [0] * m
        col[k] += 1
        col[bp[k]] -= 1
        rows.append(col)
    return rows


@dataclass(frozen=True)
class ConjugacyWitness:
    vector: tuple[int, ...]
    perm: Permutation

    def as_dict(self) -> dict:
        return {"vector": list(self.vector), "perm": str(self.perm)}


def conjugate_test(e1: AffineElement, e2: AffineElement, model: CrystModel):
    """Is ``e2 = g e1 g^-1`` for some ``g = (t, u)``?  Returns ``(bool, witness)``."""
    for u in all_permutations(model.degree):
        if compose(compose(u, e1.perm), u.inverse()) != e2.perm:
            continue
        ux = model.apply(u, e1.vector)
        diff = [a - b for a, b in zip(e2.vector, ux)]
        t = lattice_solve(diff, _image_basis(model, e2.perm), model.dimension)
        if t is not None:
            w = ConjugacyWitness(tuple(t), u)
            g = AffineElement(w.vector, u)
            assert model.mul(model.mul(g, e1), model.inv(g)) == e2
            return True, w
    return False, None


def bounded_box_order3(model: CrystModel, target: AffineElement, radius: int = 2) -> dict:
    """Check that every order-3 element ``(x, c)`` with ``c`` a 3-cycle and
    ``x`` in ``{-radius..radius}^m`` is conjugate to ``target``."""
    m = model.dimension
    cycles = [p for p in all_permutations(model.degree) if p.cycle_type()[0] == 3 and p.order() == 3]
    testers = {}
    for u in all_permutations(model.degree):
        for c in cycles:
            if compose(compose(u, c), u.inverse()) == target.perm:
                testers.setdefault(c, []).append(u)
    lattice = LatticeTester(_image_basis(model, target.perm), m)
    checked = order3 = failures = 0
    for c in cycles:
        for x in itertools.product(range(-radius, radius + 1), repeat=m):
            checked += 1
            if element_order(AffineElement(x, c), model) != 3:
                continue
            order3 += 1
            ok = False
            for u in testers.get(c, []):
                ux = model.apply(u, x)
                if tuple(a - b for a, b in zip(target.vector, ux)) in lattice:
                    ok = True
                    break
            failures += not ok
    return {"checked": checked, "order3": order3, "not_conjugate": failures,
            "all_conjugate": failures == 0}


# ---------------------------------------------------------------- solving for sigma vectors


def _role(name: str) -> str:
    if name[0] in "vr" and name[1:].isdigit():
        return "fixed"
    if name[0] == "s" and name[1:].isdigit():
        return "free"
    raise UnsupportedFamily(f"generator {name!r} is not of braid type")


def _linear_word(model_perm: Sequence[Permutation], free_index: Mapping[int, int],
                 action, w: Word, m: int, nfree: int) -> list[list[int]]:
    """Coefficient matrix (m x nfree*m) of the vector part of ``w``."""
    n = model_perm[0].degree
    coeff = [[0] * (nfree * m) for _ in range(m)]
    prefix = identity(n)
    for g, s in w:
        p = model_perm[g]
        if s > 0:
            at = prefix
            prefix = compose(prefix, p)
        else:
            prefix = compose(prefix, p.inverse())
            at = prefix
        if g in free_index:
            bp = action[at]
            off = free_index[g] * m
            for k in range(m):
                coeff[bp[k]][off + k] += s
    return coeff


@dataclass(frozen=True)
class _System:
    presentation: Presentation
    n: int
    perms: tuple[Permutation, ...]
    free: tuple[int, ...]
    constraint: IntMatrix
    kernel: IntMatrix
    translations: tuple[list[list[int]], ...]


HOLONOMIES = ("pi_P", "pi_K")


@lru_cache(maxsize=None)
def _system(pres: Presentation, n: int, holonomy: str = "pi_P") -> _System:
    if not 2 <= n <= 6:
        raise DegreeError("solve_assignment needs 2 <= n <= 6")
    if holonomy not in HOLONOMIES:
        raise ValueError(f"holonomy must be one of {HOLONOMIES}")
    roles = [_role(g) for g in pres.generators]
    perms = tuple(identity(n) if holonomy == "pi_K" and r == "free" else tau(n, int(g[1:]))
                  for g, r in zip(pres.generators, roles))
    free = tuple(i for i, r in enumerate(roles) if r == "free")
    free_index = {g: k for k, g in enumerate(free)}
    action = _pair_action(n)
    m = n * (n - 1)
    rows = []
    for r in pres.relators:
        # the permutation part of every relator is trivial by construction
        if not compose(identity(n), _perm_eval(r, perms)).is_identity():
            raise NoSolution(f"relator {pres.format(r)} does not hold for the holonomy part")
        rows += _linear_word(perms, free_index, action, r, m, len(free))
    constraint = IntMatrix(rows, len(free) * m)
    kernel = integer_kernel(constraint)
    # vector parts of the Schreier generators of the kernel of the holonomy map
    from .perms import Homomorphism

    table = coset_table(Homomorphism(pres, perms))
    trans = []
    for c in range(len(table)):
        for g in range(pres.ngens):
            if (c, g) in table.tree:
                continue
            d = table.action[g][c]
            w = table.transversal[c] + ((g, 1),) + tuple((h, -s) for h, s in reversed(table.transversal[d]))
            trans.append(_linear_word(perms, free_index, action, w, m, len(free)))
    return _System(pres, n, perms, free, constraint, kernel, tuple(trans))


def _perm_eval(w: Word, perms: Sequence[Permutation]) -> Permutation:
    out = identity(perms[0].degree)
    for g, s in w:
        out = compose(out, perms[g] if s > 0 else perms[g].inverse())
    return out


def _translation_lattice(sys: _System, x: Sequence[int]) -> tuple[int, int]:
    """(rank, index) of the lattice spanned by the pure translations; index 0 = infinite."""
    m = sys.n * (sys.n - 1)
    nz = [j for j, v in enumerate(x) if v]
    vecs = {tuple(sum(row[j] * x[j] for j in nz) for row in coeff) for coeff in sys.translations}
    vecs.discard((0,) * m)
    inv, rank = smith_normal_form(IntMatrix(sorted(vecs), m))
    return rank, (0 if inv.free_rank else inv.order or 1)


def candidate_solutions(pres: Presentation, n: int, limit: int | None = 1,
                        holonomy: str = "pi_P") -> list[dict]:
    """Solutions of the σ-vector system, best first.

    Candidates are small combinations of a kernel basis (coefficients in
    -2..2, or -1..1 beyond six basis vectors), scanned by increasing support
    and then lexicographically.  A candidate is accepted when its pure
    translations span all of Z^m.  When no candidate does, candidates are
    accepted whose translation rank equals the generic (maximal) rank, and
    they are flagged as not full.
    """
    sys = _system(pres, n, holonomy)
    basis = sys.kernel.rows
    k = len(basis)
    if k == 0:
        return []
    coeffs = range(-2, 3) if k <= 6 else range(-1, 2)
    found = set()
    for c in itertools.product(coeffs, repeat=k):
        if not any(c):
            continue
        x = [0] * sys.constraint.ncols
        for a, row in zip(c, basis):
            if a:
                for j, b in enumerate(row):
                    x[j] += a * b
        found.add(tuple(x))
    ordered = sorted(found, key=lambda x: (sum(1 for v in x if v), max(map(abs, x)), x))
    m = n * (n - 1)
    generic = [sum((2 * j + 3) ** 2 * row[i] for j, row in enumerate(basis)) for i in range(len(basis[0]))]
    max_rank = _translation_lattice(sys, generic)[0]
    full, partial = [], []
    for x in ordered:
        rank, index = _translation_lattice(sys, x)
        entry = {"x": x, "rank": rank, "index": index,
                 "support": sum(1 for v in x if v), "full": rank == m and index == 1}
        if entry["full"]:
            full.append(entry)
            if limit and len(full) >= limit:
                return full
        elif rank == max_rank and max_rank < m and (not limit or len(partial) < limit):
            partial.append(entry)
            if limit and len(partial) >= limit:
                return partial
    return full or partial


def _model_from(sys: _System, x: Sequence[int], meta: dict) -> CrystModel:
    n = sys.n
    m = n * (n - 1)
    pos = {g: k for k, g in enumerate(sys.free)}
    assignment = []
    for g, p in enumerate(sys.perms):
        if g in pos:
            assignment.append(AffineElement(tuple(x[pos[g] * m:(pos[g] + 1) * m]), p))
        else:
            assignment.append(AffineElement((0,) * m, p))
    model = CrystModel(n, pair_labels(n), _pair_action(n), sys.presentation, tuple(assignment), meta)
    bad = [r for r, ok in model.relator_check() if not ok]
    if bad:
        raise AssertionError(f"solver produced a model violating {bad}")
    return model


def solve_assignment(pres: Presentation, n: int, choice: int = 0,
                     holonomy: str = "pi_P") -> CrystModel:
    """Fix ``v_i, r_i -> (0, tau_i)`` and solve for ``s_i -> (x_i, tau_i)``.

    With ``holonomy="pi_K"`` the σ generators get the trivial permutation
    instead, i.e. ``s_i -> (x_i, id)``.  ``choice`` selects among ranked
    candidate solutions (0 = preferred).  Raises :class:`NoSolution` when
    only the zero solution exists.
    """
    sys = _system(pres, n, holonomy)
    if not sys.kernel.rows:
        raise NoSolution("the σ-vector system only has the zero solution")
    cands = candidate_solutions(pres, n, limit=choice + 1, holonomy=holonomy)
    if len(cands) <= choice:
        raise NoSolution(f"only {len(cands)} candidate solution(s) available")
    best = cands[choice]
    m = n * (n - 1)
    meta = {
        "solution_rank": len(sys.kernel.rows),
        "translation_rank": best["rank"],
        "translation_index": best["index"],
        "translation_full": best["full"],
        "support": best["support"],
        "choice": choice,
        "holonomy": holonomy,
        "underdetermined": len(sys.kernel.rows) > 1,
    }
    if meta["underdetermined"]:
        meta["warning"] = "UnderdeterminedWarning"
        warnings.warn(f"{pres.name}: solution space has rank {len(sys.kernel.rows)}",
                      UnderdeterminedWarning, stacklevel=2)
    return _model_from(sys, best["x"], meta)


def model_for(family, n: int, choice: int = 0, holonomy: str = "pi_P") -> CrystModel:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnderdeterminedWarning)
        return solve_assignment(build_presentation(family, n), n, choice, holonomy)


# ---------------------------------------------------------------- fixed presentations


def _sign_swap_action() -> dict[Permutation, tuple[int, ...]]:
    out = {}
    for w in all_permutations(3):
        odd = sum(len(c) - 1 for c in w.cycles()) % 2
        out[w] = (1, 0) if odd else (0, 1)
    return out


def fixed_model(family) -> CrystModel:
    """Models of the quotient presentations: VB3/[VP3,VP3], VB3/[KB3,KB3], G."""
    fam = _fam(family)
    pres = build_presentation(fam)
    if fam in (Family.VB3_MOD_VP3COMM, Family.WALLPAPER_G):
        n = 3 if fam is Family.VB3_MOD_VP3COMM else 2
        labels = pair_labels(n)
        m = len(labels)
        assignment = []
        for g in pres.generators:
            if g.startswith("l_"):
                _, i, j = g.split("_")
                vec = [0] * m
                vec[labels.index((int(i), int(j)))] = 1
                assignment.append(AffineElement(tuple(vec), identity(n)))
            else:
                assignment.append(AffineElement((0,) * m, tau(n, int(g[1:]))))
        model = CrystModel(n, labels, _pair_action(n), pres, tuple(assignment), {})
    elif fam is Family.VB3_MOD_KB3COMM:
        from .perms import parse_cycles

        e = identity(3)
        assignment = (
            AffineElement((1, 0), e),
            AffineElement((0, 1), e),
            AffineElement((0, 0), parse_cycles("(1,2,3)", 3)),
            AffineElement((0, 0), tau(3, 1)),
        )
        model = CrystModel(3, ("x_1_2", "x_1_3"), _sign_swap_action(), pres, assignment, {})
    else:
        raise UnsupportedFamily(f"no fixed model for {fam}")
    bad = [r for r, ok in model.relator_check() if not ok]
    if bad:
        raise AssertionError(f"fixed model violates {bad}")
    return model


# ---------------------------------------------------------------- forbidden-relator identities


def zeta_identities(model: CrystModel, i: int) -> list[tuple[str, Word, Word]]:
    """The four conjugation identities for the images of the forbidden
    relators under zeta1 and zeta2, as (label, lhs, rhs) word pairs."""
    from .catalog import forbidden_relators, named_endo

    pres = model.presentation
    n = model.degree
    W = lambda text: parse_word(text, pres.generators)  # noqa: E731
    inv = lambda w: tuple((g, -s) for g, s in reversed(w))  # noqa: E731
    r1 = W(" ".join(forbidden_relators(n, 1)[i - 1]))
    r2 = W(" ".join(forbidden_relators(n, 2)[i - 1]))
    z1 = named_endo("VB", n, "zeta1")
    z2 = named_endo("VB", n, "zeta2")
    j = i + 1
    c1 = W(f"v{j} v{i} v{j}")
    c2 = W(f"v{i} v{j} v{i}")
    d1 = W(f"v{j} s{i} s{j}")
    d2 = W(f"v{i} s{j} s{i}")
    return [
        (f"zeta1(r1_{i})", z1(r1), c1 + r2 + c1),
        (f"zeta1(r2_{i})", z1(r2), c2 + r1 + c2),
        (f"zeta2(r1_{i})", z2(r1), inv(d1) + r2 + d1),
        (f"zeta2(r2_{i})", z2(r2), inv(d2) + r1 + d2),
    ]
