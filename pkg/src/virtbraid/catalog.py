"""Builders for the presentations, homomorphisms and endomorphisms used throughout.

Generator names: ``s1..s{n-1}`` (classical), ``v1..v{n-1}`` (virtual),
``r1..r{n-1}`` (twin), ``l_i_j`` and ``x_i_j`` (lattice generators),
``a``/``b`` (the order 3 and order 2 generators of S_3 in the KB quotient).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import UnsupportedFamily
from .perms import Homomorphism, Permutation, identity, product, tau
from .words import Presentation, Word, free_reduce, invert_word, substitute

MAX_N = 6


class Family(str, enum.Enum):
    VB = "VB"
    WB = "WB"
    UVB = "UVB"
    VT = "VT"
    SYM = "SYM"
    VB3_MOD_VP3COMM = "VB3_MOD_VP3COMM"
    VB3_MOD_KB3COMM = "VB3_MOD_KB3COMM"
    WALLPAPER_G = "WALLPAPER_G"

    def __str__(self) -> str:
        return self.value


BRAID_FAMILIES = (Family.VB, Family.WB, Family.UVB)
FIXED_FAMILIES = (Family.VB3_MOD_VP3COMM, Family.VB3_MOD_KB3COMM, Family.WALLPAPER_G)


def _fam(family) -> Family:
    try:
        return Family(str(family).upper())
    except ValueError:
        raise UnsupportedFamily(f"unknown family {family!r}") from None


class _Builder:
    """Accumulates generators and relators ``lhs * rhs^-1``."""

    def __init__(self, gens: Sequence[str]):
        self.gens = list(gens)
        self.lookup = {g: i for i, g in enumerate(self.gens)}
        self.relators: list[Word] = []

    def w(self, *tokens: str) -> Word:
        out = []
        for tok in tokens:
            name, _, exp = tok.partition("^")
            out.append((self.lookup[name], -1 if exp == "-1" else 1))
        return tuple(out)

    def rel(self, lhs: Sequence[str], rhs: Sequence[str] = ()):
        self.relators.append(free_reduce(self.w(*lhs) + invert_word(self.w(*rhs))))

    def build(self, name: str) -> Presentation:
        return Presentation(name, tuple(self.gens), tuple(self.relators))


def forbidden_relators(n: int, kind: int) -> list[list[str]]:
    """Token lists of the forbidden relators (kind 1 or 2), i = 1..n-2."""
    out = []
    for i in range(1, n - 1):
        j = i + 1
        if kind == 1:
            out.append([f"v{i}", f"s{j}", f"s{i}", f"v{j}", f"s{i}^-1", f"s{j}^-1"])
        else:
            out.append([f"v{j}", f"s{i}", f"s{j}", f"v{i}", f"s{j}^-1", f"s{i}^-1"])
    return out


def _braid_like(n: int, classical: str, virtual: str, twin: bool) -> _Builder:
    idx = range(1, n)
    b = _Builder([f"{classical}{i}" for i in idx] + [f"{virtual}{i}" for i in idx])
    s = lambda i: f"{classical}{i}"  # noqa: E731
    v = lambda i: f"{virtual}{i}"  # noqa: E731
    far = [(i, j) for i, j in itertools.combinations(idx, 2) if j - i >= 2]
    if twin:
        for i in idx:
            b.rel([s(i), s(i)])
    else:
        for i in range(1, n - 1):
            b.rel([s(i), s(i + 1), s(i)], [s(i + 1), s(i), s(i + 1)])
    for i, j in far:
        b.rel([s(i), s(j)], [s(j), s(i)])
    for i in range(1, n - 1):
        b.rel([v(i), v(i + 1), v(i)], [v(i + 1), v(i), v(i + 1)])
    for i, j in far:
        b.rel([v(i), v(j)], [v(j), v(i)])
    for i in idx:
        b.rel([v(i), v(i)])
    for i in idx:
        for j in idx:
            if abs(i - j) >= 2:
                b.rel([s(i), v(j)], [v(j), s(i)])
    for i in range(1, n - 1):
        b.rel([v(i), v(i + 1), s(i)], [s(i + 1), v(i), v(i + 1)])
    return b


def build_presentation(family, n: int | None = None) -> Presentation:
    fam = _fam(family)
    if fam in FIXED_FAMILIES:
        return _fixed_presentation(fam)
    if n is None or not 2 <= n <= MAX_N:
        raise UnsupportedFamily(f"{fam} needs 2 <= n <= {MAX_N}, got {n}")
    if fam is Family.SYM:
        b = _Builder([f"t{i}" for i in range(1, n)])
        for i in range(1, n - 1):
            b.rel([f"t{i}", f"t{i+1}", f"t{i}"], [f"t{i+1}", f"t{i}", f"t{i+1}"])
        for i, j in itertools.combinations(range(1, n), 2):
            if j - i >= 2:
                b.rel([f"t{i}", f"t{j}"], [f"t{j}", f"t{i}"])
        for i in range(1, n):
            b.rel([f"t{i}", f"t{i}"])
        return b.build(f"S{n}")
    if fam is Family.VT:
        return _braid_like(n, "s", "r", twin=True).build(f"VT{n}")
    b = _braid_like(n, "s", "v", twin=False)
    if fam in (Family.WB, Family.UVB):
        for toks in forbidden_relators(n, 1):
            b.rel(toks)
    if fam is Family.UVB:
        for toks in forbidden_relators(n, 2):
            b.rel(toks)
    return b.build(f"{fam.value}{n}")


def _pair_labels(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _fixed_presentation(fam: Family) -> Presentation:
    if fam is Family.VB3_MOD_VP3COMM:
        pairs = _pair_labels(3)
        lam = {p: f"l_{p[0]}_{p[1]}" for p in pairs}
        b = _Builder([lam[p] for p in pairs] + ["v1", "v2"])
        b.rel(["v1", "v2", "v1"], ["v2", "v1", "v2"])
        b.rel(["v1", "v1"])
        b.rel(["v2", "v2"])
        for p, q in itertools.combinations(pairs, 2):
            b.rel([lam[p], lam[q], lam[p] + "^-1", lam[q] + "^-1"])
        for k in (1, 2):
            t = tau(3, k)
            for i, j in pairs:
                target = (t(i - 1) + 1, t(j - 1) + 1)
                b.rel([f"v{k}", lam[(i, j)], f"v{k}"], [lam[target]])
        return b.build("VB3/[VP3,VP3]")
    if fam is Family.VB3_MOD_KB3COMM:
        b = _Builder(["x_1_2", "x_1_3", "a", "b"])
        b.rel(["a", "a", "a"])
        b.rel(["b", "b"])
        b.rel(["b", "a", "b", "a"])
        b.rel(["x_1_2", "x_1_3", "x_1_2^-1", "x_1_3^-1"])
        b.rel(["b", "x_1_2", "b^-1"], ["x_1_3"])
        b.rel(["b", "x_1_3", "b^-1"], ["x_1_2"])
        b.rel(["a", "x_1_2", "a^-1"], ["x_1_2"])
        b.rel(["a", "x_1_3", "a^-1"], ["x_1_3"])
        return b.build("VB3/[KB3,KB3]")
    b = _Builder(["l_1_2", "l_2_1", "v1"])
    b.rel(["v1", "v1"])
    b.rel(["l_1_2", "l_2_1", "l_1_2^-1", "l_2_1^-1"])
    b.rel(["v1", "l_1_2", "v1"], ["l_2_1"])
    b.rel(["v1", "l_2_1", "v1"], ["l_1_2"])
    return b.build("G")


def catalog_entries() -> list[tuple[str, int | None]]:
    out: list[tuple[str, int | None]] = []
    for fam in (Family.VB, Family.WB, Family.UVB, Family.VT, Family.SYM):
        out += [(fam.value, n) for n in range(2, MAX_N + 1)]
    out += [(fam.value, None) for fam in FIXED_FAMILIES]
    return out


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class NamedHom:
    name: str
    hom: Homomorphism

    @property
    def presentation(self) -> Presentation:
        return self.hom.presentation

    @property
    def degree(self) -> int:
        return self.hom.degree

    @property
    def images(self) -> tuple[Permutation, ...]:
        return self.hom.images


def _t(n: int, *idx: int) -> Permutation:
    """Product tau_{i1} tau_{i2} ... in S_n; no indices gives the identity."""
    return product((tau(n, i) for i in idx), n)


# (v-images, s-images) as tau index tuples, transcribed from the classification tables
_PSI = {
    1: ([(1,), (1,)], [(2,), (2,)]),
    2: ([(1,), (2,)], [(1,), (2,)]),
    3: ([(1,), (2,)], [(2,), (1, 2, 1)]),
    4: ([(1,), (2,)], [(1, 2, 1), (1,)]),
    5: ([(1,), (2,)], [(1, 2), (1, 2)]),
    6: ([(1,), (2,)], [(2, 1), (2, 1)]),
    7: ([(1,), (2,)], [(), ()]),
    8: ([(1,), (1,)], [(1, 2), (1, 2)]),
}
_DELTA = {
    1: ([(1,), (2,), (1,)], [(1,), (2,), (1,)]),
    2: ([(1,), (2,), (1,)], [(3,), (3, 2, 1, 2, 3), (3,)]),
    3: ([(1,), (2,), (3,)], [(1,), (2,), (3,)]),
    4: ([(1,), (2,), (3,)], [(3,), (3, 2, 1, 2, 3), (1,)]),
    5: ([(1,), (2,), (3,)], [(), (), ()]),
    6: ([(1,), (2,), (1,)], [(), (), ()]),
}
# which table entries descend to the welded / unrestricted quotients
_DESCENDING = {(Family.WB, 3): range(1, 6), (Family.UVB, 3): range(1, 5),
               (Family.WB, 4): range(1, 5), (Family.UVB, 4): range(1, 5)}


def _table_hom(pres: Presentation, n: int, vs, ss) -> Homomorphism:
    images = [_t(n, *x) for x in ss] + [_t(n, *x) for x in vs]
    return Homomorphism(pres, tuple(images))


def pi_P(pres: Presentation, n: int) -> Homomorphism:
    return Homomorphism(pres, tuple(tau(n, i) for i in range(1, n)) * 2)


def pi_K(pres: Presentation, n: int) -> Homomorphism:
    e = identity(n)
    return Homomorphism(pres, (e,) * (n - 1) + tuple(tau(n, i) for i in range(1, n)))


def named_homs(family, n: int) -> list[NamedHom]:
    fam = _fam(family)
    if fam not in BRAID_FAMILIES + (Family.VT,):
        raise UnsupportedFamily(f"no named homomorphisms for {fam}")
    pres = build_presentation(fam, n)
    out = []
    if fam is Family.VB and n in (3, 4):
        table, sym = (_PSI, "psi") if n == 3 else (_DELTA, "delta")
        for i, (vs, ss) in table.items():
            out.append(NamedHom(f"{sym}_{i}", _table_hom(pres, n, vs, ss)))
    elif fam in (Family.WB, Family.UVB) and n in (3, 4):
        table, sym = (_PSI, "psi") if n == 3 else (_DELTA, "delta")
        for i in _DESCENDING[(fam, n)]:
            vs, ss = table[i]
            out.append(NamedHom(f"{sym}_{i}", _table_hom(pres, n, vs, ss)))
    out.append(NamedHom("pi_P", pi_P(pres, n)))
    # pi_K only respects the forbidden relators for n = 2
    if fam in (Family.VB, Family.VT) or n == 2:
        out.append(NamedHom("pi_K", pi_K(pres, n)))
    return out


def named_hom(family, n: int, name: str) -> NamedHom:
    for h in named_homs(family, n):
        if h.name == name:
            return h
    raise KeyError(f"no homomorphism {name!r} for {family}{n}")


# ---------------------------------------------------------------- endomorphisms


@dataclass(frozen=True)
class NamedEndo:
    name: str
    presentation: Presentation
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.presentation.ngens:
            raise ValueError(f"{self.name}: need one image per generator")
        ngens = self.presentation.ngens
        for img in self.images:
            if any(not 0 <= g < ngens for g, _ in img):
                raise ValueError(f"{self.name}: image uses an unknown generator")

    def __call__(self, word: Word) -> Word:
        return substitute(word, dict(enumerate(self.images)))

    def image_of(self, gen: str) -> Word:
        return self.images[self.presentation.index(gen)]


def _endo(name: str, pres: Presentation, spec: dict[str, str]) -> NamedEndo:
    images = tuple(pres.word(spec.get(g, g)) for g in pres.generators)
    return NamedEndo(name, pres, images)


def named_endos(family, n: int | None = None) -> list[NamedEndo]:
    fam = _fam(family)
    pres = build_presentation(fam, n)
    out = []
    if fam is Family.VB:
        zeta1 = {f"s{i}": f"v{i} s{i} v{i}" for i in range(1, n)}
        zeta2 = {f"s{i}": f"s{i}^-1" for i in range(1, n)}
        if n == 2:
            out.append(_endo("alpha_VB2", pres, {"s1": "s1^-1 v1"}))
        if n == 3:
            out.append(_endo("alpha_VB3", pres, {"s1": "v1 v2 s1 v2 v1", "s2": "v1 v2 s2 v2 v1"}))
        out.append(_endo("zeta1", pres, zeta1))
        out.append(_endo("zeta2", pres, zeta2))
    elif fam is Family.VT:
        if n == 2:
            out.append(_endo("psi_VT2", pres, {"s1": "r1", "r1": "s1"}))
        if n == 3:
            out.append(_endo("phi_VT3", pres, {"s1": "s2", "s2": "r1 r2 s2 r2 r1"}))
    elif fam is Family.WALLPAPER_G:
        out.append(_endo("swap", pres, {"l_1_2": "l_2_1", "l_2_1": "l_1_2"}))
    out.insert(0, _endo("identity", pres, {}))
    return out


def named_endo(family, n: int | None, name: str) -> NamedEndo:
    for e in named_endos(family, n):
        if e.name == name:
            return e
    raise KeyError(f"no endomorphism {name!r} for {family}{n or ''}")
