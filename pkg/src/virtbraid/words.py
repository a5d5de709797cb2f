"""Words in free groups, finite presentations and the presentation DSL.

A word is a tuple of letters ``(generator_index, sign)`` with ``sign`` in
``{+1, -1}``.  Words are plain tuples so they hash, compare and pickle
cheaply; all functions here return new tuples.

The DSL is line oriented::

    group VB3
    gen s1
    gen v1 inv          # adds the relator v1 v1
    rel s1 s2 s1 = s2 s1 s2
    rel v1^2

A relation ``u = w`` is stored as the freely reduced relator ``u w^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import PresentationSyntaxError, UnknownGeneratorError, VirtbraidError

Letter = tuple[int, int]
Word = tuple[Letter, ...]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")


class Generator(NamedTuple):
    name: str
    index: int


def free_reduce(word: Iterable[Letter]) -> Word:
    stack: list[Letter] = []
    for gen, sign in word:
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def invert_word(word: Sequence[Letter]) -> Word:
    return free_reduce((gen, -sign) for gen, sign in reversed(word))


def concat(*words: Sequence[Letter]) -> Word:
    return free_reduce(letter for w in words for letter in w)


def power(word: Sequence[Letter], k: int) -> Word:
    base = tuple(word) if k >= 0 else invert_word(word)
    return free_reduce(base * abs(k))


def substitute(word: Sequence[Letter], images: Mapping[int, Sequence[Letter]]) -> Word:
    """Apply the endomorphism of the free group given on generators.

    Raises ``KeyError`` if a generator of ``word`` has no image.
    """
    out: list[Letter] = []
    for gen, sign in word:
        try:
            img = images[gen]
        except (KeyError, IndexError):
            raise KeyError(f"no image for generator index {gen}") from None
        out.extend(img if sign > 0 else invert_word(img))
    return free_reduce(out)


def cyclic_permutation(word: Sequence[Letter], shift: int) -> Word:
    if not word:
        return ()
    shift %= len(word)
    return free_reduce(tuple(word[shift:]) + tuple(word[:shift]))


def letters_used(word: Iterable[Letter]) -> set[int]:
    return {gen for gen, _ in word}


def _is_square(word: Word) -> int | None:
    if len(word) == 2 and word[0] == word[1]:
        return word[0][0]
    return None


def involution_flags(relators: Iterable[Word]) -> frozenset[int]:
    """Generators ``g`` for which some relator has the shape ``g^2``."""
    return frozenset(g for r in relators if (g := _is_square(r)) is not None)


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    involutions: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.involutions is None:
            object.__setattr__(self, "involutions", involution_flags(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise VirtbraidError(f"duplicate generator names in {self.generators}")
        for name in self.generators:
            if not _IDENT.match(name):
                raise VirtbraidError(f"invalid generator name {name!r}")
        ngens = len(self.generators)
        for r in self.relators:
            for gen, sign in r:
                if not 0 <= gen < ngens or sign not in (1, -1):
                    raise VirtbraidError(f"bad letter {(gen, sign)} in relator of {self.name}")
        present = involution_flags(self.relators)
        missing = set(self.involutions) - present
        if missing:
            raise VirtbraidError(f"involution flag without relator g^2 for {sorted(missing)}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def gens(self) -> tuple[Generator, ...]:
        return tuple(Generator(name, i) for i, name in enumerate(self.generators))

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGeneratorError(name) from None

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, word: Sequence[Letter]) -> str:
        return format_word(word, self.generators)

    def with_relators(self, extra: Iterable[Word], name: str | None = None) -> "Presentation":
        return Presentation(name or self.name, self.generators, self.relators + tuple(extra))


def format_word(word: Sequence[Letter], names: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(names[g] if s > 0 else f"{names[g]}^-1" for g, s in word)


def _parse_tokens(tokens: Sequence[tuple[str, int]], names: Sequence[str], line: int) -> Word:
    lookup = {name: i for i, name in enumerate(names)}
    letters: list[Letter] = []
    for tok, col in tokens:
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise PresentationSyntaxError(f"malformed token {tok!r}", line, col)
        name, exp = m.group(1), m.group(2)
        if name not in lookup:
            raise UnknownGeneratorError(name)
        k = 1 if exp is None else int(exp)
        sign = 1 if k > 0 else -1
        letters.extend([(lookup[name], sign)] * abs(k))
    return free_reduce(letters)


def _split(text: str, offset: int = 0) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1 + offset) for m in re.finditer(r"\S+", text)]


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a whitespace separated word such as ``"v1 s2^-1 s1^3"``."""
    return _parse_tokens(_split(text), names, 1)


def parse_presentation(text: str) -> Presentation:
    name = None
    gens: list[str] = []
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _split(line)
        if not tokens:
            continue
        keyword, col = tokens[0]
        args = tokens[1:]
        if keyword == "group":
            if len(args) != 1:
                raise PresentationSyntaxError("expected `group <name>`", lineno, col)
            if name is not None:
                raise PresentationSyntaxError("group declared twice", lineno, col)
            name = args[0][0]
        elif keyword == "gen":
            if not args or len(args) > 2 or (len(args) == 2 and args[1][0] != "inv"):
                raise PresentationSyntaxError("expected `gen <id> [inv]`", lineno, col)
            gname, gcol = args[0]
            if not _IDENT.match(gname):
                raise PresentationSyntaxError(f"invalid generator name {gname!r}", lineno, gcol)
            if gname in gens:
                raise PresentationSyntaxError(f"duplicate generator `{gname}`", lineno, gcol)
            gens.append(gname)
            if len(args) == 2:
                g = len(gens) - 1
                relators.append(((g, 1), (g, 1)))
        elif keyword == "rel":
            eqs = [i for i, (tok, _) in enumerate(args) if tok == "="]
            if not args or len(eqs) > 1 or (eqs and eqs[0] in (0, len(args) - 1)):
                raise PresentationSyntaxError("expected `rel <word> [= <word>]`", lineno, col)
            if eqs:
                lhs = _parse_tokens(args[: eqs[0]], gens, lineno)
                rhs = _parse_tokens(args[eqs[0] + 1 :], gens, lineno)
                relators.append(concat(lhs, invert_word(rhs)))
            else:
                relators.append(_parse_tokens(args, gens, lineno))
        else:
            raise PresentationSyntaxError(f"unknown keyword {keyword!r}", lineno, col)
    if name is None:
        raise PresentationSyntaxError("missing `group <name>` line", 1, 1)
    return Presentation(name, tuple(gens), tuple(relators))


def format_presentation(pres: Presentation) -> str:
    """Render ``pres`` in the DSL.  Parsing the result gives back ``pres``."""
    lines = [f"group {pres.name}"]
    lines += [f"gen {g}" for g in pres.generators]
    lines += [f"rel {format_word(r, pres.generators)}" for r in pres.relators]
    return "\n".join(lines) + "\n"
