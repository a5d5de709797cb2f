import pytest

from virtbraid.errors import PresentationSyntaxError, UnknownGeneratorError
from virtbraid.words import (Presentation, concat, cyclic_permutation, format_presentation, format_word,
                             free_reduce, invert_word, parse_presentation, parse_word, power, substitute)

NAMES = ("a", "b", "c")


def test_free_reduce_cancels_adjacent_inverses():
    assert free_reduce([(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]) == ((2, 1),)


def test_invert_and_concat():
    w = parse_word("a b^-1 c", NAMES)
    assert concat(w, invert_word(w)) == ()
    assert invert_word(w) == parse_word("c^-1 b a^-1", NAMES)


def test_power():
    w = parse_word("a b", NAMES)
    assert power(w, 2) == parse_word("a b a b", NAMES)
    assert power(w, -1) == invert_word(w)
    assert power(w, 0) == ()


def test_parse_exponents():
    assert parse_word("a^3 b^-2", NAMES) == ((0, 1),) * 3 + ((1, -1),) * 2
    assert parse_word("a a^-1", NAMES) == ()


def test_unknown_generator():
    with pytest.raises(UnknownGeneratorError) as err:
        parse_word("a z", NAMES)
    assert "unknown generator `z`" in str(err.value)


def test_substitute():
    w = parse_word("a b", NAMES)
    images = {0: parse_word("b c", NAMES), 1: parse_word("c^-1", NAMES)}
    assert substitute(w, images) == parse_word("b", NAMES)


def test_cyclic_permutation():
    w = parse_word("a b c", NAMES)
    assert cyclic_permutation(w, 1) == parse_word("b c a", NAMES)


def test_format_word():
    assert format_word(parse_word("a b^-1 b^-1", NAMES), NAMES) == "a b^-1 b^-1"


DSL = """
# the symmetric group S3
group S3
gen t1 inv
gen t2 inv
rel t1 t2 t1 = t2 t1 t2
"""


def test_parse_presentation_and_round_trip():
    pres = parse_presentation(DSL)
    assert pres.name == "S3"
    assert pres.generators == ("t1", "t2")
    assert pres.involutions == frozenset({0, 1})
    assert len(pres.relators) == 3
    assert parse_presentation(format_presentation(pres)) == pres


@pytest.mark.parametrize("text, line", [
    ("gen a\n", 1),
    ("group G\ngen a\nrel a b\n", 3),
    ("group G\ngen a\ngen a\n", 3),
    ("group G\nfoo a\n", 2),
    ("group G\ngen a\nrel = a\n", 3),
])
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises((PresentationSyntaxError, UnknownGeneratorError)) as err:
        parse_presentation(text)
    if isinstance(err.value, PresentationSyntaxError):
        assert err.value.line == line


def test_presentation_validates_letters():
    with pytest.raises(Exception):
        Presentation("G", ("a",), (((3, 1),),))
