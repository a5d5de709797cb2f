from fractions import Fraction

import pytest

from virtbraid.errors import VirtbraidError
from virtbraid.intlin import IntMatrix
from virtbraid.reptheory import (ClassFunction, complement_index, decompose, inner_product, is_idempotent,
                                 isotypic_sublattice, permutation_character, projector, quotient_action,
                                 s4_character_table)


def test_permutation_character():
    assert permutation_character(4).as_strings() == ["12", "0", "2", "0", "0"]


def test_decomposition():
    assert decompose(permutation_character(4)) == (1, 0, 1, 2, 1)


def test_non_character_rejected():
    with pytest.raises(VirtbraidError):
        decompose(ClassFunction(4, (1, 0, 0, 0, 0)))


def test_inner_products_are_fractions():
    chi1 = s4_character_table()[0]
    half = ClassFunction(4, (Fraction(1, 2),) * 5)
    assert inner_product(chi1, half) == Fraction(1, 2)


def test_projectors_sum_to_identity():
    p = projector(4, [1, 2, 3, 4, 5])
    assert p == [[Fraction(int(i == j)) for j in range(12)] for i in range(12)]


@pytest.mark.parametrize("comps, rank", [([1, 3, 4], 9), ([5], 3), ([2], 0), ([1, 2, 3, 4, 5], 12)])
def test_isotypic_ranks(comps, rank):
    assert isotypic_sublattice(4, comps).nrows == rank


def test_quotient_action_by_vprime():
    qa = quotient_action(4, isotypic_sublattice(4, [1, 3, 4]))
    assert qa.rank == 3 and qa.faithful
    assert qa.character.as_strings() == ["3", "-1", "-1", "1", "0"]
    total = qa.character + qa.sub_character
    assert total.values == permutation_character(4).values


def test_quotient_by_chi5_lattice():
    qa = quotient_action(4, isotypic_sublattice(4, [5]))
    assert qa.rank == 9
    assert qa.character.as_strings() == ["9", "1", "3", "-1", "0"]


def test_quotient_by_everything_and_errors():
    qa = quotient_action(4, isotypic_sublattice(4, [1, 2, 3, 4, 5]))
    assert qa.rank == 0 and not qa.faithful
    with pytest.raises(VirtbraidError):
        quotient_action(4, IntMatrix([[2] + [0] * 11], 12))
    with pytest.raises(VirtbraidError):
        quotient_action(4, IntMatrix([[1] + [0] * 11], 12))


def test_complement_index():
    a = isotypic_sublattice(4, [1, 3, 4])
    b = isotypic_sublattice(4, [5])
    assert complement_index(a, b) == 128


def test_projector_idempotent():
    assert is_idempotent(projector(4, [4]))
