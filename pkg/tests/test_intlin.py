import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from virtbraid.intlin import (AbInv, IntMatrix, LatticeTester, abs_det, hermite_rows, integer_kernel,
                              lattice_membership, lattice_solve, rank, same_lattice, saturated_span, saturation,
                              smith_decomposition, smith_diagonal, smith_normal_form)


def _sympy_invariants(rows, ncols):
    if not rows:
        return AbInv(ncols, ())
    d = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    nonzero = [x for x in diag if x]
    return AbInv.from_orders(ncols - len(nonzero), nonzero)


@pytest.mark.parametrize("rows", [
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[1, 2], [3, 4], [5, 6]],
    [[0, 0, 0]],
    [[6, 0], [0, 4]],
    [[2, 0, 0, 0], [0, 3, 0, 0]],
])
def test_snf_matches_sympy(rows):
    inv, _ = smith_normal_form(IntMatrix(rows))
    assert inv == _sympy_invariants(rows, len(rows[0]))


def test_decomposition_is_a_factorization():
    m = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    diag, U, V, Vinv = smith_decomposition(m)
    d = U @ m @ V
    for i in range(3):
        for j in range(3):
            assert d.rows[i][j] == (diag[i] if i == j and i < len(diag) else 0)
    assert V @ Vinv == IntMatrix.identity(3)
    assert smith_diagonal(m) == [2, 6, 12]


def test_abinv_rendering():
    inv = AbInv.from_orders(4, [3, 3, 3])
    assert inv.gap_format() == "[ 0, 0, 0, 0, 3, 3, 3 ]"
    assert str(inv) == "Z^4 + (Z_3)^3"
    assert AbInv(0, ()).gap_format() == "[  ]"
    assert str(AbInv(0, ())) == "0"
    assert AbInv.from_gap("[ 0, 2, 4 ]") == AbInv(1, (2, 4))
    assert AbInv.from_orders(0, [6]).gap_format() == "[ 2, 3 ]"
    assert AbInv.from_orders(0, [2, 3]).torsion == (6,)


def test_lattice_tools():
    basis = [[2, 0], [0, 3]]
    assert lattice_membership([4, 3], basis)
    assert not lattice_membership([1, 0], basis)
    assert [4, 6] in LatticeTester(basis, 2)
    assert lattice_solve([4, 3], basis) == [2, 1]
    assert lattice_solve([1, 0], basis) is None
    assert same_lattice([[1, 1], [0, 1]], [[1, 0], [0, 1]], 2)
    assert abs_det(IntMatrix([[2, 1], [1, 1]])) == 1
    assert rank(IntMatrix([[1, 2], [2, 4]])) == 1


def test_kernel_and_saturation():
    k = integer_kernel(IntMatrix([[1, 1, 1]]))
    assert k.nrows == 2
    for row in k.rows:
        assert sum(row) == 0
    assert saturated_span([[2, 2, 0]], 3).rows == [[1, 1, 0]]
    assert saturation(IntMatrix([[2, 0], [0, 2]])).rows in ([[1, 0], [0, 1]],)
    h = hermite_rows(IntMatrix([[2, 4], [1, 3]]))
    assert abs_det(h) == 2
