import pytest
from sympy.combinatorics.fp_groups import FpGroup, reidemeister_presentation
from sympy.combinatorics.free_groups import free_group

from virtbraid.catalog import build_presentation, named_hom
from virtbraid.intlin import IntMatrix, smith_normal_form
from virtbraid.kernelab import abelianization, coset_table, kernel_abelianization, kernel_report
from virtbraid.perms import Homomorphism, identity, tau


def sympy_kernel_gap(family, n, name):
    """Kernel abelianization via sympy's Reidemeister-Schreier rewriting."""
    pres = build_presentation(family, n)
    h = named_hom(family, n, name).hom
    F, *gs = free_group(",".join(pres.generators))

    def to_free(w):
        x = F.identity
        for g, s in w:
            x = x * gs[g] ** s
        return x

    G = FpGroup(F, [to_free(r) for r in pres.relators])
    table = coset_table(h)
    H = []
    for c in range(len(table)):
        for g in range(pres.ngens):
            if (c, g) not in table.tree:
                d = table.action[g][c]
                H.append(to_free(table.transversal[c]) * gs[g] * to_free(table.transversal[d]) ** -1)
    gens, rels = reidemeister_presentation(G, H)
    idx = {str(g): i for i, g in enumerate(gens)}
    rows = []
    for r in rels:
        row = [0] * len(gens)
        for sym, e in r.array_form:
            row[idx[str(sym)]] += e
        rows.append(row)
    return smith_normal_form(IntMatrix(rows, len(gens)))[0].gap_format()


@pytest.mark.parametrize("family, n, name", [
    ("VB", 3, "psi_1"), ("VB", 3, "psi_5"), ("VB", 3, "psi_8"),
    ("WB", 3, "psi_5"), ("UVB", 3, "psi_3"),
])
def test_matches_sympy_oracle(family, n, name):
    pres = build_presentation(family, n)
    ours = kernel_abelianization(pres, named_hom(family, n, name).hom).gap_format()
    assert ours == sympy_kernel_gap(family, n, name)


def test_coset_table_is_a_permutation_action():
    h = named_hom("VB", 3, "psi_1").hom
    t = coset_table(h)
    assert len(t) == 6
    for g in range(4):
        assert sorted(t.action[g]) == list(range(6))
    # transversal words lead from the base coset to their coset
    for c, w in enumerate(t.transversal):
        assert t.follow(0, w) == c


def test_report_shape():
    pres = build_presentation("VB", 3)
    rep = kernel_report(pres, named_hom("VB", 3, "psi_1").hom)
    d = rep.as_dict()
    assert d["gap_format"] == "[ 0, 0, 0, 0, 3, 3, 3 ]"
    # Schreier rank: index * (gens - 1) + 1
    assert d["schreier_generators"] == 6 * 3 + 1
    assert d["matrix_shape"] == [6 * len(pres.relators), 19]


def test_trivial_hom_gives_abelianization():
    pres = build_presentation("VB", 3)
    triv = Homomorphism(pres, (identity(3),) * 4)
    assert kernel_abelianization(pres, triv) == abelianization(pres)
    assert str(abelianization(pres)) == "Z + Z_2"
