import pytest

from virtbraid.catalog import (build_presentation, catalog_entries, forbidden_relators, named_endo, named_endos,
                               named_hom, named_homs)
from virtbraid.errors import UnsupportedFamily
from virtbraid.perms import closure
from virtbraid.words import format_presentation, parse_presentation, parse_word


def test_vb3_relator_count():
    # AR1 (one braid relation) + PR1 (two involutions) + PR2 + MR2; no far-commutation pairs for n = 3
    assert len(build_presentation("VB", 3).relators) == 5


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_relator_inclusions(n):
    vb = set(build_presentation("VB", n).relators)
    wb = set(build_presentation("WB", n).relators)
    uvb = set(build_presentation("UVB", n).relators)
    assert vb <= wb <= uvb


def test_forbidden_relators_shape():
    pres = build_presentation("VB", 4)
    for kind in (1, 2):
        rels = forbidden_relators(4, kind)
        assert len(rels) == 2
        for tokens in rels:
            assert len(parse_word(" ".join(tokens), pres.generators)) == 6


@pytest.mark.parametrize("family, n", [e for e in catalog_entries() if e[1] is None or e[1] <= 4])
def test_dsl_round_trip(family, n):
    pres = build_presentation(family, n)
    assert parse_presentation(format_presentation(pres)) == pres


@pytest.mark.parametrize("family, n", [(f, n) for f in ("VB", "WB", "UVB", "VT") for n in (2, 3, 4, 5, 6)])
def test_projections_are_surjective(family, n):
    for h in named_homs(family, n):
        if h.name in ("pi_P", "pi_K"):
            assert closure(h.images).is_full_symmetric


def test_named_homs_satisfy_relators():
    for family in ("VB", "WB", "UVB"):
        for n in (3, 4):
            for h in named_homs(family, n):
                pres = h.presentation
                assert all(h.hom(r).is_identity() for r in pres.relators)


def test_named_lookup_errors():
    with pytest.raises(KeyError):
        named_hom("VB", 3, "delta_1")
    with pytest.raises(UnsupportedFamily):
        named_homs("SYM", 3)


def test_named_endos_respect_relators_in_projection_images():
    # alpha on VB3 composed with pi_P is again a homomorphism
    alpha = named_endo("VB", 3, "alpha_VB3")
    pi = named_hom("VB", 3, "pi_P").hom
    for r in alpha.presentation.relators:
        assert pi(alpha(r)).is_identity()
    assert named_endos("VB", 3)[0].name == "identity"
