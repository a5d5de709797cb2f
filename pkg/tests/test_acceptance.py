"""Acceptance suite: one test group per acceptance criterion (1-9).

Expected values are transcribed literally here so that this file can be read
on its own; the same values also live in ``virtbraid/data/golden.json``.
"""

import random
import time

import pytest

from virtbraid.catalog import build_presentation, named_endo, named_hom, named_homs
from virtbraid.cli import run
from virtbraid.verify import descending_names
from virtbraid.crystal import (bounded_box_order3, element_order, eval_affine, fixed_model, model_for,
                               verify_identity, zeta_identities)
from virtbraid.homsearch import (Verdict, characteristic_certificate, classify, enumerate_homs, filter_classes,
                                 find_class, kernel_equal)
from virtbraid.kernelab import kernel_abelianization
from virtbraid.perms import product, tau
from virtbraid.reptheory import (decompose, inner_product, isotypic_sublattice, permutation_character,
                                 quotient_action, s4_character_table)
from virtbraid.twisted import (INFINITE, TowerVerdict, abelian_cokernel_order, abelian_table, cyclic_table,
                               quotient_tower, reidemeister_lattice, symmetric_group_table, twisted_classes_finite)


def _classes(family, n):
    pres = build_presentation(family, n)
    return pres, classify(enumerate_homs(pres, n), named_homs(family, n))


# ---------------------------------------------------------------- 1. classification counts

NONABELIAN = [
    ("VB", 3, 8, [f"psi_{i}" for i in range(1, 9)]),
    ("VB", 4, 6, [f"delta_{i}" for i in range(1, 7)]),
    ("WB", 3, 5, [f"psi_{i}" for i in range(1, 6)]),
    ("UVB", 3, 4, [f"psi_{i}" for i in range(1, 5)]),
    ("WB", 4, 4, [f"delta_{i}" for i in range(1, 5)]),
    ("UVB", 4, 4, [f"delta_{i}" for i in range(1, 5)]),
]


@pytest.mark.parametrize("family, n, count, names", NONABELIAN)
def test_1_nonabelian_classes(family, n, count, names):
    start = time.perf_counter()
    _, classes = _classes(family, n)
    nonab = filter_classes(classes, "nonabelian")
    assert len(nonab) == count
    assert sorted(c.matched_name for c in nonab) == sorted(names)
    # each class agrees with its listed homomorphism up to conjugation, hence has the same kernel
    for c in nonab:
        assert kernel_equal(c.representative, named_hom(family, n, c.matched_name).hom)
    assert time.perf_counter() - start < 60


@pytest.mark.parametrize("n, which, count", [(2, "nontrivial", 3), (3, "surjective", 5), (4, "surjective", 6)])
def test_1_twin_classes(n, which, count):
    start = time.perf_counter()
    _, classes = _classes("VT", n)
    assert len(filter_classes(classes, which)) == count
    assert time.perf_counter() - start < 60


# ---------------------------------------------------------------- 2. kernel abelianizations

VB3 = ["[ 0, 0, 0, 0, 3, 3, 3 ]", "[ 0, 0, 0, 0, 0, 0 ]", "[ 0, 0, 0, 0, 0, 0 ]", "[ 0, 0, 0, 0, 0, 0 ]",
       "[ 0, 0, 2, 2, 2, 2 ]", "[ 0, 0, 2, 2, 2, 2 ]", "[ 0, 0 ]", "[ 0, 0, 0, 0, 3 ]"]
VB4 = ["[ 0, 0, 0, 2, 2 ]", "[ 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2 ]", "[ " + ", ".join(["0"] * 12) + " ]",
       "[ 0, 0, 0, 0, 0, 0, 2, 2 ]", "[ 0 ]", "[ 0, 2, 2 ]"]
WB3 = ["[ 0, 0, 3, 3, 3 ]", "[ 0, 0, 0, 0, 0, 0 ]", "[ 0, 0, 0, 0 ]", "[ 0, 0, 0, 0 ]", "[ 0, 3, 3, 3, 3, 3 ]"]
UVB3 = ["[ 0, 0, 3, 3 ]", "[ 0, 0, 0, 0, 0, 0 ]", "[ 0, 0, 3 ]", "[ 0, 0, 3 ]"]
WB4 = ["[ 0, 0, 0, 2, 2 ]", "[ 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2 ]", "[ " + ", ".join(["0"] * 12) + " ]",
       "[ 0, 0, 0, 2, 2, 2 ]"]
UVB4 = ["[ 0, 0, 0, 2, 2 ]", "[ 0, 0, 0, 2, 2, 2, 2, 2, 2 ]", "[ " + ", ".join(["0"] * 12) + " ]",
        "[ 0, 0, 0, 2, 2, 2 ]"]

KERNEL_CASES = []
for fam, n, values in [("VB", 3, VB3), ("VB", 4, VB4), ("WB", 3, WB3), ("UVB", 3, UVB3), ("WB", 4, WB4),
                       ("UVB", 4, UVB4)]:
    sym = "psi" if n == 3 else "delta"
    for i, gap in enumerate(values, start=1):
        marks = ()
        if (fam, n, i) == ("WB", 3, 5):
            marks = pytest.mark.xfail(
                strict=True,
                reason="published value Z + (Z_3)^5; both the built-in and the sympy Reidemeister-Schreier "
                       "computation give Z + (Z_2)^5")
        KERNEL_CASES.append(pytest.param(fam, n, f"{sym}_{i}", gap, marks=marks, id=f"{fam}{n}-{sym}_{i}"))


@pytest.mark.parametrize("family, n, name, gap", KERNEL_CASES)
def test_2_kernel_abelianization(family, n, name, gap):
    pres = build_presentation(family, n)
    assert kernel_abelianization(pres, named_hom(family, n, name).hom).gap_format() == gap


def test_2_welded_psi5_computed_value():
    """Records what is actually computed for the one mismatching entry."""
    pres = build_presentation("WB", 3)
    assert kernel_abelianization(pres, named_hom("WB", 3, "psi_5").hom).gap_format() == "[ 0, 2, 2, 2, 2, 2 ]"


def test_2_full_suite_time():
    start = time.perf_counter()
    for fam, n in [("VB", 3), ("VB", 4), ("WB", 3), ("UVB", 3), ("WB", 4), ("UVB", 4)]:
        pres = build_presentation(fam, n)
        for h in named_homs(fam, n):
            kernel_abelianization(pres, h.hom)
    assert time.perf_counter() - start < 300


# ---------------------------------------------------------------- 3. descent


def _descending(family, n):
    return descending_names(family, n)


@pytest.mark.parametrize("family, n, names", [
    ("WB", 3, [f"psi_{i}" for i in range(1, 6)]),
    ("UVB", 3, [f"psi_{i}" for i in range(1, 5)]),
    ("WB", 4, [f"delta_{i}" for i in range(1, 5)]),
    ("UVB", 4, [f"delta_{i}" for i in range(1, 5)]),
])
def test_3_descent(family, n, names):
    assert _descending(family, n) == names


# ---------------------------------------------------------------- 4. certificates


@pytest.mark.parametrize("family, n, target, verdict, offenders", [
    ("VB", 3, "psi_7", Verdict.CERTIFIED, []),
    ("VB", 4, "delta_3", Verdict.CERTIFIED, []),
    ("VB", 4, "delta_5", Verdict.CERTIFIED, []),
    ("WB", 3, "psi_2", Verdict.CERTIFIED, []),
    ("WB", 4, "delta_3", Verdict.CERTIFIED, []),
    ("UVB", 3, "psi_2", Verdict.CERTIFIED, []),
    ("UVB", 4, "delta_3", Verdict.CERTIFIED, []),
    ("VB", 3, "psi_2", Verdict.NOT_CERTIFIED, ["psi_3", "psi_4"]),
])
def test_4_certificates(family, n, target, verdict, offenders):
    pres, classes = _classes(family, n)
    inv = {c: kernel_abelianization(pres, c.representative) for c in classes}
    tgt = find_class(classes, named_hom(family, n, target).hom)
    cert = characteristic_certificate(filter_classes(classes, "surjective"), tgt, inv)
    assert cert.verdict is verdict
    assert sorted(c.matched_name for c in cert.offenders) == offenders


# ---------------------------------------------------------------- 5. non-characteristic witnesses


@pytest.mark.parametrize("family, n, endo, hom, word, expected_taus", [
    ("VB", 3, "alpha_VB3", "pi_P", "v1 s1", [1, 2]),
    ("VB", 2, "alpha_VB2", "pi_P", "v1 s1", None),
    ("VT", 2, "psi_VT2", "pi_K", "s1", [1]),
    ("VT", 3, "phi_VT3", "pi_P", "s1 r1", None),
])
def test_5_witnesses(family, n, endo, hom, word, expected_taus):
    e = named_endo(family, n, endo)
    h = named_hom(family, n, hom).hom
    w = e.presentation.word(word)
    assert h(w).is_identity()  # the element lies in the kernel ...
    image = h(e(w))
    assert not image.is_identity()  # ... but its image under the endomorphism does not
    if expected_taus:
        assert image == product((tau(n, i) for i in expected_taus), n)


# ---------------------------------------------------------------- 6. characters


def test_6_character_theory():
    start = time.perf_counter()
    chi = permutation_character(4)
    assert chi.as_strings() == ["12", "0", "2", "0", "0"]
    assert decompose(chi) == (1, 0, 1, 2, 1)
    assert [inner_product(chi, x) for x in s4_character_table()] == [1, 0, 1, 2, 1]
    sub = isotypic_sublattice(4, [1, 3, 4])
    assert sub.nrows == 9
    qa = quotient_action(4, sub)
    assert qa.rank == 3 and qa.faithful
    assert qa.character.as_strings() == ["3", "-1", "-1", "1", "0"]
    assert time.perf_counter() - start < 10


# ---------------------------------------------------------------- 7. crystallographic models


def test_7_crystallographic_models():
    start = time.perf_counter()
    for n in (3, 4, 5):
        model = model_for("VB", n)
        assert all(ok for _, ok in model.relator_check())
    m3 = model_for("VB", 3)
    gamma = eval_affine(m3.word("v1 v2"), m3)
    assert element_order(gamma, m3) == 3
    box = bounded_box_order3(m3, gamma, radius=2)
    assert box["all_conjugate"] and box["checked"] > 0
    for holonomy in ("pi_P", "pi_K"):
        m5 = model_for("VB", 5, 0, holonomy)
        for i in (1, 2, 3):
            for label, lhs, rhs in zeta_identities(m5, i):
                assert verify_identity(lhs, rhs, m5), label
    assert time.perf_counter() - start < 60


# ---------------------------------------------------------------- 8. twisted conjugacy


def test_8_twisted_conjugacy():
    start = time.perf_counter()
    assert twisted_classes_finite(symmetric_group_table(3)) == 3
    assert twisted_classes_finite(cyclic_table(5, 2)) == 1
    assert twisted_classes_finite(abelian_table(2, 2, [[0, 1], [1, 0]])) == 2
    assert reidemeister_lattice([[0, 1], [1, 0]]) == INFINITE

    rng = random.Random(20240601)
    for _ in range(100):
        k, m = rng.randint(2, 6), rng.randint(1, 3)
        if k ** m > 5000:
            m -= 1
        matrix = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
        table = abelian_table(k, m, matrix)
        assert twisted_classes_finite(table) == abelian_cokernel_order(k, matrix)

    model = fixed_model("WALLPAPER_G")
    for name in ("identity", "swap"):
        rep = quotient_tower(model, named_endo("WALLPAPER_G", None, name), [2, 3, 4, 5])
        assert rep.strictly_increasing
        assert rep.verdict is TowerVerdict.EVIDENCE_CONSISTENT
    assert time.perf_counter() - start < 120


# ---------------------------------------------------------------- 9. property suites


PROPERTY_TESTS = [
    "test_snf_invariant_under_unimodular_multiplication",
    "test_free_reduce_idempotent",
    "test_substitute_functorial",
    "test_enumeration_closed_under_conjugation",
    "test_kernel_abelianization_invariance",
    "test_character_orthonormality",
    "test_projector_idempotent",
]


@pytest.mark.parametrize("name", PROPERTY_TESTS)
def test_9_property_suites(name):
    import test_properties

    getattr(test_properties, name)()


# ---------------------------------------------------------------- runner


@pytest.mark.parametrize("section", ["1", "4.1", "4.2", "4.3", "appendix"])
def test_verify_sections_green(section, capsys):
    assert run(["verify-paper", "--section", section]) == 0


@pytest.mark.xfail(strict=True, reason="section 3 contains the welded psi_5 kernel mismatch")
def test_verify_section_3(capsys):
    assert run(["verify-paper", "--section", "3"]) == 0
