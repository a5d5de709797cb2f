"""Claim-by-claim reproduction against the checked-in golden values.

Golden entries live in ``data/golden.json``.  Each entry names a section,
a ``kind`` (which computation to run), its parameters, the expected value
and a provenance tag (``literature``, ``derived`` or ``trivial``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any, Callable

from .catalog import build_presentation, forbidden_relators, named_endo, named_hom, named_homs
from .crystal import (bounded_box_order3, element_order, eval_affine, fixed_model, model_for,
                      verify_identity, zeta_identities)
from .homsearch import (characteristic_certificate, classify, enumerate_homs, filter_classes,
                        find_class)
from .kernelab import kernel_abelianization
from .perms import Homomorphism, identity, parse_cycles, product, tau
from .reptheory import (decompose, inner_product, isotypic_sublattice, permutation_character,
                        quotient_action, s4_character_table)
from .twisted import (abelian_table, cyclic_table, quotient_tower, reidemeister_lattice,
                      symmetric_group_table, twisted_classes_finite)
from .words import parse_word

SECTIONS = ("1", "3", "4.1", "4.2", "4.3", "appendix")
PROVENANCE = ("literature", "derived", "trivial")


def load_golden() -> dict:
    text = resources.files("virtbraid").joinpath("data/golden.json").read_text(encoding="utf-8")
    return json.loads(text)


# ---------------------------------------------------------------- shared, cached computations


@lru_cache(maxsize=None)
def classification(family: str, n: int, threads: int = 1):
    """(presentation, homomorphisms, classes) for ``family``/``n`` into S_n."""
    pres = build_presentation(family, n)
    homs = enumerate_homs(pres, n, threads=threads)
    return pres, homs, classify(homs, named_homs(family, n))


@lru_cache(maxsize=None)
def class_invariants(family: str, n: int, threads: int = 1) -> dict:
    pres, _, classes = classification(family, n, threads)
    return {c: kernel_abelianization(pres, c.representative) for c in classes}


def certificate(family: str, n: int, target: str, scope: str = "surjective", threads: int = 1):
    _, _, classes = classification(family, n, threads)
    tgt = find_class(classes, named_hom(family, n, target).hom)
    return characteristic_certificate(filter_classes(classes, scope), tgt, class_invariants(family, n, threads))


def descending_names(family: str, n: int) -> list[str]:
    """Listed homomorphisms of VB_n that kill the extra relators of ``family``."""
    pres = build_presentation("VB", n)
    kinds = {"WB": (1,), "UVB": (1, 2)}[family]
    extra = [parse_word(" ".join(tokens), pres.generators)
             for k in kinds for tokens in forbidden_relators(n, k)]
    out = []
    for nh in named_homs("VB", n):
        if nh.name.startswith(("psi_", "delta_")) and all(nh.hom(r).is_identity() for r in extra):
            out.append(nh.name)
    return out


# ---------------------------------------------------------------- check kinds


def _hom_count(p, threads):
    _, _, classes = classification(p["family"], p["n"], threads)
    return len(filter_classes(classes, p["filter"]))


def _hom_names(p, threads):
    _, _, classes = classification(p["family"], p["n"], threads)
    return sorted(c.label for c in filter_classes(classes, p["filter"]))


def _kernel_ab(p, threads):
    pres = build_presentation(p["family"], p["n"])
    return kernel_abelianization(pres, named_hom(p["family"], p["n"], p["hom"]).hom).gap_format()


def _descent(p, threads):
    return descending_names(p["family"], p["n"])


def _certificate(p, threads):
    cert = certificate(p["family"], p["n"], p["target"], p.get("scope", "surjective"), threads)
    return {"verdict": str(cert.verdict), "offenders": sorted(c.label for c in cert.offenders)}


def _witness(p, threads):
    fam, n = p["family"], p["n"]
    endo = named_endo(fam, n, p["endo"])
    hom = named_hom(fam, n, p["hom"]).hom
    word = endo.presentation.word(p["word"])
    before, after = hom(word), hom(endo(word))
    return {"identity": after.is_identity(), "image": str(after), "preimage_identity": before.is_identity()}


def _witness_expected(expected: dict, n: int) -> dict:
    exp = dict(expected)
    if "taus" in exp:
        exp["image"] = str(product((tau(n, i) for i in exp.pop("taus")), n))
    return exp


def _crystal_relcheck(p, threads):
    model = model_for(p["family"], p["n"])
    return all(ok for _, ok in model.relator_check())


def _fixed_relcheck(p, threads):
    return all(ok for _, ok in fixed_model(p["family"]).relator_check())


def _fixed_identity(p, threads):
    model = fixed_model(p["family"])
    return verify_identity(model.word(p["lhs"]), model.word(p["rhs"]), model)


def _crystal_order(p, threads):
    model = model_for(p["family"], p["n"])
    return element_order(eval_affine(model.word(p["word"]), model), model)


def _crystal_box(p, threads):
    model = model_for(p["family"], p["n"])
    target = eval_affine(model.word(p["word"]), model)
    return bounded_box_order3(model, target, p.get("radius", 2))["all_conjugate"]


def _zeta(p, threads):
    model = model_for("VB", p["n"], 0, p["holonomy"])
    return all(verify_identity(lhs, rhs, model)
               for i in p["indices"] for _, lhs, rhs in zeta_identities(model, i))


def _subgroup_ab(p, threads):
    pres = build_presentation(p["family"])
    deg = p["degree"]
    images = tuple(parse_cycles(p["images"][g], deg) if g in p["images"] else identity(deg)
                   for g in pres.generators)
    return kernel_abelianization(pres, Homomorphism(pres, images)).gap_format()


def _tower(p, threads):
    model = fixed_model(p["family"])
    endo = named_endo(p["family"], None, p["endo"])
    return quotient_tower(model, endo, p["ks"]).as_dict()


def _twisted_finite(p, threads):
    kind = p["group"]
    if kind == "symmetric":
        table = symmetric_group_table(p["n"])
    elif kind == "cyclic":
        table = cyclic_table(p["k"], p.get("multiplier", 1))
    elif kind == "abelian":
        table = abelian_table(p["k"], len(p["matrix"]), p["matrix"])
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    return twisted_classes_finite(table)


def _reidemeister_lattice(p, threads):
    return reidemeister_lattice(p["matrix"])


def _perm_char(p, threads):
    return permutation_character(p["n"]).as_strings()


def _decompose(p, threads):
    return list(decompose(permutation_character(p["n"])))


def _orthonormal(p, threads):
    table = s4_character_table()
    return all(inner_product(a, b) == (1 if i == j else 0)
               for i, a in enumerate(table) for j, b in enumerate(table))


def _isotypic_rank(p, threads):
    return isotypic_sublattice(4, p["components"]).nrows


def _quotient_action(p, threads):
    return quotient_action(4, isotypic_sublattice(4, p["components"])).as_dict()


KINDS: dict[str, Callable[[dict, int], Any]] = {
    "hom_count": _hom_count,
    "hom_names": _hom_names,
    "kernel_ab": _kernel_ab,
    "descent": _descent,
    "certificate": _certificate,
    "witness": _witness,
    "crystal_relcheck": _crystal_relcheck,
    "fixed_relcheck": _fixed_relcheck,
    "fixed_identity": _fixed_identity,
    "crystal_order": _crystal_order,
    "crystal_box": _crystal_box,
    "zeta": _zeta,
    "subgroup_ab": _subgroup_ab,
    "tower": _tower,
    "twisted_finite": _twisted_finite,
    "reidemeister_lattice": _reidemeister_lattice,
    "perm_char": _perm_char,
    "decompose": _decompose,
    "orthonormal": _orthonormal,
    "isotypic_rank": _isotypic_rank,
    "quotient_action": _quotient_action,
}


# ---------------------------------------------------------------- runner


@dataclass
class CheckResult:
    id: str
    section: str
    claim: str
    provenance: str
    expected: Any
    actual: Any
    status: str  # "pass" | "fail"
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        d = {"id": self.id, "section": self.section, "claim": self.claim, "provenance": self.provenance,
             "expected": self.expected, "actual": self.actual, "status": self.status}
        if self.error:
            d["error"] = self.error
        return d


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict) and isinstance(actual, dict):
        return all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    if isinstance(expected, list) and isinstance(actual, (list, tuple)):
        return len(expected) == len(actual) and all(_matches(e, a) for e, a in zip(expected, actual))
    return isinstance(expected, bool) == isinstance(actual, bool) and expected == actual


def run_check(entry: dict, threads: int = 1) -> CheckResult:
    expected = entry["expected"]
    if entry["kind"] == "witness":
        expected = _witness_expected(expected, entry["params"]["n"])
    try:
        actual = KINDS[entry["kind"]](entry["params"], threads)
        status, error = ("pass" if _matches(expected, actual) else "fail"), None
    except Exception as exc:  # a crashing check is a failed claim, reported with its error
        actual, status, error = None, "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(entry["id"], entry["section"], entry["claim"], entry["provenance"],
                       expected, actual, status, error)


def select(section: str | None = None, golden: dict | None = None) -> list[dict]:
    golden = golden or load_golden()
    if section is not None and section not in SECTIONS:
        raise ValueError(f"unknown section {section!r}; choose from {', '.join(SECTIONS)}")
    return [e for e in golden["checks"] if section is None or e["section"] == section]


def run_checks(section: str | None = None, threads: int = 1) -> list[CheckResult]:
    return [run_check(e, threads) for e in select(section)]


def summarize(results: list[CheckResult]) -> dict:
    return {
        "total": len(results),
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "failures": [r.id for r in results if not r.passed],
    }
