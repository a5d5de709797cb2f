"""Exact computations with virtual braid groups, their welded, unrestricted
and twin relatives, and their homomorphisms to symmetric groups."""

__version__ = "0.1.0"

from .catalog import Family, build_presentation, named_endo, named_endos, named_hom, named_homs
from .crystal import INFINITE, AffineElement, CrystModel, fixed_model, model_for, solve_assignment
from .errors import (DegreeError, NoSolution, NotAHomomorphism, NotDescending, PresentationSyntaxError,
                     RelatorViolation, UnknownGeneratorError, UnsupportedFamily, VirtbraidError)
from .homsearch import (Certificate, HomClass, Verdict, characteristic_certificate, classify,
                        enumerate_homs, filter_classes, kernel_equal)
from .intlin import AbInv, IntMatrix, smith_normal_form
from .kernelab import kernel_abelianization
from .perms import Homomorphism, Permutation
from .reptheory import ClassFunction, decompose, isotypic_sublattice, permutation_character, quotient_action
from .twisted import FiniteGroupTable, quotient_tower, reidemeister_lattice, twisted_classes_finite
from .words import Presentation, free_reduce, parse_presentation, parse_word, substitute

__all__ = [
    "AbInv", "AffineElement", "Certificate", "ClassFunction", "CrystModel", "DegreeError", "Family",
    "FiniteGroupTable", "HomClass", "Homomorphism", "INFINITE", "IntMatrix", "NoSolution",
    "NotAHomomorphism", "NotDescending", "Permutation", "Presentation", "PresentationSyntaxError",
    "RelatorViolation", "UnknownGeneratorError", "UnsupportedFamily", "Verdict", "VirtbraidError",
    "build_presentation", "characteristic_certificate", "classify", "decompose", "enumerate_homs",
    "filter_classes", "fixed_model", "free_reduce", "isotypic_sublattice", "kernel_abelianization",
    "kernel_equal", "model_for", "named_endo", "named_endos", "named_hom", "named_homs", "parse_presentation",
    "parse_word", "permutation_character", "quotient_action", "quotient_tower", "reidemeister_lattice",
    "smith_normal_form", "solve_assignment", "substitute", "twisted_classes_finite",
]
