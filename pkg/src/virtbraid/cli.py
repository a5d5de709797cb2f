"""Command-line interface.

Every subcommand writes a report ``{command, inputs, results, status}`` to
standard output, as aligned text or (with ``--json``) as JSON with sorted
keys.  Exit codes: 0 success/pass, 1 verification mismatch, 2 usage or input
error.

Permutations are written in 1-based cycle notation and compose right to
left: ``p*q`` applies ``q`` first.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .catalog import (build_presentation, catalog_entries, named_endo, named_hom, named_homs)
from .crystal import (INFINITE, bounded_box_order3, conjugate_test, element_order, eval_affine,
                      fixed_model, model_for, verify_identity)
from .errors import VirtbraidError
from .homsearch import FILTERS, MAX_SEARCH_DEGREE, classify, enumerate_homs, filter_classes
from .intlin import AbInv
from .kernelab import kernel_report
from .perms import Homomorphism, Permutation, identity, parse_cycles
from .reptheory import (complement_index, decompose, fraction_str, inner_product, isotypic_sublattice,
                        permutation_character, projector, quotient_action, s4_character_table)
from .twisted import (MAX_ELEMENTS, abelian_cokernel_order, abelian_table, cyclic_table, quotient_tower,
                      reidemeister_lattice, symmetric_group_table, twisted_classes_finite)
from .verify import SECTIONS, certificate, descending_names, run_checks, summarize
from .words import format_presentation, parse_presentation

FIXED_FAMILIES = ("VB3_MOD_VP3COMM", "VB3_MOD_KB3COMM", "WALLPAPER_G")


class UsageError(Exception):
    """Bad command-line input (exit code 2)."""


# ---------------------------------------------------------------- serialization


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (Permutation, AbInv)):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2)


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj, key=str):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out or [(prefix, "{}")]
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
        return out or [(prefix, "[]")]
    if isinstance(obj, list):
        return [(prefix, "[" + ", ".join(str(v) for v in obj) + "]")]
    return [(prefix, str(obj))]


def _render_verify(report: dict) -> str:
    res = _jsonable(report["results"])
    lines = []
    for c in res["checks"]:
        lines.append(f"{c['status'].upper():4}  {c['section']:8}  {c['id']:32}  {c['claim']}")
        if c["status"] != "pass":
            lines.append(f"      expected: {json.dumps(c['expected'], sort_keys=True)}")
            lines.append(f"      actual:   {json.dumps(c['actual'], sort_keys=True)}")
            if "error" in c:
                lines.append(f"      error:    {c['error']}")
    s = res["summary"]
    lines.append(f"{s['passed']}/{s['total']} claims reproduced; status {report['status']}")
    if "elapsed_ms" in report:
        lines.append(f"elapsed_ms {report['elapsed_ms']}")
    return "\n".join(lines)


def render_text(report: dict) -> str:
    if report.get("command") == "verify-paper":
        return _render_verify(report)
    rows = _flatten(_jsonable(report))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# ---------------------------------------------------------------- helpers


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _matrix(text: str) -> list[list[int]]:
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix must be JSON, e.g. [[0,1],[1,0]]: {exc}") from exc
    if not (isinstance(m, list) and m and all(isinstance(r, list) and len(r) == len(m) for r in m)
            and all(isinstance(x, int) for r in m for x in r)):
        raise UsageError("matrix must be a non-empty square list of integer rows")
    return m


def _source(args):
    """Presentation from --file or --family/--n."""
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    if not args.family:
        raise UsageError("give --family (and --n) or --file")
    return build_presentation(args.family, args.n)


def _images(spec: str, pres, degree: int) -> Homomorphism:
    """Parse ``gen=(cycles);gen=(cycles)``; unspecified generators map to the identity."""
    given = {}
    for part in filter(None, (p.strip() for p in spec.split(";"))):
        if "=" not in part:
            raise UsageError(f"image {part!r} is not of the form gen=(cycles)")
        g, cyc = (x.strip() for x in part.split("=", 1))
        pres.index(g)
        given[g] = parse_cycles(cyc, degree)
    return Homomorphism(pres, tuple(given.get(g, identity(degree)) for g in pres.generators))


def _class_entry(c) -> dict:
    return {"rep": c.representative.describe(), "orbit_size": c.orbit_size, "flags": c.flags,
            "image_order": c.image_order, "matched_name": c.matched_name}


def _model(args):
    if args.family in FIXED_FAMILIES:
        return fixed_model(args.family)
    if args.n is None:
        raise UsageError("--n is required for this family")
    return model_for(args.family, args.n, args.choice, args.holonomy)


# ---------------------------------------------------------------- subcommands
# each returns (results, status) with status in {"pass", "fail", "n/a"}


def cmd_catalog(args):
    if args.action == "list":
        return {"entries": [{"family": f, "n": n} for f, n in catalog_entries()]}, "n/a"
    if not args.family:
        raise UsageError("catalog show needs a family")
    pres = build_presentation(args.family, args.n)
    return {"name": pres.name, "dsl": format_presentation(pres),
            "generators": list(pres.generators), "relators": len(pres.relators)}, "n/a"


def cmd_homs(args):
    pres = _source(args)
    target = args.target if args.target is not None else args.n
    if target is None:
        raise UsageError("give --target")
    homs = enumerate_homs(pres, target, threads=args.threads)
    named = named_homs(args.family, args.n) if args.family and not args.file and target == args.n else ()
    classes = filter_classes(classify(homs, named), args.filter)
    return {"total_homs": len(homs), "count": len(classes),
            "classes": [_class_entry(c) for c in classes]}, "n/a"


def cmd_kernel_ab(args):
    pres = _source(args)
    if args.hom:
        if not args.family or args.n is None:
            raise UsageError("--hom needs --family and --n")
        h = named_hom(args.family, args.n, args.hom).hom
    elif args.images:
        if args.degree is None:
            raise UsageError("--images needs --degree")
        h = _images(args.images, pres, args.degree)
    else:
        raise UsageError("give --hom NAME or --images SPEC --degree N")
    return kernel_report(pres, h).as_dict(), "n/a"


def cmd_descend(args):
    if args.family not in ("WB", "UVB"):
        raise UsageError("descend needs --family WB or UVB")
    passing = descending_names(args.family, args.n)
    listed = [h.name for h in named_homs("VB", args.n) if h.name.startswith(("psi_", "delta_"))]
    return {"descending": passing, "not_descending": [x for x in listed if x not in passing]}, "n/a"


def cmd_characteristic(args):
    cert = certificate(args.family, args.n, args.target, args.scope, args.threads)
    return {"verdict": cert.verdict, "target": cert.target.label, "reason": cert.reason,
            "offenders": sorted(c.label for c in cert.offenders),
            "witnesses": [{"class": c.label, "why": why} for c, why in cert.witnesses]}, "n/a"


def cmd_character(args):
    n = args.n
    if args.action == "table":
        if n != 4:
            raise UsageError("the full character table is available for n = 4 only")
        return {"characters": {chi.name: chi.as_strings() for chi in s4_character_table()}}, "n/a"
    chi = permutation_character(n)
    if args.action == "perm-char":
        return {"character": chi.as_strings()}, "n/a"
    if n != 4:
        raise UsageError(f"{args.action} is available for n = 4 only")
    if args.action == "decompose":
        table = s4_character_table()
        return {"multiplicities": list(decompose(chi)),
                "inner_products": {c.name: inner_product(chi, c) for c in table}}, "n/a"
    return _isotypic(_ints(args.components or ""))


def _isotypic(comps: list[int]):
    if not comps:
        raise UsageError("give components, e.g. 1,3,4")
    sub = isotypic_sublattice(4, comps)
    qa = quotient_action(4, sub)
    rest = [i for i in range(1, 6) if i not in comps]
    out = {"components": comps, "rank": sub.nrows, "basis": sub.tolist(),
           "projector": [[fraction_str(x) for x in row] for row in projector(4, comps)],
           "quotient": qa.as_dict()}
    if rest:
        other = isotypic_sublattice(4, rest)
        out["complement"] = {"components": rest, "rank": other.nrows,
                             "index_of_sum": complement_index(sub, other)}
    return out, "n/a"


def cmd_isotypic(args):
    return _isotypic(_ints(args.components))


def cmd_crystal(args):
    model = _model(args)
    info = {"labels": model.label_names(), "metadata": dict(model.metadata),
            "assignment": {g: a.as_dict() for g, a in zip(model.presentation.generators, model.assignment)}}
    act, w = args.action, args.words
    need = {"relcheck": 0, "order": 1, "box": 1, "conj": 2, "identity": 2}[act]
    if len(w) != need:
        raise UsageError(f"crystal {act} takes {need} word argument(s)")
    if act == "relcheck":
        checks = model.relator_check()
        ok = all(v for _, v in checks)
        return {**info, "relators": [{"relator": r, "ok": v} for r, v in checks]}, "pass" if ok else "fail"
    elems = [eval_affine(model.word(x), model) for x in w]
    if act == "order":
        return {**info, "element": elems[0].as_dict(), "order": element_order(elems[0], model)}, "n/a"
    if act == "box":
        res = bounded_box_order3(model, elems[0], args.radius)
        return {**info, "target": elems[0].as_dict(), **res}, "pass" if res["all_conjugate"] else "fail"
    if act == "conj":
        ok, wit = conjugate_test(elems[0], elems[1], model)
        return {**info, "conjugate": ok, "witness": wit.as_dict() if wit else None}, "n/a"
    ok = verify_identity(model.word(w[0]), model.word(w[1]), model)
    return {**info, "lhs": elems[0].as_dict(), "rhs": elems[1].as_dict(), "equal": ok}, "pass" if ok else "fail"


def cmd_reidemeister(args):
    if args.action == "lattice":
        if not args.matrix:
            raise UsageError("lattice needs --matrix")
        return {"classes": reidemeister_lattice(_matrix(args.matrix))}, "n/a"
    if args.action == "finite":
        if args.group == "symmetric":
            table = symmetric_group_table(args.n or 3)
        elif args.group == "cyclic":
            table = cyclic_table(args.k, args.multiplier)
        else:
            m = _matrix(args.matrix) if args.matrix else None
            dim = len(m) if m else (args.n or 1)
            table = abelian_table(args.k, dim, m)
        if not table.check_associative(seed=args.seed):
            raise UsageError("table is not associative")
        out = {"k": args.k, "classes": twisted_classes_finite(table), "order": len(table)}
        if args.group != "symmetric":
            mat = _matrix(args.matrix) if args.matrix else [[args.multiplier if args.group == "cyclic" else 1]]
            out["cokernel_order"] = abelian_cokernel_order(args.k, mat)
        return out, "n/a"
    if not args.family:
        raise UsageError("tower needs --family (and --n for non-fixed families)")
    model = _model(args)
    endo = None
    if args.endo:
        endo = named_endo(args.family, None if args.family in FIXED_FAMILIES else args.n, args.endo)
    rep = quotient_tower(model, endo, _ints(args.ks))
    return rep.as_dict(), "n/a"


def cmd_verify(args):
    results = run_checks(args.section, threads=args.threads)
    summary = summarize(results)
    return ({"summary": summary, "checks": [r.as_dict() for r in results]},
            "pass" if summary["failed"] == 0 else "fail")


# ---------------------------------------------------------------- parser


def _add_family(p, required=False):
    p.add_argument("--family", required=required, help="VB, WB, UVB, VT, SYM or a fixed quotient name")
    p.add_argument("--n", type=int, help="number of strands / degree")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (sorted keys)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--timing", action="store_true", help="include elapsed_ms in the report")

    parser = argparse.ArgumentParser(
        prog="virtbraid", parents=[common],
        description="Exact computations with virtual braid groups and their homomorphisms to "
                    "symmetric groups. Permutations compose right to left (p*q applies q first).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog presentations")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("family", nargs="?")
    p.add_argument("n", nargs="?", type=int)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("homs", parents=[common],
                       help=f"classify homomorphisms into S_n up to conjugacy (n <= {MAX_SEARCH_DEGREE})")
    _add_family(p)
    p.add_argument("--file", help="presentation in the DSL instead of --family")
    p.add_argument("--target", type=int, help="degree of the target symmetric group")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("kernel-ab", parents=[common], help="abelian invariants of a kernel")
    _add_family(p)
    p.add_argument("--file", help="presentation in the DSL instead of --family")
    p.add_argument("--hom", help="catalog homomorphism name, e.g. psi_1")
    p.add_argument("--images", help="explicit images 'gen=(1,2);gen=(1,2,3)'")
    p.add_argument("--degree", type=int, help="target degree for --images")
    p.set_defaults(func=cmd_kernel_ab)

    p = sub.add_parser("descend", parents=[common],
                       help="which listed homomorphisms of VB_n kill the welded/unrestricted relators")
    _add_family(p, required=True)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("characteristic", parents=[common], help="characteristic-kernel certificate")
    _add_family(p, required=True)
    p.add_argument("--target", required=True, help="catalog homomorphism name")
    p.add_argument("--scope", choices=FILTERS, default="surjective")
    p.set_defaults(func=cmd_characteristic)

    p = sub.add_parser("character", parents=[common], help="characters of S_n acting on ordered pairs")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("action", choices=["table", "perm-char", "decompose", "isotypic"])
    p.add_argument("components", nargs="?", help="for isotypic: e.g. 1,3,4")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("isotypic", parents=[common], help="isotypic sublattice of Z^12 and quotient action")
    p.add_argument("--components", required=True, help="e.g. 1,3,4")
    p.set_defaults(func=cmd_isotypic)

    p = sub.add_parser("crystal", parents=[common], help="crystallographic quotient models")
    _add_family(p, required=True)
    p.add_argument("--choice", type=int, default=0, help="which solution of the translation system")
    p.add_argument("--holonomy", choices=["pi_P", "pi_K"], default="pi_P")
    p.add_argument("--radius", type=int, default=2, help="box radius for 'box'")
    p.add_argument("action", choices=["relcheck", "order", "conj", "identity", "box"])
    p.add_argument("words", nargs="*")
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("reidemeister", parents=[common],
                       help=f"twisted conjugacy class counts (finite groups capped at {MAX_ELEMENTS} elements)")
    p.add_argument("action", choices=["finite", "lattice", "tower"])
    p.add_argument("--group", choices=["symmetric", "cyclic", "abelian"], default="symmetric")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--multiplier", type=int, default=1)
    p.add_argument("--matrix", help="JSON integer matrix, e.g. [[0,1],[1,0]]")
    p.add_argument("--family")
    p.add_argument("--endo", help="catalog endomorphism name (default identity)")
    p.add_argument("--ks", default="2,3,4,5", help="moduli for tower")
    p.add_argument("--choice", type=int, default=0)
    p.add_argument("--holonomy", choices=["pi_P", "pi_K"], default="pi_P")
    p.set_defaults(func=cmd_reidemeister)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce the golden claims")
    p.add_argument("--section", choices=SECTIONS)
    p.set_defaults(func=cmd_verify)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "json", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        results, status = args.func(args)
    except (UsageError, VirtbraidError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if type(exc) is KeyError and exc.args else exc
        print(f"virtbraid {args.command}: error: {msg}", file=sys.stderr)
        return 2
    report = {"command": args.command, "inputs": _inputs(args), "results": results, "status": status}
    if args.timing:
        report["elapsed_ms"] = int((time.perf_counter() - start) * 1000)
    print(dumps(report) if args.json else render_text(report))
    return 1 if status == "fail" else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
