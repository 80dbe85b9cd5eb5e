"""Command-line interface: verify, construct, example and compare.

Exit codes: 0 every check passed, 1 a verification failed, 2 the command line
or an input document is malformed, 3 a structural error (a partially defined
map applied outside its domain, a map leaving a subspace, ...).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bicoalgebroid import verify_bicoalgebroid, verify_h_comodule
from .coalgebra import CocenterObstruction, verify_bicomodule, verify_coalgebra
from .comonadics import verify_bicomonad, verify_opmonoidal_comonad
from .examples import (SetLevelViolation, action_groupoid, action_groupoid_bcc, coenveloping_bico,
                       conjugation_bcc, conjugation_gset, dual_group_hopf, finite_groupoid_bico, group_by_name,
                       group_hopf, grouplike, regular_bcc, regular_gset, swap_gset, trivial_phi, GSet)
from .exactlin import Field, Fp, NoPreimage, NotInSubspace, Q
from .report import CheckReport
from .serialize import Document, DocumentError, dumps, parse_document, to_document
from .smash import compare_bicoalgebroids, scalar_extension, smash_coproduct
from .tensor import NotInCotensorDomain
from .yd import BCCViolation, verify_bcc, verify_yd

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_STRUCTURE = 0, 1, 2, 3
STRUCTURAL = (NotInCotensorDomain, NotInSubspace, NoPreimage, CocenterObstruction, SetLevelViolation)

VERIFY_KINDS = ("coalgebra", "bicomodule", "bicoalgebroid", "h-comodules", "yd", "bcc", "bicomonad", "opmonoidal")
CONSTRUCT_KINDS = ("scalar-extension", "smash-coproduct", "coenveloping")
EXAMPLE_KINDS = ("group-hopf", "dual-group", "grouplike", "coenveloping", "action-groupoid", "groupoid",
                 "conjugation-bcc", "regular-bcc")


class UsageError(Exception):
    pass


def _field(text: str) -> Field:
    if text.upper() == "Q":
        return Q
    try:
        return Fp(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be Q or a prime, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bicoalg", description="Exact checks for bicoalgebroids and their scalar extensions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(q):
        q.add_argument("--format", choices=("text", "json"), default="text", help="report format on stdout")
        q.add_argument("--report", type=Path, help="also write the JSON report to this path")
        q.add_argument("--seed", type=int, default=0, help="seed for randomized sub-checks")

    v = sub.add_parser("verify", help="run a verifier on a document")
    v.add_argument("kind", choices=VERIFY_KINDS)
    v.add_argument("file", nargs="?", type=Path, help="main document")
    v.add_argument("--bico", type=Path, help="document holding the bicoalgebroid, if not in the main one")
    v.add_argument("--bcc", type=Path, help="document holding the BCC, if not in the main one")
    v.add_argument("--objects", type=Path, help="document with 'objects' or 'h_comodules'")
    v.add_argument("--no-independence", action="store_true",
                   help="skip the re-run with a second random extension of μ")
    common(v)

    c = sub.add_parser("construct", help="build a derived structure and write it as a document")
    c.add_argument("kind", choices=CONSTRUCT_KINDS)
    c.add_argument("file", nargs="?", type=Path)
    c.add_argument("--bico", type=Path)
    c.add_argument("--bcc", type=Path)
    c.add_argument("--coalgebra", type=Path)
    c.add_argument("-o", "--output", type=Path)
    common(c)

    e = sub.add_parser("example", help="write a built-in example as a document")
    e.add_argument("kind", choices=EXAMPLE_KINDS)
    e.add_argument("--group", default="Z2", help="Z<n> or S<n>")
    e.add_argument("--dim", type=int, default=2, help="dimension for grouplike coalgebras")
    e.add_argument("--coalgebra", default="grouplike2", help="grouplike<n> or dual-<group> for coenveloping")
    e.add_argument("--action", choices=("regular", "conjugation", "swap", "trivial"), default="regular")
    e.add_argument("--set", type=int, help="number of points for the trivial action")
    e.add_argument("--phi", choices=("trivial", "identity"), default="trivial")
    e.add_argument("--field", type=_field, default=Q)
    e.add_argument("-o", "--output", type=Path)
    common(e)

    m = sub.add_parser("compare", help="entry-wise comparison of two bicoalgebroids")
    m.add_argument("first", type=Path)
    m.add_argument("second", type=Path)
    m.add_argument("--bijection", help="comma-separated target index of each total basis vector")
    m.add_argument("--base-bijection", help="comma-separated target index of each base basis vector")
    common(m)
    return p


# -- document plumbing ---------------------------------------------------------

def _load(path: Path | None, what: str) -> Document:
    if path is None:
        raise UsageError(f"missing {what} document")
    return parse_document(path)


def _pick(args, key: str, *names: str) -> Document:
    """The first of the named documents that contains ``key``."""
    for name in names:
        path = getattr(args, name, None)
        if path is not None:
            doc = parse_document(path)
            if doc.has(key):
                return doc
    raise UsageError(f"no document given with a {key!r} entry")


def _same_field(*docs: Document) -> None:
    fields = {str(d.field) for d in docs}
    if len(fields) > 1:
        raise DocumentError(f"documents use different fields: {sorted(fields)}", "/field")


def _emit_doc(doc: dict, out: Path | None) -> None:
    text = dumps(doc)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")


def _emit_report(rep: CheckReport, args, title: str) -> int:
    if getattr(args, "report", None) is not None:
        args.report.write_text(json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n")
    if args.format == "json":
        print(json.dumps({"command": title, **rep.to_json()}, sort_keys=True))
    else:
        print(f"# {title}")
        if rep.to_text():
            print(rep.to_text())
        print(f"RESULT: {'PASS' if rep.ok else 'FAIL'} ({len(rep) - len(rep.failed())}/{len(rep)} checks)")
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- verbs ---------------------------------------------------------------------

def _verify(args) -> int:
    kind = args.kind
    if kind == "coalgebra":
        rep = verify_coalgebra(_load(args.file, "coalgebra").coalgebra())
    elif kind == "bicomodule":
        rep = verify_bicomodule(_load(args.file, "bicomodule").bicomodule())
    elif kind == "bicoalgebroid":
        doc = _pick(args, "bicoalgebroid", "file", "bico")
        rep = verify_bicoalgebroid(doc.bicoalgebroid(), seed=args.seed, independence=not args.no_independence)
    else:
        bdoc = _pick(args, "bicoalgebroid", "bico", "file", "bcc")
        B = bdoc.bicoalgebroid()
        if kind == "h-comodules":
            odoc = _pick(args, "h_comodules", "file", "objects")
            _same_field(bdoc, odoc)
            rep = CheckReport()
            for i, M in enumerate(odoc.h_comodules(B)):
                rep.merge(verify_h_comodule(M, B), f"{i}:")
        elif kind == "yd":
            ydoc = _pick(args, "yd_module", "file")
            _same_field(bdoc, ydoc)
            rep = verify_yd(ydoc.yd_module(B), B, seed=args.seed)
        elif kind == "bcc":
            ddoc = _pick(args, "bcc", "file", "bcc")
            _same_field(bdoc, ddoc)
            rep = verify_bcc(ddoc.bcc(B), B, seed=args.seed)
        elif kind == "bicomonad":
            objs = None
            if args.objects is not None:
                odoc = _load(args.objects, "objects")
                _same_field(bdoc, odoc)
                objs = odoc.objects(B.base)
            rep = verify_bicomonad(B, objs)
        else:
            ddoc = _pick(args, "bcc", "file", "bcc")
            _same_field(bdoc, ddoc)
            Dd = ddoc.bcc(B)
            objs = None
            if args.objects is not None:
                odoc = _load(args.objects, "objects")
                _same_field(bdoc, odoc)
                objs = odoc.h_comodules(B)
            rep = verify_opmonoidal_comonad(Dd, B, objs)
    return _emit_report(rep, args, f"verify {kind}")


def _construct(args) -> int:
    kind = args.kind
    if kind == "coenveloping":
        doc = _pick(args, "coalgebra", "coalgebra", "file")
        B = coenveloping_bico(doc.coalgebra())
        _emit_doc(to_document(B.field, bicoalgebroid=B), args.output)
        return EXIT_OK
    bdoc = _pick(args, "bicoalgebroid", "bico", "bcc", "file")
    ddoc = _pick(args, "bcc", "bcc", "file")
    _same_field(bdoc, ddoc)
    B = bdoc.bicoalgebroid()
    Dd = ddoc.bcc(B)
    if kind == "smash-coproduct":
        sm = smash_coproduct(Dd.coalgebra, Dd.yd.comodule, B, Dd.augmentation)
        _emit_doc(to_document(B.field, coalgebra=sm.coalgebra), args.output)
        return EXIT_OK
    try:
        out = scalar_extension(Dd, B)
    except BCCViolation as e:
        return _emit_report(e.report, args, "construct scalar-extension: input is not a BCC")
    _emit_doc(to_document(B.field, bicoalgebroid=out), args.output)
    return EXIT_OK


def _gset(args) -> GSet:
    G = group_by_name(args.group)
    if args.action == "swap":
        if G.order != 2:
            raise UsageError("the swap action needs --group Z2")
        X = swap_gset()
    elif args.action == "regular":
        X = regular_gset(G, [G.identity] * G.order)
    elif args.action == "conjugation":
        X = conjugation_gset(G)
    else:
        if not args.set:
            raise UsageError("the trivial action needs --set N")
        X = GSet(G, tuple((x,) * G.order for x in range(args.set)), None)
    if args.phi == "trivial":
        return trivial_phi(X)
    if X.size != G.order or args.action not in ("regular", "conjugation"):
        raise UsageError("--phi identity needs X = G (regular or conjugation action)")
    return X.with_phi(G.elements())


def _coalgebra_by_name(name: str, F: Field):
    if name.startswith("grouplike") and name[9:].isdigit():
        return grouplike(int(name[9:]), F)
    if name.startswith("dual-"):
        return dual_group_hopf(group_by_name(name[5:]), F)
    raise UsageError(f"unknown coalgebra {name!r}: use grouplike<n> or dual-<group>")


def _example(args) -> int:
    F = args.field
    kind = args.kind
    if kind == "group-hopf":
        B = group_hopf(group_by_name(args.group), F)
        doc = to_document(F, bicoalgebroid=B)
    elif kind == "dual-group":
        doc = to_document(F, coalgebra=dual_group_hopf(group_by_name(args.group), F))
    elif kind == "grouplike":
        doc = to_document(F, coalgebra=grouplike(args.dim, F))
    elif kind == "coenveloping":
        doc = to_document(F, bicoalgebroid=coenveloping_bico(_coalgebra_by_name(args.coalgebra, F)))
    elif kind == "action-groupoid":
        Dd, B = action_groupoid_bcc(_gset(args), F)
        doc = to_document(F, bicoalgebroid=B, bcc=Dd)
    elif kind == "groupoid":
        doc = to_document(F, bicoalgebroid=finite_groupoid_bico(action_groupoid(_gset(args)), F))
    elif kind == "conjugation-bcc":
        Dd, B = conjugation_bcc(group_by_name(args.group), F)
        doc = to_document(F, bicoalgebroid=B, bcc=Dd)
    else:
        Dd, B = regular_bcc(group_by_name(args.group), F)
        doc = to_document(F, bicoalgebroid=B, bcc=Dd)
    _emit_doc(doc, args.output)
    return EXIT_OK


def _indices(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bijection must be comma-separated integers, got {text!r}") from None


def _compare(args) -> int:
    d1, d2 = parse_document(args.first), parse_document(args.second)
    _same_field(d1, d2)
    B1, B2 = d1.bicoalgebroid(), d2.bicoalgebroid()
    bij, bbij = _indices(args.bijection), _indices(args.base_bijection)
    for name, b, n in (("bijection", bij, B1.n), ("base-bijection", bbij, B1.c)):
        if b is not None and sorted(b) != list(range(n)):
            raise UsageError(f"--{name} must be a permutation of 0..{n - 1}")
    rep = compare_bicoalgebroids(B1, B2, bij, bbij)
    return _emit_report(rep, args, "compare")


def run(argv=None) -> int:
    """Parse ``argv`` and execute; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_PARSE
    handlers = {"verify": _verify, "construct": _construct, "example": _example, "compare": _compare}
    try:
        return handlers[args.verb](args)
    except DocumentError as e:
        _diagnostic(e.to_json())
        return EXIT_PARSE
    except UsageError as e:
        _diagnostic({"error": "UsageError", "message": str(e)})
        return EXIT_PARSE
    except STRUCTURAL as e:
        _diagnostic({"error": type(e).__name__, "message": str(e)})
        return EXIT_STRUCTURE
    except ValueError as e:
        # constructor-level inconsistencies (bad group names, shapes)
        _diagnostic({"error": type(e).__name__, "message": str(e)})
        return EXIT_PARSE


def _diagnostic(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
