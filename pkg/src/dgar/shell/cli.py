"""Command line interface.

Exit codes: 0 success or certified, 1 refuted or not certified, 2 input
error, 3 inconclusive.  ``--json`` prints a machine-readable report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .. import __name__ as _pkg
from ..arengine import (
    admissible_sequences,
    ar_translate,
    ar_triangle,
    build_family,
    build_pencil,
    component_certificate,
    endo_recursion_check,
    gorenstein_check,
)
from ..dgalgebra import cohomology_ring, validate
from ..dgmodule import augmentation_module, free_module, direct_sum, shift
from ..resolve import INFINITY, f_invariant_report, level_certificate, minimal_semifree_resolution
from ..ringlab import endo_algebra, iso_test, locality
from .documents import DocumentError, algebra_digest, algebra_from_document, module_from_document
from .dot import family_tree_dot, pencil_dot
from .fixtures import list_fixtures, load_algebra, _read_json

OK, REFUTED, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2, 3

__all__ = ["main", "run"]


class InputError(Exception):
    pass


def _combine(codes) -> int:
    codes = list(codes)
    for c in (INPUT_ERROR, INCONCLUSIVE, REFUTED):
        if c in codes:
            return c
    return OK


# ---------------------------------------------------------------- objects


@dataclass(frozen=True)
class ObjectSpec:
    """Picklable description of a module, rebuilt inside worker processes."""

    kind: str
    algebra: str
    item: str
    e: int | None
    shift: int

    def label(self) -> str:
        base = {"free": "A[%s]", "family": "C_(%s)", "pencil": "C_lambda(%s)",
                "augmentation": "k_A%s", "module": "module%s"}[self.kind] % self.item
        return base if not self.shift else "Sigma^%d %s" % (self.shift, base)


def _algebra(spec: str):
    try:
        return load_algebra(spec)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _split_ints(text: str, what: str):
    if text in ("", "-"):
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError("%s must be a comma-separated list of integers, got %r" % (what, text)) from None


def build_object(spec: ObjectSpec):
    if spec.kind == "module":
        try:
            with open(spec.algebra, encoding="utf-8") as fh:
                doc = _read_json(fh.read(), spec.algebra)
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (spec.algebra, exc)) from None
        m = module_from_document(doc)
        return shift(m, spec.shift) if spec.shift else m
    a = _algebra(spec.algebra)
    if spec.kind == "free":
        degs = _split_ints(spec.item, "--degrees") or [0]
        m = direct_sum(*[free_module(a, [p], ["g%d" % i]) for i, p in enumerate(degs)])
    elif spec.kind == "family":
        alpha = tuple(_split_ints(spec.item, "--alpha"))
        m = build_family(a, alpha, e=spec.e).module
    elif spec.kind == "pencil":
        lam = spec.item.split(",")
        if len(lam) != 2:
            raise InputError("--lambda expects two scalars, got %r" % spec.item)
        e = spec.e if spec.e is not None else _first_pencil_degree(a)
        m = build_pencil(a, e, lam)
    elif spec.kind == "augmentation":
        m = augmentation_module(a, "right")
    else:
        raise InputError("unknown object kind %r" % spec.kind)
    return shift(m, spec.shift) if spec.shift else m


def _first_pencil_degree(a):
    table = a.cohomology
    for e in range(2, (table.sup or 0) - 1):
        if table.dim(e) >= 2:
            return e
    raise InputError("no degree e with dim H^e A >= 2 for a pencil")


def object_specs(args) -> list:
    kind = args.kind
    if kind == "family":
        items = args.alpha or ["-"]
    elif kind == "pencil":
        items = args.lam or []
        if not items:
            raise InputError("pencil objects need --lambda")
    elif kind == "free":
        items = args.degrees or ["0"]
    elif kind in ("augmentation", "module"):
        items = [""]
    else:
        raise InputError("unknown object kind %r" % kind)
    shifts = args.shift or []
    if len(items) == 1 and len(shifts) > 1:
        items = items * len(shifts)
    out = []
    for i, item in enumerate(items):
        s = shifts[i] if i < len(shifts) else 0
        out.append(ObjectSpec(kind, args.algebra, item, args.e, s))
    return out


# ------------------------------------------------------------------ tasks


def _fmt_f(v):
    return "infinity" if v is INFINITY else v


def task(command: str, spec: ObjectSpec, opts: dict):
    """Run one per-object command; returns (document, exit code)."""
    m = build_object(spec)
    doc = {"object": spec.label()}
    if command == "resolve":
        res = minimal_semifree_resolution(m, opts.get("cutoff"))
        doc.update({
            "betti": {str(k): v for k, v in res.betti.items()},
            "generators": res.rank,
            "terminated": res.terminated,
            "cutoff": res.cutoff_degree,
            "betti_recurrence": res.check_betti_recurrence(),
        })
        if not res.terminated:
            doc["note"] = "not terminated within the cutoff; not a proof of non-compactness"
        return doc, OK if res.terminated else INCONCLUSIVE
    if command == "f":
        rep = f_invariant_report(m, opts.get("cutoff"))
        doc.update(rep.to_document())
        return doc, INCONCLUSIVE if rep.value is INFINITY else OK
    if command == "endo":
        end = endo_algebra(m)
        verdict = locality(end)
        doc.update({"dim": end.dim, "locality": verdict,
                    "radical_dim": end.dim - end.radical_data.semisimple_dim if end.dim else 0})
        return doc, INCONCLUSIVE if verdict == "Inconclusive" else OK
    if command == "translate":
        tr = ar_translate(m)
        doc.update(tr.to_document())
        if tr.iso is None:
            return doc, INCONCLUSIVE
        return doc, OK if tr.verified else REFUTED
    if command == "ar-triangle":
        tri = ar_triangle(m)
        doc.update(tri.to_document())
        return doc, OK if tri.additive else REFUTED
    if command == "level":
        cert = level_certificate(m)
        doc.update(cert.to_document())
        return doc, OK if cert.exact else INCONCLUSIVE
    raise InputError("unknown command %r" % command)


def _guarded(command, spec, opts):
    try:
        return task(command, spec, opts)
    except (InputError, DocumentError, KeyError, ValueError) as exc:
        return {"object": spec.label(), "error": "input", "message": str(exc)}, INPUT_ERROR
    except (ArithmeticError, NotImplementedError) as exc:
        return {"object": spec.label(), "error": "verification", "message": str(exc)}, REFUTED


def _map(command, specs, opts, jobs: int):
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_guarded, [command] * len(specs), specs, [opts] * len(specs)))
    return [_guarded(command, s, opts) for s in specs]


def _family_task(algebra: str, alpha: tuple, e, check_endo: bool):
    a = _algebra(algebra)
    fm = build_family(a, alpha, e=e)
    doc = {
        "alpha": list(alpha),
        "plan": fm.plan.to_document(),
        "f": fm.module.rank,
        "cohomology": {str(p): k for p, k in fm.module.cohomology.dims.items()},
        "log": fm.log,
    }
    ok = fm.ok
    if check_endo:
        steps = []
        for i in range(len(alpha)):
            rep = endo_recursion_check(fm.chain[i], fm.chain[i + 1], fm.plan.eA_list[i])
            steps.append(rep)
            ok = ok and rep["ok"]
        doc["endo_recursion"] = steps
    return doc, OK if ok else REFUTED


def _family_guarded(args):
    try:
        return _family_task(*args)
    except (InputError, DocumentError, KeyError, ValueError) as exc:
        return {"alpha": list(args[1]), "error": "input", "message": str(exc)}, INPUT_ERROR
    except ArithmeticError as exc:
        return {"alpha": list(args[1]), "error": "verification", "message": str(exc)}, REFUTED


# --------------------------------------------------------------- commands


def _provenance(args, algebra=None) -> dict:
    out = {"package": _pkg, "seed": os.environ.get("DGA_AR_SEED")}
    if algebra is not None:
        out["algebra_digest"] = algebra_digest(algebra)
    return out


def cmd_validate(args):
    spec = args.algebra
    if spec == "-" or spec.endswith(".json"):
        text = sys.stdin.read() if spec == "-" else open(spec, encoding="utf-8").read()
        a = algebra_from_document(_read_json(text, spec), validate_axioms=False)
    else:
        a = _algebra(spec)
    rep = validate(a)
    doc = {
        "valid": rep.ok,
        "failures": [{"axiom": f.axiom, "witness": list(f.witness), "detail": f.detail} for f in rep.failures],
        "dims": {str(p): k for p, k in a.dims.items()},
        "simply_connected_model": a.is_simply_connected_model(),
    }
    lines = ["valid" if rep.ok else "invalid"] + ["  %s at %s: %s" % (f.axiom, f.witness, f.detail) for f in rep.failures]
    return doc, OK if rep.ok else REFUTED, lines


def cmd_cohomology(args):
    a = _algebra(args.algebra)
    ring, table = cohomology_ring(a)
    products = []
    for (i, j), row in sorted(ring.table.items()):
        products.append([ring.labels[i], ring.labels[j], [[ring.labels[m], a.field.format(c)] for m, c in row]])
    doc = {"dims": {str(p): k for p, k in table.dims.items()}, "inf": table.inf, "sup": table.sup,
           "products": products, "provenance": _provenance(args, a)}
    lo, hi = (table.inf or 0), (table.sup or 0)
    lines = ["H^%d = %d" % (p, table.dim(p)) for p in range(lo, hi + 1)]
    return doc, OK, lines


def cmd_gorenstein(args):
    a = _algebra(args.algebra)
    cert = gorenstein_check(a)
    doc = cert.to_document()
    doc["provenance"] = _provenance(args, a)
    if cert.certified:
        lines = ["Gorenstein of dimension %d" % cert.d,
                 "DA = Sigma^d A witness: %s" % ("verified" if cert.da_witness_ok else "not found")]
    else:
        lines = ["not Gorenstein: %s" % cert.reason]
    return doc, OK if cert.certified else REFUTED, lines


def _per_object(command):
    def run(args):
        specs = object_specs(args)
        opts = {"cutoff": getattr(args, "cutoff", None)}
        results = _map(command, specs, opts, args.jobs)
        docs = [d for d, _ in results]
        lines = []
        for d, code in results:
            body = ", ".join("%s=%s" % (k, v) for k, v in d.items() if k not in ("object", "log"))
            lines.append("%s: %s" % (d["object"], body))
        return {"results": docs, "provenance": _provenance(args)}, _combine(c for _, c in results), lines
    return run


def _two_objects(args):
    specs = object_specs(args)
    if len(specs) != 2:
        raise InputError("this command needs exactly two objects (repeat --alpha, --lambda, --degrees or --shift)")
    return specs, [build_object(s) for s in specs]


def cmd_iso(args):
    specs, (x, y) = _two_objects(args)
    res = iso_test(x, y)
    doc = res.to_document()
    doc["objects"] = [s.label() for s in specs]
    code = {"Isomorphic": OK, "NotIsomorphic": REFUTED}.get(res.verdict, INCONCLUSIVE)
    return doc, code, ["%s vs %s: %s" % (specs[0].label(), specs[1].label(), res.verdict)]


def cmd_separate(args):
    specs, (x, y) = _two_objects(args)
    cert = component_certificate(x, y)
    doc = cert.to_document()
    doc["objects"] = [s.label() for s in specs]
    code = INCONCLUSIVE if cert.verdict == "Inconclusive" else OK
    return doc, code, ["%s vs %s: %s" % (specs[0].label(), specs[1].label(), cert.verdict)]


def cmd_family(args):
    alphas = [tuple(_split_ints(x, "--alpha")) for x in (args.alpha or [])]
    if not alphas:
        raise InputError("family needs at least one --alpha")
    payloads = [(args.algebra, al, args.e, args.check_endo) for al in alphas]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_family_guarded, payloads))
    else:
        results = [_family_guarded(p) for p in payloads]
    lines = []
    for d, code in results:
        if "error" in d:
            lines.append("alpha=%s: %s" % (d["alpha"], d["message"]))
        else:
            lines.append("alpha=%s: f=%d e=%s H*=%s checks=%s" % (
                d["alpha"], d["f"], d["plan"]["e_list"], d["cohomology"], "ok" if code == OK else "FAILED"))
    return {"results": [d for d, _ in results], "provenance": _provenance(args)}, _combine(c for _, c in results), lines


def cmd_pencil(args):
    a = _algebra(args.algebra)
    lams = args.lam or []
    if not lams:
        raise InputError("pencil needs at least one --lambda")
    e = args.e if args.e is not None else _first_pencil_degree(a)
    docs, lines = [], []
    for lam in lams:
        parts = lam.split(",")
        if len(parts) != 2:
            raise InputError("--lambda expects two scalars, got %r" % lam)
        c = build_pencil(a, e, parts)
        end = endo_algebra(c)
        d = {"lambda": parts, "e": e, "f": f_invariant_report(c).value, "endo_dim": end.dim, "locality": locality(end),
             "cohomology": {str(p): k for p, k in c.cohomology.dims.items()}}
        docs.append(d)
        lines.append("lambda=[%s]: f=%s End dim=%d %s" % (":".join(parts), d["f"], end.dim, d["locality"]))
    return {"results": docs, "provenance": _provenance(args, a)}, OK, lines


def cmd_export_dot(args):
    a = _algebra(args.algebra)
    if args.lam:
        e = args.e if args.e is not None else _first_pencil_degree(a)
        pencils = {}
        for lam in args.lam:
            parts = lam.split(",")
            if len(parts) != 2:
                raise InputError("--lambda expects two scalars, got %r" % lam)
            key = tuple(a.field(x) for x in parts)
            pencils[key] = build_pencil(a, e, parts)
        text = pencil_dot(free_module(a, [0], ["g0"]), pencils, fmt=a.field.format)
    else:
        depth = args.depth
        if depth < 0:
            raise InputError("--depth must be non-negative")
        members = {al: build_family(a, al, e=args.e) for al in admissible_sequences(depth)}
        text = family_tree_dot(members)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {"dot": text}, OK, [text.rstrip("\n")]


def cmd_fixtures(args):
    items = list_fixtures()
    return {"fixtures": [{"name": n, "description": d} for n, d in items]}, OK, ["%-22s %s" % it for it in items]


# ------------------------------------------------------------------ parser


def _add_object_args(p, two=False):
    p.add_argument("kind", choices=["free", "family", "pencil", "augmentation", "module"],
                   help="object kind; 'module' takes a module JSON file in place of the algebra")
    p.add_argument("algebra", help="fixture name, algebra JSON file or '-' for stdin")
    p.add_argument("--alpha", action="append", help="construction sequence such as 0,1,0 (repeatable)")
    p.add_argument("--lambda", dest="lam", action="append", help="pencil parameter such as 1,2 (repeatable)")
    p.add_argument("--degrees", action="append", help="generator degrees of a free module (repeatable)")
    p.add_argument("--shift", action="append", type=int, help="apply Sigma^n to the object (repeatable)")
    p.add_argument("--e", type=int, help="interior degree for second-kind steps and pencils")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgar", description="Homological invariants of finite DG algebras.")
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for independent objects")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn in (("validate", cmd_validate), ("cohomology", cmd_cohomology), ("gorenstein", cmd_gorenstein)):
        p = sub.add_parser(name)
        p.add_argument("algebra")
        p.set_defaults(func=fn)

    for name in ("resolve", "f", "endo", "translate", "ar-triangle", "level"):
        p = sub.add_parser(name)
        _add_object_args(p)
        if name in ("resolve", "f"):
            p.add_argument("--cutoff", type=int, help="largest generator degree")
        p.set_defaults(func=_per_object(name))

    for name, fn in (("iso", cmd_iso), ("separate", cmd_separate)):
        p = sub.add_parser(name)
        _add_object_args(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("family")
    p.add_argument("algebra")
    p.add_argument("--alpha", action="append")
    p.add_argument("--e", type=int)
    p.add_argument("--check-endo", action="store_true", help="verify the endomorphism recursion at every step")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("pencil")
    p.add_argument("algebra")
    p.add_argument("--lambda", dest="lam", action="append")
    p.add_argument("--e", type=int)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("export-dot")
    p.add_argument("algebra")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--lambda", dest="lam", action="append")
    p.add_argument("--e", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("fixtures")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_fixtures)
    return parser


def _accept_global_flags(argv):
    """Allow --json and --jobs after the subcommand as well as before it."""
    front, rest = [], []
    it = iter(argv)
    for tok in it:
        if tok == "--json":
            front.append(tok)
        elif tok == "--jobs":
            front.extend([tok, next(it, "1")])
        elif tok.startswith("--jobs="):
            front.append(tok)
        else:
            rest.append(tok)
    return front + rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_accept_global_flags(argv))
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        doc, code, lines = args.func(args)
    except DocumentError as exc:
        doc, code, lines = exc.to_document(), INPUT_ERROR, ["input error at %s: %s" % (exc.pointer, exc.message)]
    except (InputError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        doc, code, lines = {"error": "input", "message": msg}, INPUT_ERROR, ["input error: %s" % msg]
    except (ArithmeticError, NotImplementedError) as exc:
        doc, code, lines = {"error": "verification", "message": str(exc)}, REFUTED, ["verification failed: %s" % exc]
    if args.json:
        doc = dict(doc)
        doc.setdefault("command", args.command)
        doc["exit_code"] = code
        print(json.dumps(doc, sort_keys=True, indent=2, default=str))
    else:
        for line in lines:
            print(line)
    return code


def run():
    sys.exit(main())
