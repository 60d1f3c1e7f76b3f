"""JSON documents for algebras, semi-free modules and reports.

Scalars are strings: ``"p/q"`` (or ``"p"``) over the rationals and residues
over a prime field.  Emission is canonical (sorted keys, sorted entries), so
``emit(parse(emit(x))) == emit(x)``.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from ..exactla import QQ, GF, Field

SCHEMA_VERSION = 1

__all__ = [
    "DocumentError",
    "algebra_to_document",
    "algebra_from_document",
    "module_to_document",
    "module_from_document",
    "algebra_digest",
    "canonical_json",
    "field_from_document",
]


class DocumentError(ValueError):
    """Parse or validation failure located by a JSON pointer."""

    def __init__(self, pointer: str, message: str):
        super().__init__("%s: %s" % (pointer or "/", message))
        self.pointer = pointer or "/"
        self.message = message

    def to_document(self):
        return {"error": "invalid_document", "pointer": self.pointer, "message": self.message}


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def field_from_document(doc, pointer="/field") -> Field:
    if doc == "Q":
        return QQ
    if isinstance(doc, dict) and set(doc) == {"GFp"}:
        try:
            return GF(int(doc["GFp"]))
        except (TypeError, ValueError) as exc:
            raise DocumentError(pointer + "/GFp", str(exc)) from None
    raise DocumentError(pointer, 'expected "Q" or {"GFp": p}')


def _scalar(field: Field, x, pointer: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(pointer, "scalars must be strings or integers, got %r" % (x,))
    try:
        return field(x)
    except (ValueError, ZeroDivisionError, TypeError):
        raise DocumentError(pointer, "not a scalar: %r" % (x,)) from None


def _vector(field: Field, xs, length: int, pointer: str):
    if not isinstance(xs, list) or len(xs) != length:
        raise DocumentError(pointer, "expected a list of %d scalars" % length)
    return [_scalar(field, x, "%s/%d" % (pointer, k)) for k, x in enumerate(xs)]


def _fmt(field: Field, v) -> list:
    return [field.format(x) for x in v]


# ------------------------------------------------------------------ algebras


def algebra_to_document(a) -> dict:
    f = a.field
    lo, hi = a.degree_range
    degrees = []
    local = {}
    for p in range(lo, hi + 1):
        idx = a.indices(p)
        for k, i in enumerate(idx):
            local[i] = (p, k)
        degrees.append({"degree": p, "dim": len(idx), "labels": [a.labels[i] for i in idx]})
    unit = [f.format(a.unit[i]) for i in a.indices(0)]
    mul = []
    for (i, j), row in sorted(a.table.items()):
        pi, ki = local[i]
        pj, kj = local[j]
        tgt = a.indices(pi + pj)
        vec = a.product(i, j)[tgt]
        mul.append([pi, ki, pj, kj, _fmt(f, vec)])
    mul.sort(key=lambda e: e[:4])
    diff = []
    for p in range(lo, hi + 1):
        src, tgt = a.indices(p), a.indices(p + 1)
        if not src or not tgt:
            continue
        block = a.diff[np.ix_(tgt, src)]
        if any(x != 0 for x in block.flat):
            diff.append([p, [_fmt(f, row) for row in block]])
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "dg_algebra",
        "field": f.to_document(),
        "degrees": degrees,
        "unit": unit,
        "mul": mul,
        "diff": diff,
    }


def algebra_from_document(doc, validate_axioms: bool = True):
    from ..dgalgebra import DGAlgebra, validate

    if not isinstance(doc, dict):
        raise DocumentError("/", "expected an object")
    if doc.get("kind", "dg_algebra") != "dg_algebra":
        raise DocumentError("/kind", "expected kind dg_algebra")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError("/schema_version", "unsupported schema version %r" % doc.get("schema_version"))
    f = field_from_document(doc.get("field"))
    degs = doc.get("degrees")
    if not isinstance(degs, list):
        raise DocumentError("/degrees", "expected a list")
    degrees, labels, where = [], [], {}
    seen = set()
    for k, entry in enumerate(sorted(degs, key=lambda e: e.get("degree", 0) if isinstance(e, dict) else 0)):
        ptr = "/degrees/%d" % k
        if not isinstance(entry, dict) or not isinstance(entry.get("degree"), int) or not isinstance(entry.get("dim"), int):
            raise DocumentError(ptr, "expected {degree: int, dim: int, labels: [...]}")
        p, n = entry["degree"], entry["dim"]
        if p in seen:
            raise DocumentError(ptr + "/degree", "degree %d listed twice" % p)
        seen.add(p)
        if n < 0:
            raise DocumentError(ptr + "/dim", "negative dimension")
        labs = entry.get("labels") or ["e%d_%d" % (p, t) for t in range(n)]
        if len(labs) != n:
            raise DocumentError(ptr + "/labels", "expected %d labels" % n)
        for t in range(n):
            where[(p, t)] = len(degrees)
            degrees.append(p)
            labels.append(str(labs[t]))
    total = len(degrees)
    pos = {}
    for (p, t), g in where.items():
        pos.setdefault(p, {})[t] = g

    def dim_of(p):
        return len(pos.get(p, {}))

    unit = f.zeros(total)
    u = doc.get("unit", [])
    for t, c in enumerate(_vector(f, u, dim_of(0), "/unit")):
        unit[pos[0][t]] = c
    table = {}
    for k, entry in enumerate(doc.get("mul", [])):
        ptr = "/mul/%d" % k
        if not isinstance(entry, list) or len(entry) != 5:
            raise DocumentError(ptr, "expected [i, a, j, b, vector]")
        i, a, j, b, vec = entry
        if (i, a) not in where:
            raise DocumentError(ptr + "/1", "no basis element %d in degree %d" % (a, i))
        if (j, b) not in where:
            raise DocumentError(ptr + "/3", "no basis element %d in degree %d" % (b, j))
        vals = _vector(f, vec, dim_of(i + j), ptr + "/4")
        table[(where[(i, a)], where[(j, b)])] = [(pos[i + j][t], c) for t, c in enumerate(vals) if c != 0]
    diff = f.zeros(total, total)
    for k, entry in enumerate(doc.get("diff", [])):
        ptr = "/diff/%d" % k
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], int):
            raise DocumentError(ptr, "expected [degree, matrix]")
        p, mat = entry
        rows, cols = dim_of(p + 1), dim_of(p)
        if not isinstance(mat, list) or len(mat) != rows:
            raise DocumentError(ptr + "/1", "expected %d rows" % rows)
        for r, row in enumerate(mat):
            vals = _vector(f, row, cols, "%s/1/%d" % (ptr, r))
            for c, x in enumerate(vals):
                diff[pos[p + 1][r], pos[p][c]] = x
    alg = DGAlgebra(f, degrees, labels, unit, table, diff)
    if validate_axioms:
        rep = validate(alg)
        if not rep.ok:
            fail = rep.failures[0]
            raise DocumentError("/mul" if fail.axiom in ("associativity", "unit") else "/diff",
                                "%s fails at %s %s" % (fail.axiom, fail.witness, fail.detail))
    return alg


def algebra_digest(a) -> str:
    return hashlib.sha256(canonical_json(algebra_to_document(a)).encode()).hexdigest()


# ------------------------------------------------------------------- modules


def module_to_document(m) -> dict:
    a = m.algebra
    f = a.field
    local = {}
    for p in a.dims:
        for k, i in enumerate(a.indices(p)):
            local[i] = (p, k)
    coeffs = []
    for (j, i), c in sorted(m.coeffs.items()):
        p = m.generators[j][1] - m.generators[i][1] + 1
        idx = a.indices(p)
        coeffs.append([j, i, p, _fmt(f, c[idx])])
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "semifree_module",
        "algebra": algebra_to_document(a),
        "generators": [{"label": lab, "degree": deg} for lab, deg in m.generators],
        "coefficients": coeffs,
    }


def module_from_document(doc, algebra=None):
    from ..dgmodule import SemiFreeModule

    if not isinstance(doc, dict) or doc.get("kind") != "semifree_module":
        raise DocumentError("/kind", "expected kind semifree_module")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError("/schema_version", "unsupported schema version")
    if algebra is None:
        try:
            algebra = algebra_from_document(doc.get("algebra"))
        except DocumentError as exc:
            raise DocumentError("/algebra" + exc.pointer.rstrip("/"), exc.message) from None
    f = algebra.field
    gens = []
    for k, g in enumerate(doc.get("generators", [])):
        if not isinstance(g, dict) or not isinstance(g.get("degree"), int):
            raise DocumentError("/generators/%d" % k, "expected {label, degree}")
        gens.append((str(g.get("label", "g%d" % k)), g["degree"]))
    coeffs = {}
    for k, entry in enumerate(doc.get("coefficients", [])):
        ptr = "/coefficients/%d" % k
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError(ptr, "expected [row, col, degree, vector]")
        j, i, p, vec = entry
        if not (isinstance(j, int) and isinstance(i, int) and 0 <= i < j < len(gens)):
            raise DocumentError(ptr, "entry (row, col) must satisfy col < row < #generators")
        if p != gens[j][1] - gens[i][1] + 1:
            raise DocumentError(ptr + "/2", "coefficient degree must be deg(row) - deg(col) + 1")
        idx = algebra.indices(p)
        vals = _vector(f, vec, len(idx), ptr + "/3")
        c = algebra.zero()
        c[idx] = vals
        coeffs[(j, i)] = c
    try:
        return SemiFreeModule(algebra, gens, coeffs)
    except ValueError as exc:
        raise DocumentError("/coefficients", str(exc)) from None
