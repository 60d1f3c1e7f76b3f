"""Named algebras: spheres, products of spheres, truncated polynomial rings and
a few hand-made algebras that exercise failure paths."""

from __future__ import annotations

import json
import random
import sys

from ..dgalgebra import DGAlgebra, exterior, sphere_model, tensor_product, truncated_polynomial
from ..dgmodule import ChainMap, direct_sum, free_module, mapping_cone, shift
from ..exactla import QQ
from .documents import DocumentError, algebra_from_document

__all__ = ["FIXTURES", "fixture", "load_algebra", "list_fixtures", "random_compact", "rigged"]


def _prodspheres(e: int, d: int) -> DGAlgebra:
    return tensor_product(sphere_model(e, name="x"), sphere_model(d, name="y"))


def _nongorenstein() -> DGAlgebra:
    # H* = k + k^2 in degree 2, all products of positive-degree classes zero
    return DGAlgebra(QQ, [0, 2, 2], ["1", "a", "b"], [1, 0, 0],
                     {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)], (0, 2): [(2, 1)], (2, 0): [(2, 1)]})


def _idempotents() -> DGAlgebra:
    return DGAlgebra(QQ, [0, 0], ["e1", "e2"], [1, 1], {(0, 0): [(0, 1)], (1, 1): [(1, 1)]})


def _triangular() -> DGAlgebra:
    # e n = n, n e = 0: associative but not graded commutative
    table = {
        (0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)], (0, 2): [(2, 1)], (2, 0): [(2, 1)],
        (1, 1): [(1, 1)], (1, 2): [(2, 1)],
    }
    return DGAlgebra(QQ, [0, 0, 2], ["1", "e", "n"], [1, 0, 0], table)


RIGGED = {
    "nongorenstein": (_nongorenstein, "H* = k + k^2 in degree 2 with zero products; not Gorenstein"),
    "g0235": (lambda: _prodspheres(2, 3), "sphere(2) (x) sphere(3): Gorenstein, H* in degrees 0, 2, 3, 5"),
    "idempotents": (_idempotents, "k x k in degree 0; H^0 is two-dimensional"),
    "triangular": (_triangular, "three-dimensional algebra with e n = n and n e = 0"),
}


def rigged(name: str) -> DGAlgebra:
    try:
        return RIGGED[name][0]()
    except KeyError:
        raise KeyError("unknown rigged fixture %r" % name) from None


def _ints(text: str, count: int, name: str):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError("%s expects %d integer arguments, got %r" % (name, count, text)) from None
    if len(vals) != count:
        raise ValueError("%s expects %d integer arguments, got %r" % (name, count, text))
    return vals


def fixture(name: str) -> DGAlgebra:
    """Build a named fixture such as ``sphere:2``, ``prodspheres:2,4`` or ``cp3``."""
    head, _, tail = name.partition(":")
    if head == "sphere":
        (d,) = _ints(tail, 1, "sphere")
        return sphere_model(d)
    if head == "prodspheres":
        e, d = _ints(tail, 2, "prodspheres")
        return _prodspheres(e, d)
    if head == "exterior":
        return exterior([int(x) for x in tail.split(",")])
    if head == "truncpoly":
        g, p = _ints(tail, 2, "truncpoly")
        return truncated_polynomial(g, p)
    if head == "cp3" and not tail:
        return truncated_polynomial(2, 4)
    if head == "ex62" and not tail:
        return tensor_product(truncated_polynomial(2, 2, name="x"), truncated_polynomial(4, 2, name="y"))
    if head == "rigged":
        return rigged(tail)
    raise KeyError("unknown fixture %r" % name)


FIXTURES = {
    "sphere:d": "k[x]/(x^2) with |x| = d",
    "prodspheres:e,d": "H*(S^e) (x) H*(S^d), generators x and y",
    "cp3": "k[x]/(x^4) with |x| = 2",
    "ex62": "k[x,y]/(x^2, y^2) with |x| = 2, |y| = 4",
    "exterior:p,q,...": "exterior algebra on odd-degree generators",
    "truncpoly:g,n": "k[x]/(x^n) with |x| = g",
}
FIXTURES.update({"rigged:%s" % k: v[1] for k, v in RIGGED.items()})


def list_fixtures() -> list:
    return sorted(FIXTURES.items())


def load_algebra(spec: str) -> DGAlgebra:
    """A fixture name, a path to a JSON document, or ``-`` for stdin."""
    if spec == "-":
        return algebra_from_document(_read_json(sys.stdin.read(), spec))
    if spec.endswith(".json"):
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError("/", "cannot read %s: %s" % (spec, exc)) from None
        return algebra_from_document(_read_json(text, spec))
    return fixture(spec)


def _read_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("/", "%s is not valid JSON: %s" % (where, exc)) from None


def random_compact(a: DGAlgebra, rng: random.Random, steps: int = 2, summands: int = 1, max_shift: int = 3):
    """A random compact module: iterated cones over shifted copies of A.

    Each step cones off a random nonzero cohomology class of the current
    object; steps that would make the object acyclic are skipped.
    """
    parts = []
    for _ in range(summands):
        c = free_module(a, [0], ["g0"])
        for _ in range(rng.randint(0, steps)):
            table = c.cohomology
            degs = [p for p, k in table.dims.items() if k]
            p = rng.choice(degs)
            reps = table.reps[p]
            coeffs = [rng.randint(-2, 2) for _ in range(len(reps))]
            if not any(coeffs):
                coeffs[rng.randrange(len(coeffs))] = 1
            z = sum((a.field(x) * r for x, r in zip(coeffs, reps)), a.field.zeros(c.materialize().dim))
            cone = mapping_cone(ChainMap(free_module(a, [p], ["s%d" % c.rank]), c, [z]))
            if not cone.cohomology.is_zero():
                c = cone
        parts.append(shift(c, rng.randint(-max_shift, max_shift)))
    return parts[0] if len(parts) == 1 else direct_sum(*parts)
