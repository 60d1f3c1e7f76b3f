"""Auslander-Reiten theory over a Gorenstein algebra.

The translate of a compact object is Sigma^{d-1} of it; the triangle ending in
A has a middle term isomorphic to Sigma C_1, and the f-invariant is additive
along it.  Shifts by multiples of d - 1 stay in one component.
"""

from dgar.arengine import ar_translate, ar_triangle, build_family, component_certificate, gorenstein_check
from dgar.dgmodule import free_module, shift
from dgar.ringlab import decompose, iso_test
from dgar.shell.fixtures import fixture


def main():
    a = fixture("sphere:2")
    cert = gorenstein_check(a)
    A = free_module(a, [0])
    c1 = build_family(a, (0,), cert).module
    for name, c in (("A", A), ("C_1", c1)):
        tr = ar_translate(c, cert)
        print("tau %s vs Sigma^%d %s: %s" % (name, cert.d - 1, name, tr.iso.verdict))

    tri = ar_triangle(A, cert)
    print("triangle tau A -> Y -> A: f =", tri.f_values, "additive:", tri.additive)
    print("Y vs Sigma C_1:", iso_test(tri.y, shift(c1, 1)).verdict)

    tri = ar_triangle(c1, cert)
    dec = decompose(tri.y)
    print("triangle ending in C_1: f =", tri.f_values, "middle term splits into", len(dec.summands))

    b = fixture("sphere:3")
    B = free_module(b, [0])
    for n in (1, 2, 4):
        print("sphere(3): A vs Sigma^%d A: %s" % (n, component_certificate(B, shift(B, n)).verdict))


if __name__ == "__main__":
    main()
