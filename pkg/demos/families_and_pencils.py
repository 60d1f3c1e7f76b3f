"""Indecomposables over H*(S^2 x S^2).

Admissible sequences of length 3 give five objects with f = 4 and distinct
cohomology, and a one-parameter family C_lambda with f = 2 is separated by
the projective class of lambda.  The family tree is written as Graphviz.
"""

import itertools

from dgar.arengine import admissible_sequences, build_family, build_pencil, component_certificate, gorenstein_check
from dgar.ringlab import endo_algebra, iso_test, locality
from dgar.shell.dot import family_tree_dot
from dgar.shell.fixtures import fixture


def main():
    a = fixture("prodspheres:2,2")
    cert = gorenstein_check(a)
    print("Gorenstein of dimension", cert.d)

    members = {al: build_family(a, al, cert) for al in admissible_sequences(3)}
    for al, m in members.items():
        print("C_%s  e = %s  H* %s" % ("".join(map(str, al)), m.plan.e_list, m.module.cohomology.dims))
    for x, y in itertools.combinations(members, 2):
        v = component_certificate(members[x].module, members[y].module, cert).verdict
        print("  %s vs %s: %s" % (x, y, v))

    lams = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 4)]
    pencils = {lam: build_pencil(a, 2, lam, cert) for lam in lams}
    for lam, c in pencils.items():
        end = endo_algebra(c)
        print("C_lambda %s: End dim %d, %s" % (lam, end.dim, locality(end)))
    for x, y in itertools.combinations(lams, 2):
        print("  %s vs %s: %s" % (x, y, iso_test(pencils[x], pencils[y]).verdict))

    print(family_tree_dot(members))


if __name__ == "__main__":
    main()
