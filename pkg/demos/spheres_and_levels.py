"""Iterated cones over the cochains of a sphere.

Over A = k[x]/(x^2) with |x| = d every step cones off the top class, so
C_n has two cohomology classes and n + 1 generators.  The script prints the
f-invariant through both routes and the level certificate for each C_n, then
shows that the residue field k is not compact.
"""

import sys

from dgar.arengine import build_family
from dgar.dgmodule import augmentation_module
from dgar.resolve import f_invariant_report, is_compact, level_certificate
from dgar.shell.fixtures import fixture


def main(d: int = 2, depth: int = 3):
    a = fixture("sphere:%d" % d)
    print("A = H*(S^%d), cohomology %s" % (d, a.cohomology.dims))
    for n in range(depth + 1):
        c = build_family(a, (0,) * n).module
        rep = f_invariant_report(c)
        cert = level_certificate(c)
        print("C_%d  H* %-22s f = %d (hom %d, tensor %d)  level %s" % (
            n, c.cohomology.dims, rep.value, rep.via_hom, rep.via_tensor, cert.value))
    k = augmentation_module(a)
    rep = is_compact(k, cutoff=6 * (d - 1))
    gens = sorted(p for p, v in rep.resolution.betti.items() if v)
    print("k_A: %s, generators in degrees %s" % (rep.verdict, gens))


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:]))
