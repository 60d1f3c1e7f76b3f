"""Finite cochain complexes and their cohomology tables.

A complex is a finite basis, each vector carrying a degree, together with a
degree-raising differential ``d`` acting on column vectors.  Algebras,
modules, Hom complexes and tensor complexes are all materialized this way and
share one cohomology routine.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .exactla import Field, Quotient, image, is_zero, kernel

__all__ = ["Complex", "CohomologyTable", "cohomology"]


@dataclass(eq=False)
class CohomologyTable:
    """Dimensions of H^p with chosen representative cocycles.

    ``reps[p]`` holds one row per basis class, as vectors in the ambient basis
    of the complex.  Representatives come from the greedy complement of the
    boundaries inside the cycles.
    """

    dims: dict
    reps: dict
    quotients: dict = dc_field(repr=False, default_factory=dict)
    indices: dict = dc_field(repr=False, default_factory=dict)
    ambient_dim: int = 0

    @property
    def inf(self):
        return min(self.dims) if self.dims else None

    @property
    def sup(self):
        return max(self.dims) if self.dims else None

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim(self, p: int) -> int:
        return self.dims.get(p, 0)

    def is_zero(self) -> bool:
        return not self.dims

    def amplitude(self):
        if not self.dims:
            return None
        return self.sup - self.inf

    def coords(self, v, p: int, check: bool = True):
        """Class of the degree-``p`` cocycle ``v`` (ambient vector) in rep coordinates."""
        idx = self.indices.get(p)
        if idx is None:
            return np.empty(0, dtype=object)
        return self.quotients[p].coords(np.asarray(v, dtype=object)[idx], check=check)

    def is_boundary(self, v, p: int) -> bool:
        return is_zero(self.coords(v, p))

    def as_list(self, lo: int, hi: int) -> list:
        return [self.dim(p) for p in range(lo, hi + 1)]

    def signature(self) -> tuple:
        return tuple(sorted(self.dims.items()))

    def shifted_signature(self, n: int) -> tuple:
        """Signature of the table of the n-fold suspension (degrees move by -n)."""
        return tuple(sorted((p - n, k) for p, k in self.dims.items()))

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return "CohomologyTable(%s)" % dict(sorted(self.dims.items()))


@dataclass(eq=False)
class Complex:
    field: Field
    degrees: tuple
    d: np.ndarray

    def __post_init__(self):
        self.degrees = tuple(int(x) for x in self.degrees)
        n = len(self.degrees)
        if self.d.shape != (n, n):
            raise ValueError("differential has shape %s, expected %s" % (self.d.shape, (n, n)))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @cached_property
    def _index(self) -> dict:
        out: dict = {}
        for i, p in enumerate(self.degrees):
            out.setdefault(p, []).append(i)
        return out

    def indices(self, p: int) -> list:
        return self._index.get(p, [])

    @property
    def support(self) -> list:
        return sorted(self._index)

    def block(self, p: int) -> np.ndarray:
        """Differential from degree p to degree p+1, in local coordinates."""
        src, tgt = self.indices(p), self.indices(p + 1)
        if not src or not tgt:
            return self.field.zeros(len(tgt), len(src))
        return self.d[np.ix_(tgt, src)]

    def check_d_squared(self) -> bool:
        return is_zero(self.d @ self.d) if self.dim else True

    def check_grading(self) -> bool:
        for j, p in enumerate(self.degrees):
            for i in np.nonzero([x != 0 for x in self.d[:, j]])[0]:
                if self.degrees[i] != p + 1:
                    return False
        return True

    @cached_property
    def cohomology(self) -> CohomologyTable:
        return cohomology(self)


def cohomology(c: Complex) -> CohomologyTable:
    dims, reps, quotients, indices = {}, {}, {}, {}
    n = c.dim
    f = c.field
    for p in c.support:
        idx = c.indices(p)
        cycles = kernel(c.block(p), f)
        if cycles.dim == 0:
            continue
        bounds = image(c.block(p - 1), f)
        q = Quotient(bounds, cycles)
        if q.dim == 0:
            continue
        full = f.zeros(q.dim, n)
        full[:, idx] = q.reps
        dims[p] = q.dim
        reps[p] = full
        quotients[p] = q
        indices[p] = idx
    return CohomologyTable(dims, reps, quotients, indices, n)
