"""Finite-dimensional DG algebras given by structure constants.

An algebra is a graded basis (sorted by degree), a unit vector, a sparse
multiplication table ``(i, j) -> [(m, c), ...]`` meaning
``e_i e_j = sum c e_m``, and a differential matrix acting on column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .complexes import CohomologyTable, Complex
from .exactla import QQ, Field, is_zero

__all__ = [
    "DGAlgebra",
    "ValidationReport",
    "AxiomFailure",
    "validate",
    "cohomology_ring",
    "tensor_product",
    "opposite",
    "formal",
    "truncated_polynomial",
    "exterior",
    "sphere_model",
    "ground_field",
    "adjoin_acyclic_pair",
    "same_algebra",
]


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class DGAlgebra:
    """A finite-dimensional DG algebra over an exact field."""

    def __init__(self, field: Field, degrees, labels, unit, table: dict, diff=None):
        self.field = field
        self.degrees = tuple(int(p) for p in degrees)
        if list(self.degrees) != sorted(self.degrees):
            raise ValueError("basis must be sorted by degree")
        n = len(self.degrees)
        self.labels = tuple(labels) if labels is not None else tuple("e%d" % i for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per basis vector is required")
        self.unit = field.array(unit) if len(unit) else field.zeros(0)
        if self.unit.shape != (n,):
            raise ValueError("unit has the wrong length")
        clean = {}
        for (i, j), entries in table.items():
            row = [(int(m), field(c)) for m, c in entries if field(c) != 0]
            if row:
                clean[(int(i), int(j))] = tuple(row)
        self.table = clean
        self.diff = field.zeros(n, n) if diff is None else field.array(diff).reshape(n, n)

    # ------------------------------------------------------------ structure

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
    def dims(self) -> dict:
        return {p: len(v) for p, v in sorted(self._index.items())}

    @property
    def degree_range(self):
        if not self.degrees:
            return (0, 0)
        return (self.degrees[0], self.degrees[-1])

    @property
    def sup(self):
        return self.degrees[-1] if self.degrees else None

    @property
    def inf(self):
        return self.degrees[0] if self.degrees else None

    def basis_vector(self, i: int) -> np.ndarray:
        return self.field.basis_vector(self.dim, i)

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    @cached_property
    def mul(self) -> np.ndarray:
        """Dense structure constants ``mul[i, j, m]``."""
        n = self.dim
        out = self.field.zeros(n, n, n)
        for (i, j), row in self.table.items():
            for m, c in row:
                out[i, j, m] = c
        return out

    def product(self, i: int, j: int) -> np.ndarray:
        v = self.zero()
        for m, c in self.table.get((i, j), ()):
            v[m] += c
        return v

    def mult(self, x, y) -> np.ndarray:
        """Product of two algebra elements given as coordinate vectors."""
        out = self.zero()
        xs = [(i, c) for i, c in enumerate(x) if c != 0]
        ys = [(j, c) for j, c in enumerate(y) if c != 0]
        for i, a in xs:
            for j, b in ys:
                for m, c in self.table.get((i, j), ()):
                    out[m] += a * b * c
        return out

    @cached_property
    def left_mult(self) -> list:
        """``left_mult[i]`` is the matrix of y -> e_i y."""
        n = self.dim
        mats = [self.field.zeros(n, n) for _ in range(n)]
        for (i, j), row in self.table.items():
            for m, c in row:
                mats[i][m, j] += c
        return mats

    @cached_property
    def right_mult(self) -> list:
        """``right_mult[j]`` is the matrix of x -> x e_j."""
        n = self.dim
        mats = [self.field.zeros(n, n) for _ in range(n)]
        for (i, j), row in self.table.items():
            for m, c in row:
                mats[j][m, i] += c
        return mats

    def left_matrix(self, x) -> np.ndarray:
        out = self.field.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c != 0:
                out = out + c * self.left_mult[i]
        return out

    def right_matrix(self, x) -> np.ndarray:
        out = self.field.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c != 0:
                out = out + c * self.right_mult[i]
        return out

    def d(self, x) -> np.ndarray:
        return self.diff @ np.asarray(x, dtype=object)

    def homogeneous_degree(self, x):
        """Degree of a nonzero homogeneous element, None for zero; raises if mixed."""
        ps = {self.degrees[i] for i, c in enumerate(x) if c != 0}
        if not ps:
            return None
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop()

    def degree_part(self, x, p: int) -> np.ndarray:
        out = self.zero()
        idx = self.indices(p)
        out[idx] = np.asarray(x, dtype=object)[idx]
        return out

    @cached_property
    def complex(self) -> Complex:
        return Complex(self.field, self.degrees, self.diff)

    @property
    def cohomology(self) -> CohomologyTable:
        return self.complex.cohomology

    def is_simply_connected_model(self) -> bool:
        """A^{<0} = 0, A^0 = k.1 and A^1 = 0."""
        if self.dim == 0 or self.degrees[0] < 0:
            return False
        deg0 = self.indices(0)
        if len(deg0) != 1 or self.indices(1):
            return False
        return self.unit[deg0[0]] != 0

    @cached_property
    def is_graded_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i, self.dim):
                s = _sign(self.degrees[i] * self.degrees[j])
                if not is_zero(self.product(i, j) - s * self.product(j, i)):
                    return False
        return True

    @cached_property
    def digest(self) -> str:
        from .shell.documents import algebra_digest

        return algebra_digest(self)

    def __repr__(self):
        return "DGAlgebra(dims=%s, field=%r)" % (self.dims, self.field)


def same_algebra(a: DGAlgebra, b: DGAlgebra) -> bool:
    return a is b or (a.field is b.field and a.digest == b.digest)


# ----------------------------------------------------------------- validation


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witness: tuple
    detail: str = ""


@dataclass
class ValidationReport:
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def axioms(self) -> set:
        return {f.axiom for f in self.failures}

    def __bool__(self):
        return self.ok


def validate(a: DGAlgebra, limit: int = 20) -> ValidationReport:
    """Check grading, d^2 = 0, Leibniz, associativity and the unit."""
    rep = ValidationReport()
    deg = a.degrees
    n = a.dim
    fail = rep.failures

    for (i, j), row in a.table.items():
        for m, _ in row:
            if deg[m] != deg[i] + deg[j]:
                fail.append(AxiomFailure("grading", (i, j, m), "product leaves degree %d" % (deg[i] + deg[j])))
    for j in range(n):
        for i in range(n):
            if a.diff[i, j] != 0 and deg[i] != deg[j] + 1:
                fail.append(AxiomFailure("grading", (j, i), "differential does not raise degree by one"))
    for i in range(n):
        if a.unit[i] != 0 and deg[i] != 0:
            fail.append(AxiomFailure("grading", (i,), "unit has a component outside degree 0"))
    if rep.failures:
        return rep

    dd = a.diff @ a.diff if n else a.diff
    for j in range(n):
        if not is_zero(dd[:, j]):
            fail.append(AxiomFailure("d_squared", (j,), "d(d(%s)) != 0" % a.labels[j]))

    for i in range(n):
        for j in range(n):
            lhs = a.d(a.product(i, j))
            rhs = a.mult(a.diff[:, i], a.basis_vector(j)) + _sign(deg[i]) * a.mult(
                a.basis_vector(i), a.diff[:, j]
            )
            if not is_zero(lhs - rhs):
                fail.append(AxiomFailure("leibniz", (i, j), "%s * %s" % (a.labels[i], a.labels[j])))
                if len(fail) > limit:
                    return rep

    top = a.sup if n else 0
    nonneg = n == 0 or a.inf >= 0
    for i, j in itertools.product(range(n), repeat=2):
        if nonneg and deg[i] + deg[j] > top:
            continue
        ij = a.product(i, j)
        for k in range(n):
            lhs = a.mult(ij, a.basis_vector(k))
            rhs = a.mult(a.basis_vector(i), a.product(j, k))
            if not is_zero(lhs - rhs):
                fail.append(AxiomFailure("associativity", (i, j, k)))
                if len(fail) > limit:
                    return rep

    for i in range(n):
        e = a.basis_vector(i)
        if not is_zero(a.mult(a.unit, e) - e) or not is_zero(a.mult(e, a.unit) - e):
            fail.append(AxiomFailure("unit", (i,), "unit does not act as identity on %s" % a.labels[i]))
    return rep


# ---------------------------------------------------------------- cohomology


def cohomology_ring(a: DGAlgebra):
    """Cohomology algebra on the chosen representatives, plus the table."""
    rep = validate(a)
    if not rep.ok:
        raise ValueError("invalid DG algebra: %s" % sorted(rep.axioms()))
    table = a.cohomology
    degrees, labels, reps = [], [], []
    for p in sorted(table.dims):
        for r in range(table.dims[p]):
            degrees.append(p)
            labels.append("h%d_%d" % (p, r))
            reps.append((p, r))
    pos = {pr: k for k, pr in enumerate(reps)}
    mult_table = {}
    for (p, r), (q, s) in itertools.product(reps, repeat=2):
        prod = a.mult(table.reps[p][r], table.reps[q][s])
        if is_zero(prod):
            continue
        coords = table.coords(prod, p + q)
        row = [(pos[(p + q, t)], c) for t, c in enumerate(coords) if c != 0]
        if row:
            mult_table[(pos[(p, r)], pos[(q, s)])] = row
    unit = a.field.zeros(len(reps))
    if 0 in table.dims:
        c0 = table.coords(a.unit, 0)
        for t, c in enumerate(c0):
            unit[pos[(0, t)]] = c
    ring = DGAlgebra(a.field, degrees, labels, unit, mult_table)
    return ring, table


# ------------------------------------------------------------------ builders


def ground_field(field: Field = QQ) -> DGAlgebra:
    return DGAlgebra(field, [0], ["1"], [1], {(0, 0): [(0, 1)]})


def truncated_polynomial(gen_degree: int, power: int, field: Field = QQ, name: str = "x") -> DGAlgebra:
    """k[x]/(x^power) with |x| = gen_degree and zero differential."""
    if power < 1:
        raise ValueError("power must be at least 1")
    if gen_degree % 2 and power > 2 and field.characteristic != 2:
        raise ValueError("an odd-degree generator must square to zero outside characteristic 2")
    degrees = [k * gen_degree for k in range(power)]
    if gen_degree < 0:
        raise ValueError("generator degree must be non-negative")
    labels = ["1"] + [name if k == 1 else "%s^%d" % (name, k) for k in range(1, power)]
    table = {(a, b): [(a + b, 1)] for a in range(power) for b in range(power) if a + b < power}
    return DGAlgebra(field, degrees, labels, [1] + [0] * (power - 1), table)


def exterior(degrees, field: Field = QQ, names=None) -> DGAlgebra:
    """Free graded-commutative algebra on generators that square to zero."""
    degs = [int(p) for p in degrees]
    g = len(degs)
    if names is None:
        names = ["x", "y", "z", "w", "u", "v"][:g] if g <= 6 else ["x%d" % i for i in range(g)]
    subsets = []
    for r in range(g + 1):
        subsets.extend(itertools.combinations(range(g), r))
    subsets.sort(key=lambda s: (sum(degs[i] for i in s), len(s), s))
    pos = {s: k for k, s in enumerate(subsets)}
    labels = ["".join(names[i] for i in s) or "1" for s in subsets]
    table = {}
    for s, t in itertools.product(subsets, repeat=2):
        if set(s) & set(t):
            continue
        sign = 1
        for x in s:
            for y in t:
                if x > y and degs[x] * degs[y] % 2:
                    sign = -sign
        table[(pos[s], pos[t])] = [(pos[tuple(sorted(s + t))], sign)]
    unit = [1] + [0] * (len(subsets) - 1)
    return DGAlgebra(field, [sum(degs[i] for i in s) for s in subsets], labels, unit, table)


def sphere_model(d: int, field: Field = QQ, name: str = "x") -> DGAlgebra:
    """Cohomology of the d-sphere: k[x]/(x^2) with |x| = d."""
    if d < 1:
        raise ValueError("sphere dimension must be positive")
    return truncated_polynomial(d, 2, field, name=name)


def formal(ga: DGAlgebra) -> DGAlgebra:
    """The same graded algebra with zero differential."""
    return DGAlgebra(ga.field, ga.degrees, ga.labels, ga.unit, dict(ga.table))


def _join_labels(x: str, y: str) -> str:
    if x == "1":
        return y
    if y == "1":
        return x
    return x + y


def tensor_product(a: DGAlgebra, b: DGAlgebra) -> DGAlgebra:
    """Tensor product with the Koszul sign rule."""
    if a.field is not b.field:
        raise ValueError("tensor_product: field mismatch")
    f = a.field
    pairs = sorted(itertools.product(range(a.dim), range(b.dim)), key=lambda ij: (a.degrees[ij[0]] + b.degrees[ij[1]], ij))
    pos = {ij: k for k, ij in enumerate(pairs)}
    degrees = [a.degrees[i] + b.degrees[j] for i, j in pairs]
    labels = [_join_labels(a.labels[i], b.labels[j]) for i, j in pairs]
    if len(set(labels)) != len(labels):
        labels = ["%s(x)%s" % (a.labels[i], b.labels[j]) for i, j in pairs]
    table = {}
    for (i, j), (i2, j2) in itertools.product(pairs, repeat=2):
        pa = a.table.get((i, i2))
        pb = b.table.get((j, j2))
        if not pa or not pb:
            continue
        s = _sign(b.degrees[j] * a.degrees[i2])
        row = {}
        for m, c in pa:
            for m2, c2 in pb:
                k = pos[(m, m2)]
                row[k] = row.get(k, 0) + s * c * c2
        table[(pos[(i, j)], pos[(i2, j2)])] = list(row.items())
    n = len(pairs)
    diff = f.zeros(n, n)
    for (i, j), col in pos.items():
        for m in range(a.dim):
            c = a.diff[m, i]
            if c != 0:
                diff[pos[(m, j)], col] += c
        s = _sign(a.degrees[i])
        for m in range(b.dim):
            c = b.diff[m, j]
            if c != 0:
                diff[pos[(i, m)], col] += s * c
    unit = f.zeros(n)
    for (i, j), k in pos.items():
        unit[k] = a.unit[i] * b.unit[j]
    return DGAlgebra(f, degrees, labels, unit, table, diff)


def opposite(a: DGAlgebra) -> DGAlgebra:
    """Opposite algebra: x .op y = (-1)^{|x||y|} y x."""
    table = {}
    for (i, j), row in a.table.items():
        s = _sign(a.degrees[i] * a.degrees[j])
        table[(j, i)] = [(m, s * c) for m, c in row]
    return DGAlgebra(a.field, a.degrees, a.labels, a.unit, table, a.diff)


def adjoin_acyclic_pair(a: DGAlgebra, degree: int, names=("u", "v")) -> DGAlgebra:
    """Adjoin a square-zero acyclic ideal spanned by u, v = du with |u| = degree."""
    f = a.field
    old = list(range(a.dim))
    entries = [(a.degrees[i], 0, i) for i in old] + [(degree, 1, "u"), (degree + 1, 1, "v")]
    entries.sort(key=lambda t: (t[0], t[1]))
    pos = {e[2]: k for k, e in enumerate(entries)}
    degrees = [e[0] for e in entries]
    labels = [a.labels[e[2]] if e[1] == 0 else names[0 if e[2] == "u" else 1] for e in entries]
    table = {}
    for (i, j), row in a.table.items():
        table[(pos[i], pos[j])] = [(pos[m], c) for m, c in row]
    unit_idx = [i for i in old if a.unit[i] != 0]
    for key in ("u", "v"):
        for i in unit_idx:
            table.setdefault((pos[i], pos[key]), []).append((pos[key], a.unit[i]))
            table.setdefault((pos[key], pos[i]), []).append((pos[key], a.unit[i]))
    n = len(entries)
    diff = f.zeros(n, n)
    for i in old:
        for m in old:
            diff[pos[m], pos[i]] = a.diff[m, i]
    diff[pos["v"], pos["u"]] = f.one
    unit = f.zeros(n)
    for i in old:
        unit[pos[i]] = a.unit[i]
    return DGAlgebra(f, degrees, labels, unit, table, diff)
