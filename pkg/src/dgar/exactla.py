"""Exact dense linear algebra over the rationals and prime fields.

Matrices are numpy object arrays whose entries are exact scalars: ``gmpy2.mpq``
for the rationals and :class:`GFElement` for prime fields.  Every subspace is
stored as the nonzero rows of its reduced row echelon form, so two bases of the
same subspace are equal as arrays.  Downstream choices (cocycle
representatives, complements, particular solutions) are derived from that
canonical form and are therefore reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from gmpy2 import mpq

__all__ = [
    "Field",
    "QQ",
    "GF",
    "GFElement",
    "SubspaceBasis",
    "RankKernelImage",
    "Quotient",
    "rref",
    "rank",
    "rank_kernel_image",
    "kernel",
    "image",
    "span",
    "solve",
    "complement",
    "intersect",
    "subspace_sum",
    "inverse",
    "is_zero",
]


class GFElement:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GFElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GFElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GFElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GFElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElement(o, self.p) / self

    def __neg__(self):
        return GFElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d" % self.v


class Field:
    """Ground field of a computation.

    Instances are interned: ``QQ`` is a singleton and ``GF(p)`` returns the
    same object for the same prime, so identity comparison is enough.
    """

    characteristic: int = 0
    name: str = ""

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def format(self, x) -> str:
        raise NotImplementedError

    def to_document(self):
        raise NotImplementedError

    def array(self, rows) -> np.ndarray:
        """Coerce a nested sequence into an object array over this field."""
        a = np.array(rows, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = self(x)
        return out

    def zeros(self, *shape) -> np.ndarray:
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.one
        return out

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def __reduce__(self):
        return (_field_from_document, (self.to_document(),))


class _Rationals(Field):
    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, str):
            return mpq(x.strip())
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, GFElement):
            raise TypeError("cannot coerce a prime-field element into Q")
        return mpq(x)

    def format(self, x) -> str:
        x = mpq(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def to_document(self):
        return "Q"

    def __repr__(self):
        return "QQ"


class _PrimeField(Field):
    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.name = "GF(%d)" % p

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("element of GF(%d) used in GF(%d)" % (x.p, self.p))
            return x
        if isinstance(x, str):
            x = mpq(x.strip())
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            return GFElement(num, self.p) / den
        return GFElement(int(x), self.p)

    def format(self, x) -> str:
        return str(self(x).v)

    def to_document(self):
        return {"GFp": self.p}

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = _Rationals()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    """The prime field with ``p`` elements."""
    if not _is_prime(p):
        raise ValueError("GF(p) needs a prime, got %r" % (p,))
    return _PrimeField(p)


def _field_from_document(doc) -> Field:
    if doc == "Q":
        return QQ
    return GF(int(doc["GFp"]))


# ---------------------------------------------------------------- elimination


def is_zero(v) -> bool:
    """True when every entry of the array is zero."""
    a = np.asarray(v, dtype=object)
    return all(x == 0 for x in a.flat)


def rref(m, field: Field = QQ):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of row ``i``.
    """
    a = np.array(m, dtype=object, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = [i for i, x in enumerate(col) if x != 0]
        if not nz:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] * (field.one / a[r, c])
        for i in range(nrows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    a[i] = a[i] - f * a[r]
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def rank(m, field: Field = QQ) -> int:
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a, field)[1])


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A subspace of ``field^ambient_dim`` stored in canonical echelon form.

    ``basis`` has one row per basis vector; the rows are the nonzero rows of
    the reduced row echelon form, so equal subspaces have equal bases.
    """

    ambient_dim: int
    basis: np.ndarray
    pivots: tuple
    field: Field = QQ

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def vectors(self) -> list:
        return [self.basis[i].copy() for i in range(self.dim)]

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object)
        if self.dim == 0:
            return is_zero(v)
        c = v[list(self.pivots)]
        return is_zero(v - c @ self.basis)

    def coordinates(self, v):
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        v = np.asarray(v, dtype=object)
        if self.dim == 0:
            return self.field.zeros(0) if is_zero(v) else None
        c = v[list(self.pivots)]
        if not is_zero(v - c @ self.basis):
            return None
        return c

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(self.basis[i]) for i in range(self.dim))

    def __repr__(self):
        return "SubspaceBasis(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)


def span(vectors, ambient_dim: int, field: Field = QQ) -> SubspaceBasis:
    """Canonical basis of the span of the given vectors (rows)."""
    rows = [np.asarray(v, dtype=object) for v in vectors]
    if not rows:
        return SubspaceBasis(ambient_dim, field.zeros(0, ambient_dim), (), field)
    a = np.vstack(rows).reshape(len(rows), ambient_dim)
    r, piv = rref(a, field)
    return SubspaceBasis(ambient_dim, r, piv, field)


def zero_subspace(ambient_dim: int, field: Field = QQ) -> SubspaceBasis:
    return span([], ambient_dim, field)


def full_space(ambient_dim: int, field: Field = QQ) -> SubspaceBasis:
    return SubspaceBasis(ambient_dim, field.eye(ambient_dim), tuple(range(ambient_dim)), field)


@dataclass(frozen=True)
class RankKernelImage:
    rank: int
    kernel: SubspaceBasis
    image: SubspaceBasis


def kernel(m, field: Field = QQ) -> SubspaceBasis:
    """Null space of ``m`` acting on column vectors."""
    a = np.asarray(m, dtype=object)
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return full_space(ncols, field)
    r, piv = rref(a, field)
    free = [c for c in range(ncols) if c not in piv]
    vecs = []
    for f in free:
        v = field.zeros(ncols)
        v[f] = field.one
        for i, p in enumerate(piv):
            v[p] = -r[i, f]
        vecs.append(v)
    return span(vecs, ncols, field)


def image(m, field: Field = QQ) -> SubspaceBasis:
    """Column space of ``m``."""
    a = np.asarray(m, dtype=object)
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return zero_subspace(nrows, field)
    r, piv = rref(a.T, field)
    return SubspaceBasis(nrows, r, piv, field)


def rank_kernel_image(m, field: Field = QQ) -> RankKernelImage:
    img = image(m, field)
    return RankKernelImage(img.dim, kernel(m, field), img)


def solve(m, b, field: Field = QQ):
    """Particular solution of ``m x = b`` with free variables zero, or None."""
    a = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    nrows, ncols = a.shape
    if nrows == 0:
        return field.zeros(ncols)
    aug = np.hstack([a.reshape(nrows, ncols), b.reshape(nrows, 1)])
    r, piv = rref(aug, field)
    if piv and piv[-1] == ncols:
        return None
    x = field.zeros(ncols)
    for i, p in enumerate(piv):
        x[p] = r[i, ncols]
    return x


class _Reducer:
    """Incremental echelon reduction used by greedy basis extension."""

    def __init__(self, ambient_dim: int, field: Field):
        self.rows: list = []
        self.pivots: list = []
        self.field = field
        self.n = ambient_dim

    def reduce(self, v):
        v = np.array(v, dtype=object, copy=True)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                v = v - v[p] * row
        return v

    def add(self, v) -> bool:
        w = self.reduce(v)
        for p in range(self.n):
            if w[p] != 0:
                w = w * (self.field.one / w[p])
                for i, row in enumerate(self.rows):
                    if row[p] != 0:
                        self.rows[i] = row - row[p] * w
                self.rows.append(w)
                self.pivots.append(p)
                return True
        return False


def complement(sub: SubspaceBasis, inside: SubspaceBasis) -> SubspaceBasis:
    """Greedy complement of ``sub`` inside ``inside``.

    The echelon basis vectors of ``inside`` are scanned in pivot order and
    kept whenever they are independent of ``sub`` and the vectors already
    kept.  The kept vectors are returned in canonical form.
    """
    if sub.ambient_dim != inside.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if not sub.is_subspace_of(inside):
        raise ValueError("complement: sub is not contained in inside")
    field = inside.field
    red = _Reducer(inside.ambient_dim, field)
    for v in sub.vectors:
        red.add(v)
    chosen = [v for v in inside.vectors if red.add(v)]
    return span(chosen, inside.ambient_dim, field)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return span(a.vectors + b.vectors, a.ambient_dim, a.field)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of the intersection of two subspaces."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("intersect: ambient dimensions differ")
    field = a.field
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(n, field)
    stacked = np.vstack([a.basis, -b.basis]).T
    ker = kernel(stacked, field)
    vecs = [k[: a.dim] @ a.basis for k in ker.vectors]
    return span(vecs, n, field)


def inverse(m, field: Field = QQ):
    """Inverse of a square matrix, or None when singular."""
    a = np.asarray(m, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return field.zeros(0, 0)
    r, piv = rref(np.hstack([a, field.eye(n)]), field)
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        return None
    return r[:n, n:]


class Quotient:
    """Coordinates in ``inside / sub`` relative to the greedy complement.

    ``reps`` are the complement basis vectors.  ``coords(v)`` returns the
    coefficients ``c`` with ``v - c @ reps`` in ``sub``.
    """

    def __init__(self, sub: SubspaceBasis, inside: SubspaceBasis):
        self.sub = sub
        self.inside = inside
        self.field = inside.field
        comp = complement(sub, inside)
        self.reps = comp.basis
        self.dim = comp.dim
        n = inside.ambient_dim
        if inside.dim == 0:
            self._piv = []
            self._inv = self.field.zeros(0, 0)
            return
        stacked = np.vstack([self.reps.reshape(self.dim, n), sub.basis.reshape(sub.dim, n)])
        self._piv = list(inside.pivots)
        inv = inverse(stacked[:, self._piv], self.field)
        assert inv is not None
        self._inv = inv

    def coords(self, v, check: bool = True):
        v = np.asarray(v, dtype=object)
        if self.inside.dim == 0:
            if check and not is_zero(v):
                raise ValueError("vector outside the ambient subspace")
            return self.field.zeros(0)
        x = v[self._piv] @ self._inv
        if check:
            recon = x[: self.dim] @ self.reps + x[self.dim :] @ self.sub.basis
            if not is_zero(recon - v):
                raise ValueError("vector outside the ambient subspace")
        return x[: self.dim]

    def is_zero_class(self, v) -> bool:
        return is_zero(self.coords(v))
