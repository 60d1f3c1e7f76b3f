"""DG modules: semi-free presentations, finite modules and their calculus.

Sign conventions, all checked by validators on every construction:

* suspension: ``(Sigma X)^i = X^{i+1}``, ``d = -d_X``; a left action picks up
  ``(-1)^{n|a|}`` under ``Sigma^n``;
* cone of ``f: M -> N``: generators of N, then generators of M lowered by
  one, with differential ``[[-d_M, 0], [f, d_N]]``;
* Hom: ``d(f) = d_N f - (-1)^i f d_L`` for ``f`` of degree ``i``;
* tensor: ``d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy``;
* duals: ``(DM)^n = Hom(M^{-n}, k)``, ``d f = (-1)^{n+1} f d`` and
  ``(a.f)(x) = (-1)^{|a|(|f|+|x|)} f(xa)``, ``(f.a)(x) = f(ax)``.

Elements of a semi-free module ``L = sum g_j A`` are stored in its
materialization: the finite module with basis ``g_j a_k`` (generator-major).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .complexes import CohomologyTable, Complex
from .dgalgebra import DGAlgebra, opposite, same_algebra
from .exactla import is_zero

__all__ = [
    "SemiFreeModule",
    "FiniteDGModule",
    "ChainMap",
    "HomComplexRep",
    "HomD",
    "free_module",
    "direct_sum",
    "shift",
    "mapping_cone",
    "dual",
    "hom_complex",
    "hom_D",
    "tensor",
    "cohomology_module",
    "augmentation_module",
    "is_minimal",
    "as_left_module",
    "as_right_module",
    "bimodule_of_algebra",
    "materialize",
]


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _check_same(a: DGAlgebra, b: DGAlgebra, what: str):
    if not same_algebra(a, b):
        raise ValueError("%s: modules live over different algebras" % what)


# --------------------------------------------------------------- finite modules


class FiniteDGModule:
    """A finite-dimensional DG module given by matrices.

    ``right[k]`` is the matrix of ``x -> x a_k`` and ``left[k]`` that of
    ``x -> a_k x``.  A module with only ``left`` is a left module (a right
    module over the opposite algebra); with both it is a bimodule.
    """

    def __init__(self, algebra: DGAlgebra, degrees, diff, right=None, left=None):
        self.algebra = algebra
        self.field = algebra.field
        self.degrees = tuple(int(p) for p in degrees)
        n = len(self.degrees)
        self.diff = np.asarray(diff, dtype=object).reshape(n, n)
        if right is None and left is None:
            raise ValueError("a module needs a left or right action")
        self.right = None if right is None else [np.asarray(m, dtype=object).reshape(n, n) for m in right]
        self.left = None if left is None else [np.asarray(m, dtype=object).reshape(n, n) for m in left]
        for acts in (self.right, self.left):
            if acts is not None and len(acts) != algebra.dim:
                raise ValueError("one action matrix per algebra basis element is required")

    @property
    def side(self) -> str:
        if self.right is not None and self.left is not None:
            return "bimodule"
        return "right" if self.right is not None else "left"

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @cached_property
    def complex(self) -> Complex:
        return Complex(self.field, self.degrees, self.diff)

    @property
    def cohomology(self) -> CohomologyTable:
        return self.complex.cohomology

    def indices(self, p: int) -> list:
        return self.complex.indices(p)

    def dims(self) -> dict:
        out: dict = {}
        for p in self.degrees:
            out[p] = out.get(p, 0) + 1
        return dict(sorted(out.items()))

    def right_matrix(self, c) -> np.ndarray:
        out = self.field.zeros(self.dim, self.dim)
        for k, x in enumerate(c):
            if x != 0:
                out = out + x * self.right[k]
        return out

    def left_matrix(self, c) -> np.ndarray:
        out = self.field.zeros(self.dim, self.dim)
        for k, x in enumerate(c):
            if x != 0:
                out = out + x * self.left[k]
        return out

    def validate(self) -> list:
        """Return a list of violated axioms (empty when the module is valid)."""
        a = self.algebra
        f = self.field
        n = self.dim
        bad = []
        if not self.complex.check_grading():
            bad.append("grading of d")
        if n and not is_zero(self.diff @ self.diff):
            bad.append("d_squared")
        signs = np.array([_sign(p) for p in self.degrees], dtype=object)
        for name, acts in (("right", self.right), ("left", self.left)):
            if acts is None:
                continue
            for k in range(a.dim):
                m = acts[k]
                for j in range(n):
                    for i in range(n):
                        if m[i, j] != 0 and self.degrees[i] != self.degrees[j] + a.degrees[k]:
                            bad.append("%s action grading (%d)" % (name, k))
                            break
                da = a.diff[:, k]
                if name == "right":
                    lhs = self.diff @ m - m @ self.diff
                    rhs = self.right_matrix(da) * signs[np.newaxis, :] if n else lhs
                else:
                    lhs = self.diff @ m - _sign(a.degrees[k]) * (m @ self.diff)
                    rhs = self.left_matrix(da)
                if n and not is_zero(lhs - rhs):
                    bad.append("%s leibniz (%s)" % (name, a.labels[k]))
            unit = self.right_matrix(a.unit) if name == "right" else self.left_matrix(a.unit)
            if n and not is_zero(unit - f.eye(n)):
                bad.append("%s unit" % name)
            for (i, j), row in a.table.items():
                prod = a.zero()
                for mm, c in row:
                    prod[mm] += c
                if name == "right":
                    lhs = acts[j] @ acts[i]
                    rhs = self.right_matrix(prod)
                else:
                    lhs = acts[i] @ acts[j]
                    rhs = self.left_matrix(prod)
                if n and not is_zero(lhs - rhs):
                    bad.append("%s associativity (%s,%s)" % (name, a.labels[i], a.labels[j]))
            # products that vanish must act by zero compositions as well
            for i in range(a.dim):
                for j in range(a.dim):
                    if (i, j) in a.table:
                        continue
                    lhs = acts[j] @ acts[i] if name == "right" else acts[i] @ acts[j]
                    if n and not is_zero(lhs):
                        bad.append("%s associativity (%s,%s)" % (name, a.labels[i], a.labels[j]))
        if self.left is not None and self.right is not None:
            for i in range(a.dim):
                for j in range(a.dim):
                    if n and not is_zero(self.left[i] @ self.right[j] - self.right[j] @ self.left[i]):
                        bad.append("bimodule compatibility (%s,%s)" % (a.labels[i], a.labels[j]))
        return bad

    def permuted(self, perm) -> "FiniteDGModule":
        """Same module in the basis ordered by ``perm`` (new index i is old perm[i])."""
        perm = list(perm)
        P = np.ix_(perm, perm)
        right = None if self.right is None else [m[P] for m in self.right]
        left = None if self.left is None else [m[P] for m in self.left]
        return FiniteDGModule(self.algebra, [self.degrees[i] for i in perm], self.diff[P], right, left)

    def __repr__(self):
        return "FiniteDGModule(%s, dims=%s)" % (self.side, self.dims())


# ---------------------------------------------------------- semi-free modules


class SemiFreeModule:
    """Right DG module presented by ordered generators.

    ``coeffs[(j, i)]`` (``i < j``) is the element of A with
    ``d(g_j) = sum_i g_i coeffs[(j, i)]``.
    """

    def __init__(self, algebra: DGAlgebra, generators, coeffs=None, check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.generators = tuple((str(lab), int(deg)) for lab, deg in generators)
        clean = {}
        for (j, i), c in (coeffs or {}).items():
            c = np.asarray(c, dtype=object)
            if not (0 <= i < j < len(self.generators)):
                raise ValueError("coefficient (%d, %d) is not strictly lower triangular" % (j, i))
            if is_zero(c):
                continue
            want = self.generators[j][1] - self.generators[i][1] + 1
            got = algebra.homogeneous_degree(c)
            if got != want:
                raise ValueError("coefficient (%d, %d) has degree %s, expected %d" % (j, i, got, want))
            clean[(j, i)] = c
        self.coeffs = clean
        if check and not self.materialize().complex.check_d_squared():
            raise ValueError("semi-free differential does not square to zero")

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> list:
        return [deg for _, deg in self.generators]

    def offset(self, j: int) -> int:
        return j * self.algebra.dim

    def generator_vector(self, j: int) -> np.ndarray:
        """The element g_j of the materialization."""
        a = self.algebra
        v = self.field.zeros(self.rank * a.dim)
        v[self.offset(j) : self.offset(j + 1)] = a.unit
        return v

    def element(self, parts: dict) -> np.ndarray:
        """Materialized vector of ``sum_j g_j parts[j]``."""
        a = self.algebra
        v = self.field.zeros(self.rank * a.dim)
        for j, c in parts.items():
            v[self.offset(j) : self.offset(j + 1)] += np.asarray(c, dtype=object)
        return v

    def components(self, v) -> list:
        """Split a materialized vector into its A-coefficients per generator."""
        v = np.asarray(v, dtype=object)
        return [v[self.offset(j) : self.offset(j + 1)] for j in range(self.rank)]

    def d_generator(self, j: int) -> np.ndarray:
        return self.element({i: c for (jj, i), c in self.coeffs.items() if jj == j})

    @cached_property
    def _mat(self) -> FiniteDGModule:
        a = self.algebra
        f = self.field
        na = a.dim
        n = self.rank * na
        degrees = [deg + p for _, deg in self.generators for p in a.degrees]
        diff = f.zeros(n, n)
        for j, (_, deg) in enumerate(self.generators):
            diff[self.offset(j) : self.offset(j + 1), self.offset(j) : self.offset(j + 1)] = _sign(deg) * a.diff
        for (j, i), c in self.coeffs.items():
            diff[self.offset(i) : self.offset(i + 1), self.offset(j) : self.offset(j + 1)] += a.left_matrix(c)
        right = []
        for k in range(na):
            m = f.zeros(n, n)
            for j in range(self.rank):
                m[self.offset(j) : self.offset(j + 1), self.offset(j) : self.offset(j + 1)] = a.right_mult[k]
            right.append(m)
        return FiniteDGModule(a, degrees, diff, right=right)

    def materialize(self) -> FiniteDGModule:
        return self._mat

    @property
    def cohomology(self) -> CohomologyTable:
        return self._mat.cohomology

    def is_minimal(self) -> bool:
        return is_minimal(self)

    def __repr__(self):
        return "SemiFreeModule(generators=%s)" % [deg for _, deg in self.generators]


def materialize(m):
    return m.materialize() if isinstance(m, SemiFreeModule) else m


def free_module(a: DGAlgebra, degrees=(0,), labels=None) -> SemiFreeModule:
    """Direct sum of copies of A with generators in the given degrees."""
    labels = labels or ["g%d" % i for i in range(len(degrees))]
    return SemiFreeModule(a, list(zip(labels, degrees)))


def direct_sum(*mods: SemiFreeModule) -> SemiFreeModule:
    a = mods[0].algebra
    gens, coeffs, off = [], {}, 0
    for m in mods:
        _check_same(a, m.algebra, "direct_sum")
        gens.extend(m.generators)
        for (j, i), c in m.coeffs.items():
            coeffs[(j + off, i + off)] = c
        off += m.rank
    return SemiFreeModule(a, gens, coeffs)


def shift(m, n: int):
    """The n-fold suspension Sigma^n m (degrees drop by n)."""
    s = _sign(n)
    if isinstance(m, SemiFreeModule):
        gens = [(lab, deg - n) for lab, deg in m.generators]
        return SemiFreeModule(m.algebra, gens, {k: s * c for k, c in m.coeffs.items()}, check=False)
    a = m.algebra
    left = None
    if m.left is not None:
        left = [_sign(n * a.degrees[k]) * L for k, L in enumerate(m.left)]
    return FiniteDGModule(a, [p - n for p in m.degrees], s * m.diff, m.right, left)


def is_minimal(l: SemiFreeModule) -> bool:
    """True when no differential coefficient has a degree-0 component."""
    a = l.algebra
    deg0 = a.indices(0)
    return all(is_zero(c[deg0]) for c in l.coeffs.values())


def augmentation_module(a: DGAlgebra, side: str = "right") -> FiniteDGModule:
    """The one-dimensional module k = A / A^{>=1} in degree 0."""
    if not a.is_simply_connected_model():
        raise ValueError("augmentation_module needs A^{<0} = 0, A^0 = k and A^1 = 0")
    f = a.field
    i0 = a.indices(0)[0]
    acts = []
    for k in range(a.dim):
        m = f.zeros(1, 1)
        if k == i0:
            m[0, 0] = f.one / a.unit[i0]
        acts.append(m)
    right = acts if side in ("right", "both") else None
    left = acts if side in ("left", "both") else None
    return FiniteDGModule(a, [0], f.zeros(1, 1), right, left)


def bimodule_of_algebra(a: DGAlgebra) -> FiniteDGModule:
    """A as a bimodule over itself."""
    return FiniteDGModule(a, a.degrees, a.diff, right=list(a.right_mult), left=list(a.left_mult))


def as_left_module(m: FiniteDGModule, base: DGAlgebra) -> FiniteDGModule:
    """Turn a right module over ``base``^op into a left ``base``-module.

    Uses ``a x = (-1)^{|a||x|} x a``.
    """
    if m.side == "left":
        return m
    if m.side != "right":
        raise ValueError("as_left_module expects a one-sided module")
    if not same_algebra(m.algebra, opposite(base)):
        raise ValueError("as_left_module: module is not over the opposite algebra")
    left = []
    for k, R in enumerate(m.right):
        signs = np.array([_sign(base.degrees[k] * p) for p in m.degrees], dtype=object)
        left.append(R * signs[np.newaxis, :])
    return FiniteDGModule(base, m.degrees, m.diff, left=left)


def as_right_module(m: FiniteDGModule, base: DGAlgebra) -> FiniteDGModule:
    """Turn a left module over ``base``^op into a right ``base``-module.

    Uses ``x a = (-1)^{|a||x|} a x``.
    """
    if m.side == "right":
        return m
    if m.side != "left":
        raise ValueError("as_right_module expects a one-sided module")
    if not same_algebra(m.algebra, opposite(base)):
        raise ValueError("as_right_module: module is not over the opposite algebra")
    right = []
    for k, L in enumerate(m.left):
        signs = np.array([_sign(base.degrees[k] * p) for p in m.degrees], dtype=object)
        right.append(L * signs[np.newaxis, :])
    return FiniteDGModule(base, m.degrees, m.diff, right=right)


def dual(m) -> FiniteDGModule:
    """k-dual DM with (DM)^n = Hom(M^{-n}, k); right and left structures swap."""
    m = materialize(m)
    a = m.algebra
    n = m.dim
    degrees = [-p for p in m.degrees]
    col_sign = np.array([_sign(-p + 1) for p in m.degrees], dtype=object)
    diff = m.diff.T * col_sign[np.newaxis, :] if n else m.diff.T
    left = right = None
    if m.right is not None:
        left = []
        for k, R in enumerate(m.right):
            lk = a.degrees[k]
            sg = np.array([[_sign(lk * (-pv + pw)) for pv in m.degrees] for pw in m.degrees], dtype=object)
            left.append(R.T * sg if n else R.T)
    if m.left is not None:
        right = [L.T for L in m.left]
    return FiniteDGModule(a, degrees, diff, right=right, left=left)


# ------------------------------------------------------------------ chain maps


class ChainMap:
    """A-linear map out of a semi-free module, given on generators.

    ``images[j]`` is the image of generator j in the materialized target.
    """

    def __init__(self, source: SemiFreeModule, target, images, degree: int = 0):
        self.source = source
        self.target = target
        self.degree = int(degree)
        tgt = materialize(target)
        self.images = np.asarray(images, dtype=object).reshape(source.rank, tgt.dim)

    @property
    def target_module(self) -> FiniteDGModule:
        return materialize(self.target)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Matrix of the map on materialized modules (target x source)."""
        src = self.source
        tgt = self.target_module
        a = src.algebra
        out = src.field.zeros(tgt.dim, src.rank * a.dim)
        for j in range(src.rank):
            for k in range(a.dim):
                out[:, src.offset(j) + k] = tgt.right[k] @ self.images[j]
        return out

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=object)

    def is_chain_map(self) -> bool:
        s = _sign(self.degree)
        return is_zero(self.target_module.diff @ self.matrix - s * (self.matrix @ self.source.materialize().diff))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``: first apply ``other``."""
        if not isinstance(other.target, SemiFreeModule) or other.target is not self.source:
            if materialize(other.target).dim != self.source.rank * self.source.algebra.dim:
                raise ValueError("maps are not composable")
        imgs = [self.matrix @ other.images[j] for j in range(other.source.rank)]
        return ChainMap(other.source, self.target, imgs, self.degree + other.degree)

    def __add__(self, other):
        return ChainMap(self.source, self.target, self.images + other.images, self.degree)

    def __sub__(self, other):
        return ChainMap(self.source, self.target, self.images - other.images, self.degree)

    def __rmul__(self, c):
        return ChainMap(self.source, self.target, c * self.images, self.degree)

    def induced(self, p: int) -> np.ndarray:
        """Matrix of H^p(self) in representative coordinates."""
        src = self.source.cohomology
        tgt = self.target_module.cohomology
        f = self.source.field
        q = p + self.degree
        out = f.zeros(tgt.dim(q), src.dim(p))
        for r in range(src.dim(p)):
            out[:, r] = tgt.coords(self.matrix @ src.reps[p][r], q)
        return out

    def is_zero_on_cohomology(self) -> bool:
        src = self.source.cohomology
        return all(is_zero(self.induced(p)) for p in src.dims)

    def is_quasi_iso(self) -> bool:
        src = self.source.cohomology
        tgt = self.target_module.cohomology
        if self.degree != 0 or src.signature() != tgt.signature():
            return False
        from .exactla import rank

        return all(rank(self.induced(p), self.source.field) == src.dim(p) for p in src.dims)

    @staticmethod
    def identity(m: SemiFreeModule) -> "ChainMap":
        return ChainMap(m, m, [m.generator_vector(j) for j in range(m.rank)])


def mapping_cone(f: ChainMap) -> SemiFreeModule:
    """Cone of a degree-0 chain map between semi-free modules."""
    if f.degree != 0:
        raise ValueError("mapping_cone needs a degree-0 map")
    src, tgt = f.source, f.target
    if not isinstance(tgt, SemiFreeModule):
        raise ValueError("mapping_cone needs a semi-free target")
    _check_same(src.algebra, tgt.algebra, "mapping_cone")
    if not f.is_chain_map():
        raise ValueError("mapping_cone: the map is not a chain map")
    nt = tgt.rank
    gens = list(tgt.generators) + [(lab, deg - 1) for lab, deg in src.generators]
    coeffs = dict(tgt.coeffs)
    for (j, i), c in src.coeffs.items():
        coeffs[(j + nt, i + nt)] = -c
    for j in range(src.rank):
        for i, c in enumerate(tgt.components(f.images[j])):
            if not is_zero(c):
                coeffs[(j + nt, i)] = c
    return SemiFreeModule(src.algebra, gens, coeffs)


# ----------------------------------------------------------------- Hom and tensor


class HomComplexRep:
    """Total Hom complex Hom_A(L, N) for semi-free L and finite right N.

    The basis vector ``(j, v)`` is the map sending ``g_j`` to ``e_v`` and the
    other generators to zero; its degree is ``deg v - deg g_j``.
    """

    def __init__(self, source: SemiFreeModule, target):
        self.source = source
        self.target = target
        n = materialize(target)
        if n.right is None:
            raise ValueError("Hom target must be a right module")
        _check_same(source.algebra, n.algebra, "hom_complex")
        self.n = n
        f = source.field
        r, dn = source.rank, n.dim
        degrees = [n.degrees[v] - source.generators[j][1] for j in range(r) for v in range(dn)]
        total = r * dn
        d = f.zeros(total, total)
        for j in range(r):
            d[j * dn : (j + 1) * dn, j * dn : (j + 1) * dn] = n.diff
        col_sign = np.array([_sign(p) for p in degrees], dtype=object)
        for (j, i), c in source.coeffs.items():
            blk = n.right_matrix(c)
            cols = slice(i * dn, (i + 1) * dn)
            d[j * dn : (j + 1) * dn, cols] -= blk * col_sign[np.newaxis, cols]
        self.complex = Complex(f, degrees, d)

    @property
    def cohomology(self) -> CohomologyTable:
        return self.complex.cohomology

    def piece_dim(self, i: int) -> int:
        return len(self.complex.indices(i))

    def to_map(self, vec, degree: int) -> ChainMap:
        imgs = np.asarray(vec, dtype=object).reshape(self.source.rank, self.n.dim)
        return ChainMap(self.source, self.target, imgs, degree)

    @staticmethod
    def from_map(f: ChainMap) -> np.ndarray:
        return f.images.reshape(-1)


def hom_complex(l: SemiFreeModule, n) -> HomComplexRep:
    return HomComplexRep(l, n)


@dataclass(eq=False)
class HomD:
    """Morphisms L -> Sigma^degree N in the derived category."""

    complex: HomComplexRep
    degree: int

    @property
    def table(self) -> CohomologyTable:
        return self.complex.cohomology

    @property
    def dimension(self) -> int:
        return self.table.dim(self.degree)

    @property
    def basis(self) -> list:
        if not self.dimension:
            return []
        return [self.complex.to_map(v, self.degree) for v in self.table.reps[self.degree]]

    def coords(self, f: ChainMap):
        return self.table.coords(HomComplexRep.from_map(f), self.degree)

    def is_zero(self, f: ChainMap) -> bool:
        return is_zero(self.coords(f))

    def element(self, coeffs) -> ChainMap:
        f = self.complex.source.field
        vec = f.zeros(self.complex.complex.dim)
        for c, v in zip(coeffs, self.table.reps.get(self.degree, [])):
            vec = vec + c * v
        return self.complex.to_map(vec, self.degree)


def hom_D(l: SemiFreeModule, n, degree: int = 0) -> HomD:
    """H^degree of Hom(l, n), i.e. Hom_{D(A)}(l, Sigma^degree n)."""
    return HomD(hom_complex(l, n), degree)


def tensor(l: SemiFreeModule, n: FiniteDGModule):
    """Tensor product over A of a semi-free right module with a left module.

    Returns a :class:`Complex`, or a right :class:`FiniteDGModule` when ``n``
    is a bimodule.
    """
    if n.left is None:
        raise ValueError("tensor: second factor must carry a left action")
    _check_same(l.algebra, n.algebra, "tensor")
    f = l.field
    r, dn = l.rank, n.dim
    degrees = [l.generators[j][1] + n.degrees[v] for j in range(r) for v in range(dn)]
    total = r * dn
    d = f.zeros(total, total)
    for j, (_, deg) in enumerate(l.generators):
        d[j * dn : (j + 1) * dn, j * dn : (j + 1) * dn] = _sign(deg) * n.diff
    for (j, i), c in l.coeffs.items():
        d[i * dn : (i + 1) * dn, j * dn : (j + 1) * dn] += n.left_matrix(c)
    if n.right is None:
        return Complex(f, degrees, d)
    right = []
    for R in n.right:
        m = f.zeros(total, total)
        for j in range(r):
            m[j * dn : (j + 1) * dn, j * dn : (j + 1) * dn] = R
        right.append(m)
    return FiniteDGModule(l.algebra, degrees, d, right=right)


def cohomology_module(m) -> CohomologyTable:
    return materialize(m).cohomology
