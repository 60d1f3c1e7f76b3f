"""Finite-dimensional associative algebras and endomorphism rings of modules.

Endomorphism algebras of semi-free modules are read off from H^0 of their
Hom complexes.  The radical uses the trace form, so it is only available in
characteristic zero.  Isomorphism testing uses the residue of the
composition pairing, and decomposition lifts idempotents of End/rad back to
strict idempotent chain maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
import sympy

from .dgmodule import (
    ChainMap,
    FiniteDGModule,
    SemiFreeModule,
    hom_D,
    is_minimal,
)
from .exactla import QQ, Quotient, full_space, image, is_zero, kernel, rank, span

__all__ = [
    "FDAlgebra",
    "Bimodule",
    "RadicalData",
    "EndAlgebra",
    "IsoResult",
    "Decomposition",
    "endo_algebra",
    "radical",
    "locality",
    "is_local",
    "trivial_extension",
    "iso_test",
    "decompose",
    "find_idempotent",
    "submodule",
    "polynomial_algebra_quotient",
]


class FDAlgebra:
    """Associative unital algebra given by dense structure constants ``mul[i, j, m]``."""

    def __init__(self, field, mul, unit, labels=None):
        self.field = field
        self.mul = np.asarray(mul, dtype=object)
        n = self.mul.shape[0]
        if self.mul.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        self.unit = np.asarray(unit, dtype=object).reshape(n)
        self.labels = list(labels) if labels is not None else ["b%d" % i for i in range(n)]

    @property
    def dim(self) -> int:
        return self.mul.shape[0]

    def basis_vector(self, i: int):
        return self.field.basis_vector(self.dim, i)

    def zero(self):
        return self.field.zeros(self.dim)

    def mult(self, x, y):
        if self.dim == 0:
            return self.zero()
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return np.tensordot(y, np.tensordot(x, self.mul, axes=(0, 0)), axes=(0, 0))

    def left_matrix(self, x):
        """Matrix of y -> x y."""
        if self.dim == 0:
            return self.field.zeros(0, 0)
        return np.tensordot(np.asarray(x, dtype=object), self.mul, axes=(0, 0)).T

    def right_matrix(self, y):
        """Matrix of x -> x y."""
        if self.dim == 0:
            return self.field.zeros(0, 0)
        return np.tensordot(self.mul, np.asarray(y, dtype=object), axes=(1, 0)).T

    def power(self, x, k: int):
        out = self.unit.copy()
        for _ in range(k):
            out = self.mult(out, x)
        return out

    def is_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            ei = self.basis_vector(i)
            for j in range(n):
                ej = self.basis_vector(j)
                eij = self.mult(ei, ej)
                for k in range(n):
                    ek = self.basis_vector(k)
                    if not is_zero(self.mult(eij, ek) - self.mult(ei, self.mult(ej, ek))):
                        return False
        return True

    def is_unital(self) -> bool:
        return all(
            is_zero(self.mult(self.unit, self.basis_vector(i)) - self.basis_vector(i))
            and is_zero(self.mult(self.basis_vector(i), self.unit) - self.basis_vector(i))
            for i in range(self.dim)
        )

    def subalgebra_on(self, basis_rows, unit):
        """Structure constants of a subalgebra spanned by the given rows."""
        sub = span(basis_rows, self.dim, self.field)
        rows = sub.vectors
        m = len(rows)
        mul = self.field.zeros(m, m, m)
        for i, x in enumerate(rows):
            for j, y in enumerate(rows):
                c = sub.coordinates(self.mult(x, y))
                if c is None:
                    raise ValueError("subspace is not closed under multiplication")
                mul[i, j, :] = c
        u = sub.coordinates(unit)
        if u is None:
            raise ValueError("unit is not in the subspace")
        return FDAlgebra(self.field, mul, u), sub

    def __repr__(self):
        return "FDAlgebra(dim=%d)" % self.dim


def polynomial_algebra_quotient(coeffs, field=QQ) -> FDAlgebra:
    """k[t]/(t^n) style algebras: ``coeffs`` is the monic relation t^n = sum c_i t^i."""
    n = len(coeffs)
    mul = field.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            v = field.zeros(n)
            if i + j < n:
                v[i + j] = field.one
            else:
                v = _reduce_power(i + j, coeffs, field)
            mul[i, j, :] = v
    return FDAlgebra(field, mul, field.basis_vector(n, 0), ["t^%d" % i for i in range(n)])


def _reduce_power(k, coeffs, field):
    n = len(coeffs)
    v = field.zeros(n)
    if k < n:
        v[k] = field.one
        return v
    prev = _reduce_power(k - 1, coeffs, field)
    out = field.zeros(n)
    for i in range(n - 1):
        out[i + 1] += prev[i]
    out = out + prev[n - 1] * field.array([field(c) for c in coeffs])
    return out


# --------------------------------------------------------------------- radical


@dataclass(eq=False)
class RadicalData:
    radical: object
    semisimple_dim: int
    split_over_k: bool | None
    quotient: object
    semisimple: FDAlgebra

    def residue(self, x):
        """Coordinates of x in End/rad."""
        return self.quotient.coords(np.asarray(x, dtype=object))


def radical(r: FDAlgebra) -> RadicalData:
    """Jacobson radical as the kernel of the trace form (characteristic zero)."""
    if r.field is not QQ:
        raise NotImplementedError("radical is only supported over the rationals")
    n = r.dim
    f = r.field
    lm = [r.left_matrix(r.basis_vector(i)) for i in range(n)]
    t = f.zeros(n, n)
    for i in range(n):
        for j in range(n):
            prod = lm[i] @ lm[j]
            t[i, j] = sum((prod[k, k] for k in range(n)), f.zero)
    rad = kernel(t, f)
    for v in rad.vectors:
        for i in range(n):
            e = r.basis_vector(i)
            if not rad.contains(r.mult(e, v)) or not rad.contains(r.mult(v, e)):
                raise ArithmeticError("radical: trace-form kernel is not a two-sided ideal")
    power = rad
    for _ in range(n + 1):
        if power.dim == 0:
            break
        prods = [r.mult(x, y) for x in power.vectors for y in rad.vectors]
        power = span(prods, n, f)
    else:
        raise ArithmeticError("radical: trace-form kernel is not nilpotent")
    if power.dim:
        raise ArithmeticError("radical: trace-form kernel is not nilpotent")
    q = Quotient(rad, full_space(n, f))
    m = q.dim
    mul = f.zeros(m, m, m)
    for i in range(m):
        for j in range(m):
            mul[i, j, :] = q.coords(r.mult(q.reps[i], q.reps[j]))
    s = FDAlgebra(f, mul, q.coords(r.unit))
    split = _is_split(s)
    return RadicalData(rad, m, split, q, s)


def _minimal_polynomial(s: FDAlgebra, x):
    f = s.field
    powers = [s.unit.copy()]
    while True:
        nxt = s.mult(powers[-1], x)
        mat = np.vstack(powers).T
        sol = _solve_exact(mat, nxt, f)
        if sol is not None:
            t = sympy.Symbol("t")
            poly = t ** len(powers) - sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t**i
                                          for i, c in enumerate(sol))
            return sympy.Poly(poly, t)
        powers.append(nxt)


def _solve_exact(m, b, f):
    from .exactla import solve

    return solve(m, b, f)


def _eval_poly(s: FDAlgebra, poly, x):
    f = s.field
    out = s.zero()
    for (deg,), c in poly.terms():
        c = sympy.Rational(c)
        out = out + f("%d/%d" % (c.p, c.q)) * s.power(x, deg)
    return out


def _candidates(s: FDAlgebra, seed: int = 0, extra: int = 12):
    n = s.dim
    for i in range(n):
        yield s.basis_vector(i)
    for i in range(n):
        for j in range(i + 1, n):
            yield s.basis_vector(i) + s.basis_vector(j)
    rng = random.Random(seed)
    for _ in range(extra):
        yield s.field.array([rng.randint(-3, 3) for _ in range(n)])


def find_idempotent(s: FDAlgebra, seed: int = 0):
    """A nontrivial idempotent of a semisimple algebra, or None if none is found.

    Elements are tried in a fixed order; a minimal polynomial with two coprime
    factors gives an idempotent by the Chinese remainder theorem.
    """
    if s.dim <= 1:
        return None
    t = sympy.Symbol("t")
    for x in _candidates(s, seed):
        mu = _minimal_polynomial(s, x)
        _, factors = sympy.factor_list(mu.as_expr(), t)
        if len(factors) < 2:
            continue
        p = sympy.Poly(factors[0][0], t) ** factors[0][1]
        q = sympy.Poly(1, t)
        for g, k in factors[1:]:
            q = q * sympy.Poly(g, t) ** k
        inv = sympy.invert(q.as_expr(), p.as_expr(), t)
        u = sympy.Poly(sympy.expand(q.as_expr() * inv), t).rem(mu)
        e = _eval_poly(s, u, x)
        if not is_zero(s.mult(e, e) - e):
            raise ArithmeticError("find_idempotent: CRT element is not idempotent")
        if not is_zero(e) and not is_zero(e - s.unit):
            return e
    return None


def _has_zero_divisor(s: FDAlgebra, seed: int = 0) -> bool:
    for x in _candidates(s, seed):
        if not is_zero(x) and rank(s.left_matrix(x), s.field) < s.dim:
            return True
    return False


def _is_split(s: FDAlgebra):
    """True when every primitive corner found is one-dimensional; None if undecided."""
    if s.dim == 0:
        return True
    if s.dim == 1:
        return True
    e = find_idempotent(s)
    if e is None:
        return False if not _has_zero_divisor(s) else None
    ok = True
    for idem in (e, s.unit - e):
        rows = [s.mult(idem, s.mult(s.basis_vector(i), idem)) for i in range(s.dim)]
        corner, _ = s.subalgebra_on(rows, idem)
        sub = _is_split(corner)
        if sub is None:
            return None
        ok = ok and sub
    return ok


def locality(r: FDAlgebra) -> str:
    """"Local", "NotLocal" or "Inconclusive"."""
    if r.dim == 0:
        return "NotLocal"
    data = radical(r)
    if data.semisimple_dim == 1:
        return "Local"
    s = data.semisimple
    if find_idempotent(s) is not None or _has_zero_divisor(s):
        return "NotLocal"
    if _is_primitive_field(s):
        return "Local"
    return "Inconclusive"


def _is_primitive_field(s: FDAlgebra, seed: int = 0) -> bool:
    """True when some element has an irreducible minimal polynomial of degree dim s.

    Then s = k[x]/(mu) is a field, so the residue ring is a division ring.
    """
    t = sympy.Symbol("t")
    for x in _candidates(s, seed):
        mu = _minimal_polynomial(s, x)
        if mu.degree() == s.dim and sympy.Poly(mu.as_expr(), t, domain="QQ").is_irreducible:
            return True
    return False


def is_local(r: FDAlgebra):
    """True / False, or None when the residue ring is an undecided division algebra."""
    verdict = locality(r)
    return {"Local": True, "NotLocal": False}.get(verdict)


# ------------------------------------------------------------ trivial extensions


@dataclass(eq=False)
class Bimodule:
    """A bimodule over an FDAlgebra: ``left[i]`` acts by e_i m, ``right[i]`` by m e_i."""

    algebra: FDAlgebra
    dim: int
    left: list
    right: list

    def validate(self) -> list:
        r = self.algebra
        bad = []
        n = r.dim
        eye = r.field.eye(self.dim)

        def act(mats, x):
            out = r.field.zeros(self.dim, self.dim)
            for i, c in enumerate(x):
                if c != 0:
                    out = out + c * mats[i]
            return out

        if self.dim and not is_zero(act(self.left, r.unit) - eye):
            bad.append("left unit")
        if self.dim and not is_zero(act(self.right, r.unit) - eye):
            bad.append("right unit")
        for i in range(n):
            for j in range(n):
                eij = r.mult(r.basis_vector(i), r.basis_vector(j))
                if not is_zero(self.left[i] @ self.left[j] - act(self.left, eij)):
                    bad.append("left associativity (%d,%d)" % (i, j))
                if not is_zero(self.right[j] @ self.right[i] - act(self.right, eij)):
                    bad.append("right associativity (%d,%d)" % (i, j))
                if not is_zero(self.left[i] @ self.right[j] - self.right[j] @ self.left[i]):
                    bad.append("compatibility (%d,%d)" % (i, j))
        return bad


def trivial_extension(r: FDAlgebra, m: Bimodule) -> FDAlgebra:
    """R x M with (r, m)(r', m') = (rr', m r' + r m')."""
    bad = m.validate()
    if bad:
        raise ValueError("trivial_extension: bimodule axioms fail: %s" % bad)
    f = r.field
    n, k = r.dim, m.dim
    total = n + k
    mul = f.zeros(total, total, total)
    mul[:n, :n, :n] = r.mul
    for i in range(n):
        for b in range(k):
            # e_i * m_b
            mul[i, n + b, n:] = m.left[i][:, b]
            # m_b * e_i
            mul[n + b, i, n:] = m.right[i][:, b]
    unit = f.zeros(total)
    unit[:n] = r.unit
    return FDAlgebra(f, mul, unit, list(r.labels) + ["m%d" % b for b in range(k)])


# ------------------------------------------------------ endomorphism algebras


class EndAlgebra(FDAlgebra):
    """H^0 End(l) with the chosen representative maps kept alongside."""

    def __init__(self, module: SemiFreeModule, hom, maps, mul, unit):
        super().__init__(module.field, mul, unit, ["phi%d" % i for i in range(len(maps))])
        self.module = module
        self.hom = hom
        self.maps = maps

    def to_map(self, x) -> ChainMap:
        return self.hom.element(x)

    def coords(self, f: ChainMap):
        return self.hom.coords(f)

    @property
    def radical_data(self) -> RadicalData:
        if not hasattr(self, "_rad"):
            self._rad = radical(self)
        return self._rad


def endo_algebra(l: SemiFreeModule) -> EndAlgebra:
    """End_{D(A)}(l) computed on representative degree-0 cycles."""
    cached = getattr(l, "_endo", None)
    if cached is not None:
        return cached
    hom = hom_D(l, l, 0)
    maps = hom.basis
    n = len(maps)
    f = l.field
    mul = f.zeros(n, n, n)
    for i, x in enumerate(maps):
        for j, y in enumerate(maps):
            mul[i, j, :] = hom.coords(x.compose(y))
    unit = hom.coords(ChainMap.identity(l)) if n else f.zeros(0)
    out = EndAlgebra(l, hom, maps, mul, unit)
    l._endo = out
    return out


# ------------------------------------------------------------------ iso test


@dataclass(eq=False)
class IsoResult:
    verdict: str
    forward: ChainMap | None = None
    backward: ChainMap | None = None
    strict: bool = False
    pairing_rank: int | None = None
    detail: str = ""

    def to_document(self) -> dict:
        return {
            "verdict": self.verdict,
            "strict_module_iso": self.strict,
            "pairing_rank": self.pairing_rank,
            "detail": self.detail,
        }


def _residue_functional(end: EndAlgebra):
    data = end.radical_data
    if data.semisimple_dim != 1:
        return None
    u = data.residue(end.unit)[0]
    return lambda x: data.residue(x)[0] / u


def iso_test(c: SemiFreeModule, c2: SemiFreeModule) -> IsoResult:
    """Decide c = c2 in D(A) for objects with local endomorphism rings."""
    if c.cohomology.signature() != c2.cohomology.signature():
        return IsoResult("NotIsomorphic", detail="cohomology tables differ")
    if c.cohomology.is_zero():
        return IsoResult("Isomorphic", detail="both objects are zero in D(A)")
    end1, end2 = endo_algebra(c), endo_algebra(c2)
    for end in (end1, end2):
        if locality(end) != "Local":
            return IsoResult("Inconclusive", detail="endomorphism algebra is not known to be local")
    res1, res2 = _residue_functional(end1), _residue_functional(end2)
    h12, h21 = hom_D(c, c2, 0), hom_D(c2, c, 0)
    fs, gs = h12.basis, h21.basis
    f = c.field
    pairing = f.zeros(len(fs), len(gs))
    for i, fi in enumerate(fs):
        for j, gj in enumerate(gs):
            pairing[i, j] = res1(end1.coords(gj.compose(fi)))
    pr = rank(pairing, f) if pairing.size else 0
    if pr == 0:
        return IsoResult("NotIsomorphic", pairing_rank=0, detail="composition pairing vanishes modulo the radical")
    i, j = next((i, j) for i in range(len(fs)) for j in range(len(gs)) if pairing[i, j] != 0)
    fwd = fs[i]
    bwd = (f.one / pairing[i, j]) * gs[j]
    if res1(end1.coords(bwd.compose(fwd))) == 0 or res2(end2.coords(fwd.compose(bwd))) == 0:
        raise ArithmeticError("iso_test: witness composites are not units")
    strict = False
    if is_minimal(c) and is_minimal(c2):
        m = fwd.matrix
        strict = m.shape[0] == m.shape[1] and rank(m, f) == m.shape[0]
    return IsoResult("Isomorphic", fwd, bwd, strict, pr, "composite has nonzero residue")


# ------------------------------------------------------------------ decompose


def submodule(m: FiniteDGModule, rows) -> FiniteDGModule:
    """Restriction of a right module to an invariant graded subspace (rows)."""
    f = m.field
    pieces = []
    for p in sorted(set(m.degrees)):
        idx = m.indices(p)
        local = [np.asarray(v, dtype=object)[idx] for v in rows]
        sub = span(local, len(idx), f)
        for v in sub.vectors:
            g = f.zeros(m.dim)
            g[idx] = v
            pieces.append((p, g))
    vecs = [g for _, g in pieces]
    degs = [p for p, _ in pieces]
    k = len(vecs)
    mat = np.vstack(vecs).T if k else f.zeros(m.dim, 0)

    def coords(v):
        c = _solve_exact(mat, v, f)
        if c is None:
            raise ValueError("subspace is not invariant")
        return c

    diff = f.zeros(k, k)
    for j, v in enumerate(vecs):
        diff[:, j] = coords(m.diff @ v)
    right = []
    for R in m.right:
        mm = f.zeros(k, k)
        for j, v in enumerate(vecs):
            mm[:, j] = coords(R @ v)
        right.append(mm)
    return FiniteDGModule(m.algebra, degs, diff, right=right)


@dataclass(eq=False)
class Decomposition:
    verdict: str
    summands: list
    detail: str = ""

    def to_document(self) -> dict:
        return {
            "verdict": self.verdict,
            "summands": [
                {"generators": [deg for _, deg in s.generators], "cohomology": {str(p): k for p, k in s.cohomology.dims.items()}}
                for s in self.summands
            ],
            "detail": self.detail,
        }


def _strict_idempotent(e: ChainMap, limit: int = 64):
    for _ in range(limit):
        e2 = e.compose(e)
        if is_zero(e2.images - e.images):
            return e
        e3 = e2.compose(e)
        e = ChainMap(e.source, e.target, 3 * e2.images - 2 * e3.images)
    return None


def decompose(y: SemiFreeModule, _depth: int = 0) -> Decomposition:
    """Split y into indecomposable summands by lifting idempotents of End/rad."""
    from .resolve import minimal_semifree_resolution

    if y.cohomology.is_zero():
        return Decomposition("Decomposed", [])
    if not is_minimal(y):
        y = minimal_semifree_resolution(y.materialize()).resolution
    end = endo_algebra(y)
    data = end.radical_data
    if data.semisimple_dim == 1:
        return Decomposition("Decomposed", [y])
    e_s = find_idempotent(data.semisimple)
    if e_s is None:
        if _has_zero_divisor(data.semisimple):
            return Decomposition("Obstruction", [y], "no idempotent found in a non-division residue ring")
        return Decomposition("Obstruction", [y], "residue ring is not split over the base field")
    x = e_s @ data.quotient.reps
    for _ in range(64):
        x2 = end.mult(x, x)
        if is_zero(x2 - x):
            break
        x = 3 * x2 - 2 * end.mult(x2, x)
    else:
        return Decomposition("Obstruction", [y], "idempotent lifting modulo the radical did not converge")
    strict = _strict_idempotent(end.to_map(x))
    if strict is None:
        return Decomposition("Obstruction", [y], "strict idempotent lifting did not converge")
    comp = ChainMap.identity(y) - strict
    mat = y.materialize()
    out = []
    for idem in (strict, comp):
        cols = idem.matrix
        rows = image(cols, y.field).vectors
        sub = submodule(mat, rows)
        res = minimal_semifree_resolution(sub)
        if not res.terminated:
            return Decomposition("Obstruction", [y], "summand resolution did not terminate")
        part = decompose(res.resolution, _depth + 1)
        if part.verdict != "Decomposed":
            return part
        out.extend(part.summands)
    return Decomposition("Decomposed", out)
