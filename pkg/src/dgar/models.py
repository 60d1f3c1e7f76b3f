"""Tensor-algebra models and right truncation of DG algebras.

``free_model`` builds a free (tensor) algebra TV with a quasi-isomorphism to
the input, one generator degree at a time.  ``truncate_model`` divides a
simply connected model by the DG ideal that kills everything above the top
cohomological degree, leaving a finite model with ``sup A = sup H*A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .complexes import Complex
from .dgalgebra import DGAlgebra, validate
from .exactla import (
    Quotient,
    complement,
    full_space,
    image,
    is_zero,
    kernel,
    rank,
    solve,
    span,
    subspace_sum,
)

__all__ = ["FreeModel", "free_model", "truncate_model"]


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass
class FreeModel:
    """TV truncated above ``cutoff`` together with its comparison map.

    ``generators`` lists ``(label, degree, d, m)`` with ``d`` a dict from
    words to coefficients and ``m`` the image in the target algebra.
    ``comparison`` is the matrix of m on the materialized words.
    """

    algebra: DGAlgebra
    target: DGAlgebra
    cutoff: int
    generators: list
    words: list
    comparison: np.ndarray
    verified: dict = dc_field(default_factory=dict)

    def generator_degrees(self) -> list:
        return [g[1] for g in self.generators]


class _TensorAlgebra:
    def __init__(self, gens, top: int, target: DGAlgebra):
        self.gens = gens
        self.top = top
        self.target = target
        self.field = target.field
        degs = [g[1] for g in gens]
        words = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                dw = sum(degs[x] for x in w)
                for k, dg in enumerate(degs):
                    if dw + dg <= top:
                        nxt.append(w + (k,))
            words.extend(nxt)
            frontier = nxt
        self.wdeg = {w: sum(degs[x] for x in w) for w in words}
        words.sort(key=lambda w: (self.wdeg[w], w))
        self.words = words
        self.pos = {w: i for i, w in enumerate(words)}
        self.degs = degs

    def d_word(self, w) -> dict:
        out: dict = {}
        pre = 0
        for k, g in enumerate(w):
            s = _sign(pre)
            for u, c in self.gens[g][2].items():
                nw = w[:k] + u + w[k + 1 :]
                if nw in self.pos:
                    out[nw] = out.get(nw, 0) + s * c
            pre += self.degs[g]
        return out

    def m_word(self, w) -> np.ndarray:
        a = self.target
        v = a.unit.copy()
        for g in w:
            v = a.mult(v, self.gens[g][3])
        return v

    def complex(self) -> Complex:
        n = len(self.words)
        d = self.field.zeros(n, n)
        for w in self.words:
            for u, c in self.d_word(w).items():
                d[self.pos[u], self.pos[w]] += c
        return Complex(self.field, [self.wdeg[w] for w in self.words], d)

    def comparison(self) -> np.ndarray:
        a = self.target
        out = self.field.zeros(a.dim, len(self.words))
        for w in self.words:
            out[:, self.pos[w]] = self.m_word(w)
        return out


def _induced(cx: Complex, cmp, tgt_table, p: int):
    """Matrix of H^p(m) in representative coordinates (columns = source classes)."""
    src_table = cx.cohomology
    src_dim = src_table.dim(p)
    tgt_dim = tgt_table.dim(p)
    field = cx.field
    out = field.zeros(tgt_dim, src_dim)
    for r in range(src_dim):
        out[:, r] = tgt_table.coords(cmp @ src_table.reps[p][r], p)
    return out


def free_model(a: DGAlgebra, degree_cutoff: int) -> FreeModel:
    """Tensor-algebra model TV^{<=cutoff} with a comparison map to ``a``."""
    rep = validate(a)
    if not rep.ok:
        raise ValueError("free_model: invalid algebra (%s)" % sorted(rep.axioms()))
    table = a.cohomology
    if table.is_zero() or table.inf < 0:
        raise ValueError("free_model: cohomology must be concentrated in non-negative degrees")
    if table.dim(0) != 1:
        raise ValueError("free_model: H^0 is not one-dimensional (H^0 must be k)")
    if table.dim(1) != 0:
        raise ValueError("free_model: H^1 must vanish")
    if degree_cutoff < table.sup + 1:
        raise ValueError("free_model: cutoff must be at least sup H* + 1 = %d" % (table.sup + 1))
    f = a.field
    gens: list = []
    for p in range(2, degree_cutoff):
        tv = _TensorAlgebra(gens, p + 2, a)
        cx = tv.complex()
        cmp = tv.comparison()
        hp = _induced(cx, cmp, table, p)
        target_dim = table.dim(p)
        if target_dim:
            img = image(hp, f) if hp.shape[1] else span([], target_dim, f)
            comp = complement(img, full_space(target_dim, f))
            for k, c in enumerate(comp.vectors):
                gens.append(("v%d_%d" % (p, len([g for g in gens if g[1] == p])), p, {}, c @ table.reps[p]))
        hq = _induced(cx, cmp, table, p + 1)
        src = cx.cohomology
        if src.dim(p + 1):
            ker = kernel(hq, f)
            blk = a.complex.block(p)
            idx_p, idx_q = a.indices(p), a.indices(p + 1)
            for kv in ker.vectors:
                z = kv @ src.reps[p + 1][: src.dim(p + 1)]
                dz = {tv.words[i]: c for i, c in enumerate(z) if c != 0}
                mz = cmp @ z
                pre = solve(blk, mz[idx_q], f) if idx_q else f.zeros(len(idx_p))
                if pre is None:
                    raise ArithmeticError("free_model: image of a kernel class is not a boundary")
                mv = a.zero()
                mv[idx_p] = pre
                gens.append(("v%d_%d" % (p, len([g for g in gens if g[1] == p])), p, dz, mv))

    tv = _TensorAlgebra(gens, degree_cutoff + 1, a)
    cx = tv.complex()
    cmp = tv.comparison()
    if not cx.check_d_squared():
        raise ArithmeticError("free_model: d^2 != 0 on the tensor algebra")
    if not is_zero(a.diff @ cmp - cmp @ cx.d):
        raise ArithmeticError("free_model: comparison map is not a chain map")
    verified = {}
    for p in range(0, degree_cutoff + 1):
        h = _induced(cx, cmp, table, p)
        rk = rank(h, f)
        verified[p] = {"injective": rk == h.shape[1], "surjective": rk == h.shape[0]}
    for p in range(0, degree_cutoff):
        if not (verified[p]["injective"] and verified[p]["surjective"]):
            raise ArithmeticError("free_model: H^%d(m) is not an isomorphism" % p)
    if not verified[degree_cutoff]["injective"]:
        raise ArithmeticError("free_model: H^%d(m) is not injective" % degree_cutoff)

    keep = [w for w in tv.words if tv.wdeg[w] <= degree_cutoff]
    kpos = {w: i for i, w in enumerate(keep)}
    labels = ["1" if not w else "*".join(gens[g][0] for g in w) for w in keep]
    mt = {}
    for w in keep:
        for u in keep:
            if tv.wdeg[w] + tv.wdeg[u] <= degree_cutoff:
                mt[(kpos[w], kpos[u])] = [(kpos[w + u], 1)]
    n = len(keep)
    diff = f.zeros(n, n)
    for w in keep:
        for u, c in tv.d_word(w).items():
            if u in kpos:
                diff[kpos[u], kpos[w]] += c
    unit = f.zeros(n)
    unit[0] = f.one
    alg = DGAlgebra(f, [tv.wdeg[w] for w in keep], labels, unit, mt, diff)
    comparison = cmp[:, [tv.pos[w] for w in keep]]
    return FreeModel(alg, a, degree_cutoff, gens, keep, comparison, verified)


def truncate_model(a: DGAlgebra, top: int | None = None) -> DGAlgebra:
    """Quotient by the ideal J killing all degrees above ``top``.

    ``top`` defaults to ``sup H*A``; the quotient map is then checked to be a
    quasi-isomorphism.  When ``top`` is given explicitly (for instance after
    ``free_model``, whose highest degree carries spurious classes), the
    cohomology is compared in degrees ``<= top`` only.
    """
    if not a.is_simply_connected_model():
        raise ValueError("truncate_model: need A^{<0} = 0, A^0 = k and A^1 = 0")
    f = a.field
    table = a.cohomology
    d = table.sup if top is None else top
    n = a.dim

    def local_space(p):
        return full_space(len(a.indices(p)), f)

    def embed(p, vecs):
        out = []
        for v in vecs:
            g = a.zero()
            g[a.indices(p)] = v
            out.append(g)
        return out

    ideal: dict = {}
    for p in sorted(a.dims):
        dim_p = len(a.indices(p))
        if p > d:
            ideal[p] = full_space(dim_p, f)
        elif p == d:
            bnd = image(a.complex.block(d - 1), f)
            split = complement(kernel(a.complex.block(d), f), local_space(d))
            ideal[p] = subspace_sum(bnd, split)
        elif p == d - 1:
            ideal[p] = complement(kernel(a.complex.block(d - 1), f), local_space(d - 1))
        else:
            ideal[p] = span([], dim_p, f)

    def in_ideal(v):
        for p in sorted(a.dims):
            part = np.asarray(v, dtype=object)[a.indices(p)]
            if not ideal[p].contains(part):
                return False
        return True

    gens_j = []
    for p, sub in ideal.items():
        gens_j.extend(embed(p, sub.vectors))
    for v in gens_j:
        if not in_ideal(a.d(v)):
            raise ArithmeticError("truncate_model: J is not closed under d")
        for k in range(n):
            e = a.basis_vector(k)
            if not in_ideal(a.mult(v, e)) or not in_ideal(a.mult(e, v)):
                raise ArithmeticError("truncate_model: J is not a two-sided ideal")

    quotients, keep = {}, []
    for p in sorted(a.dims):
        q = Quotient(ideal[p], local_space(p))
        quotients[p] = q
        for r in range(q.dim):
            keep.append((p, r))
    pos = {pr: k for k, pr in enumerate(keep)}

    def project(v):
        out = f.zeros(len(keep))
        v = np.asarray(v, dtype=object)
        for p, q in quotients.items():
            if q.dim:
                for r, c in enumerate(q.coords(v[a.indices(p)])):
                    out[pos[(p, r)]] = c
        return out

    reps = [embed(p, [quotients[p].reps[r]])[0] for p, r in keep]
    labels = []
    for (p, r), v in zip(keep, reps):
        nz = [i for i, c in enumerate(v) if c != 0]
        labels.append(a.labels[nz[0]] if len(nz) == 1 else "[%d,%d]" % (p, r))
    table_q = {}
    for s, x in enumerate(reps):
        for t, y in enumerate(reps):
            prod = project(a.mult(x, y))
            row = [(m, c) for m, c in enumerate(prod) if c != 0]
            if row:
                table_q[(s, t)] = row
    m = len(keep)
    diff = f.zeros(m, m)
    for s, x in enumerate(reps):
        diff[:, s] = project(a.d(x))
    out = DGAlgebra(f, [p for p, _ in keep], labels, project(a.unit), table_q, diff)
    rep = validate(out)
    if not rep.ok:
        raise ArithmeticError("truncate_model: quotient fails %s" % sorted(rep.axioms()))
    new = out.cohomology
    for p in range(0, d + 1):
        if new.dim(p) != table.dim(p):
            raise ArithmeticError("truncate_model: cohomology changed in degree %d" % p)
    if top is None and new.signature() != table.signature():
        raise ArithmeticError("truncate_model: cohomology changed")
    if out.sup is not None and out.sup > d:
        raise ArithmeticError("truncate_model: quotient has degrees above %d" % d)
    return out
