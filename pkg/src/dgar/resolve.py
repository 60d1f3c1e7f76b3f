"""Minimal semi-free resolutions, the f-invariant, compactness and level bounds.

A resolution is built one cohomological degree at a time.  At stage ``p``
generators of degree ``p - 1`` kill the kernel of ``H^p`` of the comparison
map, then generators of degree ``p`` hit a complement of its image.  Over a
simply connected model both kinds of generator keep the differential inside
``A^{>=1} L``, so the result is minimal by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dgmodule import (
    ChainMap,
    FiniteDGModule,
    SemiFreeModule,
    augmentation_module,
    free_module,
    hom_complex,
    hom_D,
    is_minimal,
    mapping_cone,
    materialize,
    shift,
    tensor,
)
from .exactla import complement, full_space, image, is_zero, kernel, solve, span

__all__ = [
    "INFINITY",
    "MinimalResolution",
    "CompactnessReport",
    "FInvariant",
    "LevelCertificate",
    "minimal_semifree_resolution",
    "f_invariant",
    "f_invariant_report",
    "is_compact",
    "amplitude",
    "level_certificate",
]


class _Infinity:
    """Marker for an f-invariant that is not finite within the cutoff."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(eq=False)
class MinimalResolution:
    """A minimal semi-free module with a comparison map to the target.

    ``gamma[m]`` and ``delta[m]`` follow the layer indexing of the standard
    construction: ``gamma[0]`` counts generators hitting classes in the
    lowest degree ``i``, ``gamma[m]`` (m >= 2) new-class generators in degree
    ``i + m - 1`` and ``delta[m]`` kernel-killing generators in degree
    ``i + 1 + m``.  ``gamma[1]`` is always zero because ``A^1 = 0``.
    """

    target: FiniteDGModule
    resolution: SemiFreeModule
    quasi_iso: ChainMap
    gamma: dict
    delta: dict
    betti: dict
    terminated: bool
    cutoff_degree: int
    inf: int | None

    @property
    def rank(self) -> int:
        return self.resolution.rank

    def check_betti_recurrence(self) -> bool:
        if self.inf is None:
            return not self.betti
        i = self.inf
        if self.betti.get(i, 0) != self.gamma.get(0, 0) + self.gamma.get(1, 0):
            return False
        top = max(self.betti) if self.betti else i
        for j in range(i + 1, top + 1):
            if self.betti.get(j, 0) != self.delta.get(j - i - 1, 0) + self.gamma.get(j - i + 1, 0):
                return False
        return all(j >= i for j in self.betti)

    def top_split_off(self):
        """Generators in the top degree, checked to split off as a quotient.

        Returns their indices when no other generator's differential involves
        them, so that they span a free summand of the underlying module and the
        remaining generators form a DG submodule.
        """
        if not self.terminated or not self.betti:
            return None
        w = max(self.betti)
        top = [j for j, (_, deg) in enumerate(self.resolution.generators) if deg == w]
        for (j, i) in self.resolution.coeffs:
            if i in top:
                return None
        return top


def _default_cutoff(n: FiniteDGModule) -> int:
    table = n.cohomology
    sup_a = max(n.algebra.sup or 0, 1)
    return (table.sup if table.sup is not None else 0) + 2 * sup_a


def minimal_semifree_resolution(m, cutoff: int | None = None) -> MinimalResolution:
    """Minimal semi-free resolution of a right module, generators of degree <= cutoff."""
    n = materialize(m)
    if n.right is None:
        raise ValueError("minimal_semifree_resolution expects a right module")
    a = n.algebra
    f = a.field
    if not a.is_simply_connected_model():
        raise ValueError("minimal_semifree_resolution needs A^{<0} = 0, A^0 = k and A^1 = 0")
    table = n.cohomology
    if cutoff is None:
        cutoff = _default_cutoff(n)
    empty = SemiFreeModule(a, [])
    if table.is_zero():
        return MinimalResolution(n, empty, ChainMap(empty, n, np.empty((0, n.dim), dtype=object)),
                                 {}, {}, {}, True, cutoff, None)
    i0 = table.inf
    gens: list = []
    coeffs: dict = {}
    images: list = []
    gamma: dict = {0: 0, 1: 0}
    delta: dict = {}
    terminated = False
    p = i0
    while p - 1 <= cutoff:
        fm = SemiFreeModule(a, gens, coeffs, check=False)
        alpha = ChainMap(fm, n, np.array(images, dtype=object).reshape(len(gens), n.dim) if gens else
                         np.empty((0, n.dim), dtype=object))
        hp = alpha.induced(p) if fm.rank else f.zeros(table.dim(p), 0)
        src = fm.cohomology if fm.rank else None
        # kernel killers in degree p - 1
        if src is not None and src.dim(p):
            ker = kernel(hp, f)
            idx_prev, idx_p = n.indices(p - 1), n.indices(p)
            blk = n.complex.block(p - 1)
            for kv in ker.vectors:
                z = kv @ src.reps[p]
                target_z = alpha(z)
                pre = solve(blk, target_z[idx_p], f) if idx_p else f.zeros(len(idx_prev))
                if pre is None:
                    raise ArithmeticError("resolution: kernel class does not map to a boundary")
                img = f.zeros(n.dim)
                img[idx_prev] = pre
                j = len(gens)
                for k, c in enumerate(fm.components(z)):
                    if not is_zero(c):
                        coeffs[(j, k)] = c
                gens.append(("k%d_%d" % (p - 1, delta.get(p - 1 - i0 - 1, 0)), p - 1))
                images.append(img)
                delta[p - 1 - i0 - 1] = delta.get(p - 1 - i0 - 1, 0) + 1
        # new classes in degree p
        if table.dim(p):
            img_sub = image(hp, f) if hp.shape[1] else span([], table.dim(p), f)
            comp = complement(img_sub, full_space(table.dim(p), f))
            if comp.dim and p > cutoff:
                break
            layer = 0 if p == i0 else p - i0 + 1
            for c in comp.vectors:
                gens.append(("g%d_%d" % (p, gamma.get(layer, 0)), p))
                images.append(c @ table.reps[p])
                gamma[layer] = gamma.get(layer, 0) + 1
        fm = SemiFreeModule(a, gens, coeffs, check=False)
        alpha = ChainMap(fm, n, np.array(images, dtype=object).reshape(len(gens), n.dim))
        if p >= table.sup:
            src = fm.cohomology
            if (src.sup is None or src.sup <= p) and alpha.is_quasi_iso():
                terminated = True
                break
        p += 1
    fm = SemiFreeModule(a, gens, coeffs)
    alpha = ChainMap(fm, n, np.array(images, dtype=object).reshape(len(gens), n.dim))
    if not alpha.is_chain_map():
        raise ArithmeticError("resolution: comparison map is not a chain map")
    if not is_minimal(fm):
        raise ArithmeticError("resolution: result is not minimal")
    betti: dict = {}
    for _, deg in fm.generators:
        betti[deg] = betti.get(deg, 0) + 1
    gamma = {k: v for k, v in gamma.items() if v or k in (0, 1)}
    return MinimalResolution(n, fm, alpha, gamma, delta, dict(sorted(betti.items())), terminated, cutoff, i0)


# -------------------------------------------------------------------- f-invariant


@dataclass(eq=False)
class FInvariant:
    value: object
    via_hom: int | None
    via_tensor: int | None
    resolution: MinimalResolution | None

    def to_document(self) -> dict:
        return {
            "f": "infinity" if self.value is INFINITY else self.value,
            "via_hom_to_k": self.via_hom,
            "via_tensor_with_k": self.via_tensor,
            "generators": None if self.resolution is None else self.resolution.rank,
            "terminated": None if self.resolution is None else self.resolution.terminated,
        }


def _as_resolution(m, cutoff):
    if isinstance(m, SemiFreeModule) and is_minimal(m):
        return MinimalResolution(m.materialize(), m, ChainMap.identity(m), {}, {},
                                 _betti(m), True, cutoff if cutoff is not None else 0,
                                 m.cohomology.inf)
    return minimal_semifree_resolution(m, cutoff)


def _betti(m: SemiFreeModule) -> dict:
    out: dict = {}
    for _, deg in m.generators:
        out[deg] = out.get(deg, 0) + 1
    return dict(sorted(out.items()))


def f_invariant_report(m, cutoff: int | None = None) -> FInvariant:
    """f computed through Hom(-, k) and through - (x) k on a minimal resolution."""
    res = _as_resolution(m, cutoff)
    if not res.terminated:
        return FInvariant(INFINITY, None, None, res)
    l = res.resolution
    a = l.algebra
    if l.rank == 0:
        return FInvariant(0, 0, 0, res)
    k_right = augmentation_module(a, "right")
    k_left = augmentation_module(a, "left")
    hc = hom_complex(l, k_right)
    via_hom = hc.cohomology.total_dim
    tc = tensor(l, k_left)
    via_tensor = tc.cohomology.total_dim
    if not (is_zero(hc.complex.d) and is_zero(tc.d)):
        raise ArithmeticError("f_invariant: Hom(L, k) or L (x) k has a nonzero differential")
    if via_hom != via_tensor or via_hom != l.rank:
        raise ArithmeticError("f_invariant: routes disagree (%d, %d, rank %d)" % (via_hom, via_tensor, l.rank))
    return FInvariant(via_hom, via_hom, via_tensor, res)


def f_invariant(m, cutoff: int | None = None):
    """dim H* RHom(m, k); INFINITY when the resolution does not stop by ``cutoff``."""
    return f_invariant_report(m, cutoff).value


@dataclass(eq=False)
class CompactnessReport:
    verdict: str
    resolution: MinimalResolution
    note: str

    @property
    def compact(self) -> bool:
        return self.verdict == "Compact"

    def to_document(self) -> dict:
        return {
            "verdict": self.verdict,
            "generators": self.resolution.rank,
            "betti": {str(k): v for k, v in self.resolution.betti.items()},
            "cutoff": self.resolution.cutoff_degree,
            "note": self.note,
        }


def is_compact(m, cutoff: int | None = None) -> CompactnessReport:
    res = minimal_semifree_resolution(m, cutoff)
    if res.terminated:
        return CompactnessReport("Compact", res, "minimal resolution is finite")
    return CompactnessReport(
        "NotWithinCutoff",
        res,
        "generators keep appearing up to degree %d; this is evidence, not a proof, of non-compactness"
        % res.cutoff_degree,
    )


def amplitude(m):
    """(inf, sup, sup - inf) of H*m; all None for an acyclic module."""
    table = materialize(m).cohomology
    if table.is_zero():
        return (None, None, None)
    return (table.inf, table.sup, table.amplitude())


# ------------------------------------------------------------------------ level


@dataclass(eq=False)
class LevelCertificate:
    """Ghost-lemma lower bound and f upper bound for the level of an object.

    ``lower_bound`` is the length of the ghost sequence, so the level is
    strictly larger; ``upper_bound`` is the f-invariant.
    """

    module: SemiFreeModule
    lower_bound: int
    upper_bound: object
    ghosts: list
    ghosts_vanish_on_cohomology: bool
    composite_nonzero: bool
    identification_ok: bool

    @property
    def exact(self) -> bool:
        return (
            self.upper_bound is not INFINITY
            and self.ghosts_vanish_on_cohomology
            and self.composite_nonzero
            and self.identification_ok
            and self.lower_bound + 1 == self.upper_bound
        )

    @property
    def value(self):
        return self.upper_bound if self.exact else None

    def to_document(self) -> dict:
        return {
            "lower_bound_exclusive": self.lower_bound,
            "upper_bound": "infinity" if self.upper_bound is INFINITY else self.upper_bound,
            "exact": self.exact,
            "level": self.value,
            "ghosts": len(self.ghosts),
            "ghosts_vanish_on_cohomology": self.ghosts_vanish_on_cohomology,
            "composite_nonzero": self.composite_nonzero,
            "cone_identified": self.identification_ok,
        }


def level_certificate(c: SemiFreeModule, sphere_degree: int | None = None) -> LevelCertificate:
    """Level bounds for an iterated first-kind cone over a sphere model.

    ``psi: A + Sigma^{-s} A -> c`` hits the two cohomology classes of ``c``;
    its cone is identified with ``Sigma^{-d+1} c`` by an explicit isomorphism
    ``w``, and ``f_1 = w o pi`` is a ghost.  Its shifts have the same
    coefficient data, so the composite of ``n`` ghosts is computed by
    iterating one matrix.
    """
    from .ringlab import iso_test

    a = c.algebra
    table_a = a.cohomology
    d = sphere_degree if sphere_degree is not None else table_a.sup
    if table_a.signature() != ((0, 1), (d, 1)):
        raise ValueError("level_certificate is only available over sphere models")
    fval = f_invariant(c)
    n = c.rank - 1
    if n <= 0:
        return LevelCertificate(c, 0, fval, [], True, True, True)
    table = c.cohomology
    if table.total_dim != 2 or table.inf != 0:
        raise ValueError("level_certificate expects an iterated first-kind cone (two classes)")
    s = table.sup
    src = free_module(a, [0, s], ["u0", "us"])
    psi = ChainMap(src, c, [table.reps[0][0], table.reps[s][0]])
    if not psi.is_chain_map():
        raise ArithmeticError("level_certificate: psi is not a chain map")
    cone = mapping_cone(psi)
    target = shift(c, -d + 1)
    res = iso_test(cone, target)
    if res.verdict != "Isomorphic":
        return LevelCertificate(c, 0, fval, [], False, False, False)
    w = res.forward
    # pi: c -> cone includes c as the first generators
    pi_imgs = [cone.generator_vector(j) for j in range(c.rank)]
    pi = ChainMap(c, cone, pi_imgs)
    f1 = w.compose(pi)
    if not f1.is_chain_map():
        raise ArithmeticError("level_certificate: ghost is not a chain map")
    ghost_ok = f1.is_zero_on_cohomology()
    # f1 as a degree -(d-1) self map of c: same images, target c itself
    step = ChainMap(c, c, f1.images, -(d - 1))
    ghosts = [step]
    comp = step
    for _ in range(1, n):
        comp = step.compose(comp)
        ghosts.append(step)
    deg = -n * (d - 1)
    comp = ChainMap(c, c, comp.images, deg)
    nonzero = not hom_D(c, c, deg).is_zero(comp)
    return LevelCertificate(c, n, fval, ghosts, ghost_ok, nonzero, True)
