"""Gorenstein certificates, Auslander-Reiten translates and triangles, and the
iterated-cone families with their separation certificates.

Families are built by repeated cones ``C_n = cone(Sigma^{-e_n} A -> C_{n-1})``
where ``1`` goes to a chosen cocycle ``zeta`` of ``C_{n-1}``.  A step of the
first kind uses ``e_n = sup C_{n-1}``; a step of the second kind uses
``e_n = sup C_{n-1} - d + e`` for a fixed interior degree ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .dgalgebra import DGAlgebra, cohomology_ring
from .dgmodule import (
    ChainMap,
    SemiFreeModule,
    bimodule_of_algebra,
    dual,
    free_module,
    hom_D,
    is_minimal,
    mapping_cone,
    shift,
    tensor,
)
from .exactla import inverse, is_zero, kernel, rank
from .resolve import INFINITY, f_invariant, minimal_semifree_resolution
from .ringlab import IsoResult, endo_algebra, iso_test, locality

__all__ = [
    "GorensteinCertificate",
    "ConstructionPlan",
    "FamilyMember",
    "TranslateResult",
    "ARTriangle",
    "ComponentCertificate",
    "gorenstein_check",
    "serre_dim_check",
    "ar_translate",
    "ar_triangle",
    "construct_step",
    "build_family",
    "build_pencil",
    "component_certificate",
    "endo_recursion_check",
    "admissible_sequences",
    "is_admissible",
]


# ------------------------------------------------------------------ Gorenstein


@dataclass(eq=False)
class GorensteinCertificate:
    algebra: DGAlgebra
    d: int | None
    dim_h0: int
    dim_hd: int
    pairing_matrices: dict
    nondegenerate_left: bool
    nondegenerate_right: bool
    h_d_minus_1_zero: bool
    da_witness: ChainMap | None
    da_witness_ok: bool
    reason: str = ""

    @property
    def certified(self) -> bool:
        return (
            self.dim_h0 == 1
            and self.dim_hd == 1
            and self.nondegenerate_left
            and self.nondegenerate_right
        )

    def to_document(self) -> dict:
        f = self.algebra.field
        return {
            "certified": self.certified,
            "dimension": self.d,
            "dim_H0": self.dim_h0,
            "dim_Hd": self.dim_hd,
            "nondegenerate_left": self.nondegenerate_left,
            "nondegenerate_right": self.nondegenerate_right,
            "H_d_minus_1_zero": self.h_d_minus_1_zero,
            "DA_witness": self.da_witness_ok,
            "pairings": {
                str(i): {side: [[f.format(x) for x in row] for row in m] for side, m in mats.items()}
                for i, mats in sorted(self.pairing_matrices.items())
            },
            "reason": self.reason,
        }


def gorenstein_check(a: DGAlgebra, witness: bool = True) -> GorensteinCertificate:
    """Perfect-pairing test for Poincare duality of H*A, plus a DA = Sigma^d A witness."""
    if not a.is_simply_connected_model():
        raise ValueError("gorenstein_check needs A^{<0} = 0, A^0 = k and A^1 = 0")
    ring, table = cohomology_ring(a)
    f = a.field
    d = table.sup
    dim0, dimd = table.dim(0), table.dim(d)
    hd1 = table.dim(d - 1) == 0 if d is not None else True
    if dim0 != 1 or dimd != 1:
        return GorensteinCertificate(a, d, dim0, dimd, {}, False, False, hd1, None, False,
                                     "dim H^0 = %d and dim H^sup = %d; both must be 1" % (dim0, dimd))
    top = ring.indices(d)[0]
    mats, left_ok, right_ok = {}, True, True
    for i in range(0, d + 1):
        ii, jj = ring.indices(i), ring.indices(d - i)
        if not ii and not jj:
            continue
        left = f.zeros(len(ii), len(jj))
        right = f.zeros(len(ii), len(jj))
        for r, x in enumerate(ii):
            for s, y in enumerate(jj):
                left[r, s] = ring.product(x, y)[top]
                right[r, s] = ring.product(y, x)[top]
        mats[i] = {"left": left, "right": right}
        square = len(ii) == len(jj)
        left_ok = left_ok and square and rank(left, f) == len(ii)
        right_ok = right_ok and square and rank(right, f) == len(ii)
    wit, wit_ok = None, False
    if witness and left_ok and right_ok:
        da = dual(bimodule_of_algebra(a))
        dt = da.cohomology
        if dt.dim(-d) == 1:
            src = free_module(a, [-d], ["u"])
            wit = ChainMap(src, da, [dt.reps[-d][0]])
            wit_ok = wit.is_chain_map() and wit.is_quasi_iso()
    reason = "" if left_ok and right_ok else "a multiplication pairing into H^d is degenerate"
    return GorensteinCertificate(a, d, dim0, dimd, mats, left_ok, right_ok, hd1, wit, wit_ok, reason)


def _require(cert: GorensteinCertificate | None, a: DGAlgebra) -> GorensteinCertificate:
    cert = cert if cert is not None else gorenstein_check(a)
    if not cert.certified:
        raise ValueError("algebra is not Gorenstein: %s" % cert.reason)
    return cert


def serre_dim_check(x: SemiFreeModule, y: SemiFreeModule, cert: GorensteinCertificate | None = None) -> dict:
    """Compare dim Hom(x, y) with dim Hom(y, Sigma^d x)."""
    cert = _require(cert, x.algebra)
    lhs = hom_D(x, y, 0).dimension
    rhs = hom_D(y, shift(x, cert.d), 0).dimension
    return {"hom_x_y": lhs, "hom_y_shifted_x": rhs, "d": cert.d, "ok": lhs == rhs}


# ------------------------------------------------------------------ translate


@dataclass(eq=False)
class TranslateResult:
    module: SemiFreeModule
    expected: SemiFreeModule
    iso: IsoResult | None

    @property
    def verified(self) -> bool:
        return self.iso is not None and self.iso.verdict == "Isomorphic"

    def to_document(self) -> dict:
        return {
            "generators": [deg for _, deg in self.module.generators],
            "cohomology": {str(p): k for p, k in self.module.cohomology.dims.items()},
            "matches_shift": None if self.iso is None else self.iso.verdict,
        }


def ar_translate(c: SemiFreeModule, cert: GorensteinCertificate | None = None) -> TranslateResult:
    """Minimal model of Sigma^{-1}(c (x) DA), compared with Sigma^{d-1} c."""
    a = c.algebra
    cert = _require(cert, a)
    da = dual(bimodule_of_algebra(a))
    tau = shift(tensor(c, da), -1)
    res = minimal_semifree_resolution(tau)
    if not res.terminated:
        raise ArithmeticError("ar_translate: resolution did not terminate")
    expected = shift(c, cert.d - 1)
    iso = iso_test(res.resolution, expected) if cert.da_witness_ok else None
    return TranslateResult(res.resolution, expected, iso)


# ---------------------------------------------------------------- AR triangle


@dataclass(eq=False)
class ARTriangle:
    tau_z: SemiFreeModule
    y: SemiFreeModule
    z: SemiFreeModule
    h: ChainMap
    socle_dim: int
    f_values: dict
    additive: bool

    def to_document(self) -> dict:
        return {
            "socle_dim": self.socle_dim,
            "socle_flag": self.socle_dim > 1,
            "f": {k: ("infinity" if v is INFINITY else v) for k, v in self.f_values.items()},
            "f_additive": self.additive,
            "middle_cohomology": {str(p): k for p, k in self.y.cohomology.dims.items()},
        }


def ar_triangle(z: SemiFreeModule, cert: GorensteinCertificate | None = None,
                require_indecomposable: bool = True) -> ARTriangle:
    """Triangle tau z -> y -> z -> Sigma tau z from a socle element of Hom(z, Sigma^d z)."""
    a = z.algebra
    cert = _require(cert, a)
    d = cert.d
    end = endo_algebra(z)
    if require_indecomposable and locality(end) != "Local":
        raise ValueError("ar_triangle: endomorphism algebra is not local")
    hom = hom_D(z, z, d)
    basis = hom.basis
    if not basis:
        raise ArithmeticError("ar_triangle: Hom(z, Sigma^d z) vanishes")
    rad = end.radical_data.radical
    f = z.field
    rows = []
    for r in rad.vectors:
        rm = end.to_map(r)
        for composite in (lambda h: rm.compose(h), lambda h: h.compose(rm)):
            cols = [hom.coords(composite(h)) for h in basis]
            rows.append(np.array(cols, dtype=object).T.reshape(-1, len(basis)))
    if rows:
        socle = kernel(np.vstack(rows), f)
    else:
        from .exactla import full_space

        socle = full_space(len(basis), f)
    if socle.dim == 0:
        raise ArithmeticError("ar_triangle: empty socle")
    h = hom.element(socle.vectors[0])
    hz = ChainMap(z, shift(z, d), h.images, 0)
    if not hz.is_chain_map():
        raise ArithmeticError("ar_triangle: socle element is not a chain map")
    y = shift(mapping_cone(hz), -1)
    tau = ar_translate(z, cert).module
    fz, fy, ft = f_invariant(z), f_invariant(y), f_invariant(tau)
    additive = INFINITY not in (fz, fy, ft) and fy == fz + ft
    return ARTriangle(tau, y, z, h, socle.dim, {"tau_z": ft, "y": fy, "z": fz}, additive)


# ------------------------------------------------------------------ families


def is_admissible(alpha) -> bool:
    """No two adjacent second-kind steps."""
    alpha = tuple(alpha)
    return all(x in (0, 1) for x in alpha) and all(not (alpha[i] and alpha[i + 1]) for i in range(len(alpha) - 1))


def admissible_sequences(n: int) -> list:
    out = []
    for k in range(2**n):
        alpha = tuple((k >> (n - 1 - i)) & 1 for i in range(n))
        if is_admissible(alpha):
            out.append(alpha)
    return out


@dataclass
class ConstructionPlan:
    alpha: tuple
    d: int
    e: int | None
    e_list: list = dc_field(default_factory=list)
    eA_list: list = dc_field(default_factory=list)
    zeta_choices: list = dc_field(default_factory=list)

    def to_document(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "d": self.d,
            "e": self.e,
            "e_list": self.e_list,
            "eA_list": self.eA_list,
            "zeta_choices": self.zeta_choices,
        }


@dataclass(eq=False)
class FamilyMember:
    module: SemiFreeModule
    plan: ConstructionPlan
    chain: list
    log: list

    @property
    def ok(self) -> bool:
        return all(all(v for k, v in entry["checks"].items()) for entry in self.log)


def _interior_degree(a: DGAlgebra, d: int):
    table = a.cohomology
    for e in range(2, d - 1):
        if table.dim(e):
            return e
    return None


def construct_step(c: SemiFreeModule, kind: str, d: int, e: int | None = None, zeta=None,
                   index: int | None = None, zeta_coeffs=None):
    """One cone step; returns (C_n, e_n, log entry).

    ``zeta_coeffs`` picks a combination of the canonical representatives of
    H^{e_n}; by default the first representative is used.
    """
    a = c.algebra
    table = c.cohomology
    n = c.rank if index is None else index
    sup_prev = table.sup
    if kind == "First":
        e_n = sup_prev
    elif kind == "Second":
        if e is None:
            raise ValueError("construct_step: second kind needs an interior degree e")
        e_n = sup_prev - d + e
    else:
        raise ValueError("construct_step: kind must be First or Second")
    if table.dim(e_n) == 0:
        raise ValueError("construct_step: H^%d of the previous object vanishes" % e_n)
    if zeta is None:
        coeffs = zeta_coeffs if zeta_coeffs is not None else [1] + [0] * (table.dim(e_n) - 1)
        zeta = sum((a.field(cf) * table.reps[e_n][r] for r, cf in enumerate(coeffs)),
                   a.field.zeros(c.materialize().dim))
        if table.is_boundary(zeta, e_n):
            raise ValueError("construct_step: chosen class is zero")
        choice = [a.field.format(a.field(cf)) for cf in coeffs]
    else:
        choice = "explicit"
    src = free_module(a, [e_n], ["s%d" % n])
    phi = ChainMap(src, c, [zeta])
    cn = mapping_cone(phi)
    new = cn.cohomology
    checks = {
        "minimal": is_minimal(cn),
        "rank": cn.rank == c.rank + 1,
        "f": f_invariant(cn) == cn.rank,
        "lower_degrees_unchanged": all(new.dim(j) == table.dim(j) for j in range(table.inf, e_n)),
        "drop_at_e_n": new.dim(e_n) == table.dim(e_n) - 1,
        "top_class_one_dimensional": new.dim(new.sup) == 1,
        "sup": new.sup == e_n + d - 1,
    }
    return cn, e_n, {"kind": kind, "e_n": e_n, "zeta": choice, "checks": checks}


def _top_products_are_boundaries(cn: SemiFreeModule, degree: int) -> bool:
    a = cn.algebra
    mat = cn.materialize()
    table = mat.cohomology
    for j in range(cn.rank - 1):
        for k in a.indices(degree):
            v = mat.field.zeros(mat.dim)
            v[cn.offset(j) + k] = mat.field.one
            if is_zero(mat.diff @ v) and not table.is_boundary(v, mat.degrees[cn.offset(j) + k]):
                return False
    return True


def build_family(a: DGAlgebra, alpha, cert: GorensteinCertificate | None = None,
                 e: int | None = None) -> FamilyMember:
    """C_alpha: first-kind steps for 0 entries, second-kind steps for 1 entries."""
    cert = _require(cert, a)
    alpha = tuple(int(x) for x in alpha)
    if not is_admissible(alpha):
        raise ValueError("alpha %s has adjacent second-kind steps" % (alpha,))
    d = cert.d
    table = a.cohomology
    if table.total_dim < 2:
        raise ValueError("build_family: H*A is one-dimensional, nothing to construct")
    if any(alpha):
        e = e if e is not None else _interior_degree(a, d)
        if e is None or not (2 <= e <= d - 2) or table.dim(e) == 0:
            raise ValueError("build_family: no interior degree e with H^e A != 0")
    plan = ConstructionPlan(alpha, d, e)
    c = free_module(a, [0], ["g0"])
    chain, log = [c], []
    e_prev = 1
    for i, kind_bit in enumerate(alpha, start=1):
        kind = "Second" if kind_bit else "First"
        c, e_n, entry = construct_step(c, kind, d, e, index=i)
        plan.e_list.append(e_n)
        plan.eA_list.append(e_n - e_prev + 1)
        plan.zeta_choices.append(entry["zeta"])
        entry["checks"]["eA"] = plan.eA_list[-1] == (e if kind_bit else d)
        if e == 2 and d == 4:
            entry["checks"]["top_products_are_boundaries"] = _top_products_are_boundaries(c, d + e - 2)
        e_prev = e_n
        chain.append(c)
        log.append(entry)
    return FamilyMember(c, plan, chain, log)


def build_pencil(a: DGAlgebra, e: int, lam, cert: GorensteinCertificate | None = None) -> SemiFreeModule:
    """cone(Sigma^{-e} A -> A, 1 -> lam_1 zeta_1 + lam_2 zeta_2)."""
    cert = _require(cert, a)
    f = a.field
    lam = [f(x) for x in lam]
    if len(lam) != 2 or all(x == 0 for x in lam):
        raise ValueError("build_pencil: lambda must be a nonzero pair")
    table = a.cohomology
    if not (2 <= e <= cert.d - 2) or table.dim(e) < 2:
        raise ValueError("build_pencil: need 2 <= e <= d-2 with dim H^e A >= 2")
    coeffs = lam + [0] * (table.dim(e) - 2)
    c0 = free_module(a, [0], ["g0"])
    cn, _, entry = construct_step(c0, "Second", cert.d, e, index=1, zeta_coeffs=coeffs)
    return cn


def endo_recursion_check(prev: SemiFreeModule, cur: SemiFreeModule, eA: int) -> dict:
    """End(C_n) as End(C_{n-1}) extended by H^{eA-1}A.

    The restriction map precomposes with the inclusion of C_{n-1} and pulls
    back along Hom(C_{n-1}, C_{n-1}) = Hom(C_{n-1}, C_n); the splitting
    extends a map by a scalar on the new generator.
    """
    a = cur.algebra
    f = a.field
    end_n, end_p = endo_algebra(cur), endo_algebra(prev)
    np_dim = cur.materialize().dim
    iota = ChainMap(prev, cur, [cur.generator_vector(j) for j in range(prev.rank)])
    mixed = hom_D(prev, cur, 0)
    phi = f.zeros(mixed.dimension, end_p.dim)
    for j, b in enumerate(end_p.maps):
        phi[:, j] = mixed.coords(iota.compose(b))
    phi_inv = inverse(phi, f) if phi.shape[0] == phi.shape[1] else None
    report = {
        "dim_end_prev": end_p.dim,
        "dim_end": end_n.dim,
        "extension_dim": a.cohomology.dim(eA - 1),
        "restriction_iso": phi_inv is not None,
    }
    if phi_inv is None:
        report["ok"] = False
        return report
    rho = f.zeros(end_p.dim, end_n.dim)
    for j, m in enumerate(end_n.maps):
        rho[:, j] = phi_inv @ mixed.coords(m.compose(iota))
    ker = kernel(rho, f)
    multiplicative = all(
        is_zero(rho @ end_n.mult(x, y) - end_p.mult(rho @ x, rho @ y))
        for x in (end_n.basis_vector(i) for i in range(end_n.dim))
        for y in (end_n.basis_vector(i) for i in range(end_n.dim))
    ) and is_zero(rho @ end_n.unit - end_p.unit)
    square_zero = all(is_zero(end_n.mult(x, y)) for x in ker.vectors for y in ker.vectors)
    ideal = all(
        ker.contains(end_n.mult(end_n.basis_vector(i), v)) and ker.contains(end_n.mult(v, end_n.basis_vector(i)))
        for v in ker.vectors for i in range(end_n.dim)
    )
    i0 = a.indices(0)[0]
    sigma = f.zeros(end_n.dim, end_p.dim)
    strict_ok = True
    for j, b in enumerate(end_p.maps):
        alpha0 = b.images[0][i0] / a.unit[i0]
        imgs = []
        for k in range(prev.rank):
            v = f.zeros(np_dim)
            v[: b.images.shape[1]] = b.images[k]
            imgs.append(v)
        imgs.append(alpha0 * cur.generator_vector(cur.rank - 1))
        ext = ChainMap(cur, cur, imgs)
        strict_ok = strict_ok and ext.is_chain_map()
        sigma[:, j] = end_n.coords(ext)
    splits = strict_ok and is_zero(rho @ sigma - f.eye(end_p.dim))
    sigma_mult = strict_ok and all(
        is_zero(sigma @ end_p.mult(x, y) - end_n.mult(sigma @ x, sigma @ y))
        for x in (end_p.basis_vector(i) for i in range(end_p.dim))
        for y in (end_p.basis_vector(i) for i in range(end_p.dim))
    )
    report.update({
        "kernel_dim": ker.dim,
        "restriction_multiplicative": multiplicative,
        "kernel_square_zero": square_zero,
        "kernel_two_sided_ideal": ideal,
        "splitting_chain_maps": strict_ok,
        "splitting_section": splits,
        "splitting_multiplicative": sigma_mult,
    })
    report["ok"] = (
        end_n.dim == end_p.dim + report["extension_dim"]
        and ker.dim == report["extension_dim"]
        and multiplicative and square_zero and ideal and splits and sigma_mult
    )
    return report


# ------------------------------------------------------------------ components


@dataclass(eq=False)
class ComponentCertificate:
    f_values: tuple
    candidate_shift: int | None
    iso: IsoResult | None
    verdict: str
    detail: str = ""

    def to_document(self) -> dict:
        return {
            "verdict": self.verdict,
            "f": ["infinity" if v is INFINITY else v for v in self.f_values],
            "candidate_shift": self.candidate_shift,
            "iso": None if self.iso is None else self.iso.verdict,
            "detail": self.detail,
        }


def component_certificate(c: SemiFreeModule, c2: SemiFreeModule,
                          cert: GorensteinCertificate | None = None) -> ComponentCertificate:
    """Decide whether c2 is an iterated Sigma^{d-1} shift of c."""
    cert = _require(cert, c.algebra)
    if cert.algebra.cohomology.total_dim < 2:
        raise ValueError("component_certificate needs dim H*A >= 2")
    d = cert.d
    f1, f2 = f_invariant(c), f_invariant(c2)
    if INFINITY in (f1, f2):
        raise ValueError("component_certificate needs compact objects")
    if f1 != f2:
        return ComponentCertificate((f1, f2), None, None, "Inconclusive",
                                    "f values differ; f alone does not separate components")
    delta = c2.cohomology.inf - c.cohomology.inf
    if delta % (d - 1):
        return ComponentCertificate((f1, f2), None, None, "DifferentComponents",
                                    "inf H* differ by %d, not a multiple of d-1 = %d" % (delta, d - 1))
    j = delta // (d - 1)
    iso = iso_test(c, shift(c2, j * (d - 1)))
    verdict = {"Isomorphic": "SameComponentWitness", "NotIsomorphic": "DifferentComponents"}.get(
        iso.verdict, "Inconclusive")
    return ComponentCertificate((f1, f2), j, iso, verdict, iso.detail)
