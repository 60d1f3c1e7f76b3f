import random

import pytest
from hypothesis import given, settings, strategies as st

from dgar.arengine import (
    admissible_sequences,
    ar_translate,
    ar_triangle,
    build_family,
    build_pencil,
    component_certificate,
    construct_step,
    endo_recursion_check,
    gorenstein_check,
    is_admissible,
    serre_dim_check,
)
from dgar.dgmodule import free_module, shift
from dgar.resolve import f_invariant
from dgar.ringlab import decompose, endo_algebra, iso_test, locality
from dgar.shell.fixtures import fixture, random_compact
from oracles import end_h0_dim

seeds = st.integers(0, 10**6)


@pytest.mark.parametrize("name,d", [("sphere:2", 2), ("sphere:5", 5), ("prodspheres:2,2", 4), ("cp3", 6),
                                    ("ex62", 6), ("exterior:3,5", 8), ("rigged:g0235", 5)])
def test_gorenstein_dimension(name, d):
    cert = gorenstein_check(fixture(name))
    assert cert.certified and cert.d == d
    assert cert.da_witness_ok
    assert cert.to_document()["certified"] is True


def test_gorenstein_refuted():
    a = fixture("rigged:nongorenstein")
    cert = gorenstein_check(a)
    assert not cert.certified
    assert cert.reason
    with pytest.raises(ValueError):
        ar_translate(free_module(a, [0]))


def test_gorenstein_rejects_algebras_outside_the_connected_setting():
    with pytest.raises(ValueError):
        gorenstein_check(fixture("rigged:idempotents"))


def test_serre_identity_on_named_pairs():
    a = fixture("sphere:2")
    A = free_module(a, [0])
    c1 = build_family(a, (0,)).module
    r = serre_dim_check(A, A)
    assert (r["hom_x_y"], r["hom_y_shifted_x"]) == (1, 1)
    assert serre_dim_check(A, c1)["ok"]
    pp = fixture("prodspheres:2,2")
    c = build_pencil(pp, 2, (1, 1))
    assert serre_dim_check(c, c)["ok"]


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(["sphere:3", "prodspheres:2,2", "cp3", "rigged:g0235"]))
def test_serre_identity_random(seed, name):
    a = fixture(name)
    rng = random.Random(seed)
    x = random_compact(a, rng, steps=2)
    y = random_compact(a, rng, steps=2)
    assert serre_dim_check(x, y)["ok"]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_translate_of_free_module_is_shift(d):
    a = fixture("sphere:%d" % d)
    tr = ar_translate(free_module(a, [0]))
    assert tr.verified
    assert f_invariant(tr.module) == 1


@settings(max_examples=10, deadline=None)
@given(seeds, st.sampled_from(["sphere:2", "prodspheres:2,2"]))
def test_translate_preserves_f(seed, name):
    a = fixture(name)
    c = random_compact(a, random.Random(seed), steps=2)
    tr = ar_translate(c)
    assert f_invariant(tr.module) == f_invariant(c)


def test_ar_triangle_ending_in_c1():
    a = fixture("sphere:2")
    c1 = build_family(a, (0,)).module
    tri = ar_triangle(c1)
    assert tri.additive
    assert tri.f_values == {"tau_z": 2, "y": 4, "z": 2}
    dec = decompose(tri.y)
    assert dec.verdict == "Decomposed"
    assert sum(f_invariant(s) for s in dec.summands) == 4


def test_ar_triangle_over_sphere3_is_indecomposable():
    a = fixture("sphere:3")
    tri = ar_triangle(free_module(a, [0]))
    assert tri.f_values["y"] == 2
    assert locality(endo_algebra(tri.y)) == "Local"
    assert len(decompose(tri.y).summands) == 1


def test_admissible_sequences():
    m3 = admissible_sequences(3)
    assert sorted(m3) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
    assert not is_admissible((1, 1))
    assert [len(admissible_sequences(n)) for n in range(6)] == [1, 2, 3, 5, 8, 13]


def test_adjacent_second_kind_steps_rejected():
    with pytest.raises(ValueError):
        build_family(fixture("prodspheres:2,2"), (1, 1))


def test_first_step_over_sphere2():
    a = fixture("sphere:2")
    cn, e1, entry = construct_step(free_module(a, [0]), "First", 2)
    assert e1 == 2
    assert cn.cohomology.dims == {0: 1, 3: 1}
    assert all(entry["checks"].values())


def test_second_step_uses_interior_degree():
    fm = build_family(fixture("prodspheres:2,2"), (1,))
    assert fm.plan.e_list == [2]
    assert fm.ok


def test_degree_bookkeeping_for_d5_fixture():
    a = fixture("rigged:g0235")
    d = 5
    for e in (2, 3):
        fm = build_family(a, (1, 0, 1), e=e)
        assert fm.plan.e_list == [e, e + d - 1, 2 * e + d - 2]
        assert fm.ok


@pytest.mark.parametrize("name,alpha", [("sphere:2", (0, 0, 0)), ("prodspheres:2,2", (1, 0, 1)),
                                        ("prodspheres:2,4", (0, 1, 0)), ("cp3", (0, 0))])
def test_family_logs_and_f(name, alpha):
    fm = build_family(fixture(name), alpha)
    assert fm.ok
    assert f_invariant(fm.module) == len(alpha) + 1
    for i in range(len(alpha)):
        assert fm.chain[i + 1].rank == i + 2


def test_endo_recursion_with_nonzero_extension():
    a = fixture("rigged:g0235")
    fm = build_family(a, (1, 0, 1), e=3)
    dims = []
    for i in range(3):
        rep = endo_recursion_check(fm.chain[i], fm.chain[i + 1], fm.plan.eA_list[i])
        assert rep["ok"]
        dims.append(rep["dim_end"])
        assert rep["dim_end"] == end_h0_dim(fm.chain[i + 1])
    assert dims == [2, 2, 3]


def test_pencils():
    a = fixture("prodspheres:2,2")
    c11 = build_pencil(a, 2, (1, 1))
    assert f_invariant(c11) == 2
    assert c11.materialize().validate() == []
    assert iso_test(build_pencil(a, 2, (2, 2)), c11).verdict == "Isomorphic"
    assert iso_test(build_pencil(a, 2, (1, 0)), build_pencil(a, 2, (0, 1))).verdict == "NotIsomorphic"
    with pytest.raises(ValueError):
        build_pencil(a, 2, (0, 0))
    with pytest.raises(ValueError):
        build_pencil(fixture("sphere:4"), 2, (1, 1))


def test_component_certificates():
    a = fixture("prodspheres:2,2")
    v = component_certificate(build_pencil(a, 2, (1, 0)), build_pencil(a, 2, (0, 1))).verdict
    assert v == "DifferentComponents"
    A = free_module(a, [0])
    assert component_certificate(A, shift(A, 3)).verdict == "SameComponentWitness"
    assert component_certificate(A, build_pencil(a, 2, (1, 0))).verdict == "Inconclusive"
    cert = component_certificate(A, shift(A, 6))
    assert cert.verdict == "SameComponentWitness" and cert.candidate_shift == -2
