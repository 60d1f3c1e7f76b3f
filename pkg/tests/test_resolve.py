import random

import pytest
from hypothesis import given, settings, strategies as st

from dgar.arengine import build_family
from dgar.dgmodule import ChainMap, augmentation_module, direct_sum, free_module, is_minimal, mapping_cone, shift
from dgar.resolve import (
    INFINITY,
    amplitude,
    f_invariant,
    f_invariant_report,
    is_compact,
    level_certificate,
    minimal_semifree_resolution,
)
from dgar.ringlab import iso_test
from dgar.shell.fixtures import fixture, random_compact

seeds = st.integers(0, 10**6)


def family(name, n):
    return build_family(fixture(name), (0,) * n).module


def test_infinity_is_a_singleton_marker():
    import pickle

    assert pickle.loads(pickle.dumps(INFINITY)) is INFINITY
    assert str(INFINITY) == "inf"


@pytest.mark.parametrize("d", [2, 3])
def test_augmentation_resolution_grows_in_steps_of_d_minus_1(d):
    a = fixture("sphere:%d" % d)
    res = minimal_semifree_resolution(augmentation_module(a), 6 * (d - 1))
    assert not res.terminated
    assert {p: k for p, k in res.betti.items() if k} == {j * (d - 1): 1 for j in range(7)}
    assert res.check_betti_recurrence()
    assert is_minimal(res.resolution)
    assert res.quasi_iso.is_chain_map()


def test_default_cutoff_is_reported():
    a = fixture("sphere:2")
    rep = is_compact(augmentation_module(a))
    assert rep.verdict == "NotWithinCutoff"
    assert "not a proof" in rep.note
    assert f_invariant(augmentation_module(a)) is INFINITY


@pytest.mark.parametrize("name", ["sphere:2", "sphere:3"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_family_modules_resolve_to_n_plus_one_generators(name, n):
    c = family(name, n)
    res = minimal_semifree_resolution(c.materialize())
    assert res.terminated
    assert res.rank == n + 1
    assert res.quasi_iso.is_quasi_iso()
    assert is_compact(c).verdict == "Compact"
    assert iso_test(res.resolution, c).verdict == "Isomorphic"


def test_f_invariant_routes_agree_and_cone_of_identity_is_zero():
    a = fixture("sphere:2")
    rep = f_invariant_report(family("sphere:2", 1))
    assert (rep.value, rep.via_hom, rep.via_tensor) == (2, 2, 2)
    A = free_module(a, [0])
    assert f_invariant(mapping_cone(ChainMap.identity(A))) == 0


def test_amplitude_of_c1():
    assert amplitude(family("sphere:2", 1)) == (0, 3, 3)
    a = fixture("sphere:2")
    assert amplitude(mapping_cone(ChainMap.identity(free_module(a, [0])))) == (None, None, None)


@pytest.mark.parametrize("name,n", [("sphere:2", 1), ("sphere:2", 2), ("sphere:3", 3)])
def test_level_certificates_are_exact(name, n):
    cert = level_certificate(family(name, n))
    assert cert.exact
    assert cert.value == n + 1
    assert cert.lower_bound == n
    assert cert.to_document()["level"] == n + 1


def test_level_requires_sphere_model():
    with pytest.raises(ValueError):
        level_certificate(free_module(fixture("prodspheres:2,2"), [0]))


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["sphere:2", "prodspheres:2,2", "cp3", "rigged:g0235"]))
def test_resolution_of_random_compact_module(seed, name):
    a = fixture(name)
    rng = random.Random(seed)
    m = random_compact(a, rng, steps=2, summands=rng.randint(1, 2))
    res = minimal_semifree_resolution(m.materialize())
    assert res.terminated
    assert is_minimal(res.resolution)
    assert res.check_betti_recurrence()
    assert res.quasi_iso.is_quasi_iso()
    assert res.rank <= m.rank
    rep = f_invariant_report(m)
    assert rep.value == rep.via_hom == rep.via_tensor == res.rank


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_f_is_additive_and_shift_invariant(seed):
    a = fixture("prodspheres:2,2")
    rng = random.Random(seed)
    x = random_compact(a, rng, steps=2)
    y = random_compact(a, rng, steps=2)
    n = rng.randint(-4, 4)
    assert f_invariant(shift(x, n)) == f_invariant(x)
    assert f_invariant(direct_sum(x, y)) == f_invariant(x) + f_invariant(y)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["sphere:2", "sphere:4", "prodspheres:2,4", "exterior:3,5"]))
def test_compact_amplitude_bounded_below_by_algebra(seed, name):
    a = fixture(name)
    m = random_compact(a, random.Random(seed), steps=2)
    assert amplitude(m)[2] >= a.cohomology.amplitude()
