import pytest
from hypothesis import given, settings, strategies as st

from dgar.dgalgebra import (
    DGAlgebra,
    adjoin_acyclic_pair,
    cohomology_ring,
    exterior,
    formal,
    ground_field,
    opposite,
    same_algebra,
    sphere_model,
    tensor_product,
    truncated_polynomial,
    validate,
)
from dgar.exactla import GF, QQ, is_zero
from dgar.models import free_model, truncate_model
from dgar.shell.fixtures import FIXTURES, fixture
from oracles import cohomology_dims_bruteforce

CONCRETE = ["sphere:2", "sphere:3", "sphere:5", "prodspheres:2,2", "prodspheres:2,4", "cp3", "ex62",
            "exterior:3,5", "truncpoly:2,3", "rigged:nongorenstein", "rigged:g0235", "rigged:idempotents",
            "rigged:triangular"]


@pytest.mark.parametrize("name", CONCRETE)
def test_fixtures_validate(name):
    assert validate(fixture(name)).ok


@pytest.mark.parametrize("name", CONCRETE)
def test_cohomology_matches_bruteforce(name):
    a = fixture(name)
    assert a.cohomology.dims == cohomology_dims_bruteforce(a.degrees, a.diff, a.field)


def test_fixture_listing_covers_named_fixtures():
    assert {"sphere:d", "cp3", "rigged:nongorenstein"} <= set(FIXTURES)
    with pytest.raises(KeyError):
        fixture("nosuch")
    with pytest.raises(ValueError):
        fixture("sphere:x")


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_sphere_cohomology_and_square_zero(d):
    a = sphere_model(d)
    assert a.cohomology.dims == {0: 1, d: 1}
    assert is_zero(a.product(1, 1))


def test_kunneth_for_product_of_spheres():
    a = tensor_product(sphere_model(2), sphere_model(2))
    assert a.dim == 4
    assert a.cohomology.as_list(0, 4) == [1, 0, 2, 0, 1]


@pytest.mark.parametrize("name,dims", [
    ("cp3", {0: 1, 2: 1, 4: 1, 6: 1}),
    ("ex62", {0: 1, 2: 1, 4: 1, 6: 1}),
    ("exterior:3,5", {0: 1, 3: 1, 5: 1, 8: 1}),
])
def test_named_cohomology(name, dims):
    assert fixture(name).cohomology.dims == dims


def test_exterior_odd_generators_anticommute():
    a = exterior([3, 5])
    assert validate(a).ok
    x, y = a.labels.index("x"), a.labels.index("y")
    assert is_zero(a.product(x, y) + a.product(y, x))
    assert is_zero(a.product(x, x))


def test_perturbed_differential_is_rejected():
    s = sphere_model(1)
    d = QQ.zeros(2, 2)
    d[1, 0] = QQ(1)
    bad = DGAlgebra(QQ, [0, 1], ["1", "x"], [1, 0], dict(s.table), d)
    rep = validate(bad)
    assert not rep.ok
    assert "leibniz" in rep.axioms()
    wrong_degree = DGAlgebra(QQ, [0, 2], ["1", "x"], [1, 0], dict(sphere_model(2).table), d)
    assert "grading" in validate(wrong_degree).axioms()


def test_opposite_is_an_involution():
    tr = fixture("rigged:triangular")
    assert not tr.is_graded_commutative
    assert not same_algebra(opposite(tr), tr)
    assert same_algebra(opposite(opposite(tr)), tr)
    assert validate(opposite(tr)).ok


def test_opposite_of_graded_commutative_is_itself():
    for name in ("exterior:3,5", "prodspheres:2,2", "cp3"):
        a = fixture(name)
        assert same_algebra(opposite(a), a)


def test_acyclic_pair_preserves_cohomology_and_truncates_away():
    base = sphere_model(2)
    a = adjoin_acyclic_pair(base, 3)
    assert validate(a).ok
    assert a.cohomology.dims == base.cohomology.dims
    t = truncate_model(a)
    assert t.dim == 2
    assert t.cohomology.dims == base.cohomology.dims


def test_cohomology_ring_of_product():
    ring, table = cohomology_ring(fixture("prodspheres:2,2"))
    assert ring.dims == {0: 1, 2: 2, 4: 1}
    assert table.dims == ring.dims
    x, y = 1, 2
    assert not is_zero(ring.product(x, y))
    assert is_zero(ring.product(x, x))
    assert validate(formal(ring)).ok


def test_free_model_of_sphere3_truncates_to_finite_model():
    fm = free_model(sphere_model(3), 6)
    assert fm.generator_degrees() == [3, 5]
    assert all(v["injective"] and v["surjective"] for v in fm.verified.values())
    t = truncate_model(fm.algebra, 3)
    assert t.cohomology.dims == {0: 1, 3: 1}
    assert t.sup == 3


def test_free_model_of_sphere2_needs_relation_generator():
    # x^2 = 0 in H* but not in T(x), so a degree-3 generator with dy = x^2 appears
    fm = free_model(sphere_model(2), 4)
    assert fm.generator_degrees() == [2, 3]


def test_free_model_rejects_nonconnected_input():
    with pytest.raises(ValueError):
        free_model(fixture("rigged:idempotents"), 4)


def test_ground_field_and_prime_fields():
    k = ground_field(GF(3))
    assert k.cohomology.dims == {0: 1}
    a = truncated_polynomial(2, 3, field=GF(3))
    assert validate(a).ok
    assert a.cohomology.dims == {0: 1, 2: 1, 4: 1}


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_tensor_of_spheres_is_kunneth(p, q):
    a = tensor_product(sphere_model(p, name="x"), sphere_model(q, name="y"))
    assert validate(a).ok
    expect = {}
    for i in (0, p):
        for j in (0, q):
            expect[i + j] = expect.get(i + j, 0) + 1
    assert a.cohomology.dims == expect


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from([1, 3, 5]), min_size=1, max_size=3))
def test_exterior_algebras_validate(degs):
    a = exterior(degs)
    assert validate(a).ok
    assert a.cohomology.total_dim == 2 ** len(degs)
