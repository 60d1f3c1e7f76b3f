import pytest
from hypothesis import given, settings, strategies as st

from dgar.exactla import (
    GF,
    QQ,
    Quotient,
    complement,
    full_space,
    image,
    intersect,
    inverse,
    is_zero,
    kernel,
    rank,
    rank_kernel_image,
    rref,
    solve,
    span,
    subspace_sum,
)

small = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_of_rank_one_matrix():
    m = QQ.array([[1, 2], [2, 4]])
    assert rank(m) == 1
    k = kernel(m)
    assert k.dim == 1
    assert k.contains(QQ.array([-2, 1]))


def test_solve_sets_free_variables_to_zero():
    x = solve(QQ.array([[1, 1]]), QQ.array([3]))
    assert list(x) == [3, 0]


def test_solve_inconsistent_returns_none():
    assert solve(QQ.array([[1, 1], [1, 1]]), QQ.array([1, 2])) is None


def test_complement_is_greedy_on_standard_basis():
    sub = span([QQ.array([1, 1])], 2)
    comp = complement(sub, full_space(2))
    assert comp.dim == 1
    assert list(comp.basis[0]) == [1, 0]


def test_intersection_of_coordinate_planes():
    a = span([QQ.array([1, 0, 0]), QQ.array([0, 1, 0])], 3)
    b = span([QQ.array([0, 1, 0]), QQ.array([0, 0, 1])], 3)
    assert intersect(a, b) == span([QQ.array([0, 1, 0])], 3)


def test_prime_field_arithmetic():
    f = GF(5)
    x = f(3)
    assert x * f(2) == f(1)
    assert f(1) / x == f(2)
    assert -x == f(2)
    m = f.array([[1, 2], [3, 4]])
    inv = inverse(m, f)
    assert is_zero(m @ inv - f.eye(2))


def test_gf_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(6)


def test_rank_depends_on_characteristic():
    m = [[1, 1], [1, -1]]
    assert rank(QQ.array(m)) == 2
    assert rank(GF(2).array(m), GF(2)) == 1


def test_quotient_coordinates_reconstruct():
    inside = full_space(3)
    sub = span([QQ.array([1, 1, 0])], 3)
    q = Quotient(sub, inside)
    assert q.dim == 2
    v = QQ.array([2, 5, 7])
    c = q.coords(v)
    assert sub.contains(v - c @ q.reps)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    m = QQ.array(rows)
    rki = rank_kernel_image(m)
    assert rki.rank + rki.kernel.dim == m.shape[1]
    assert rki.image.dim == rki.rank
    for v in rki.kernel.vectors:
        assert is_zero(m @ v)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_canonical(rows):
    m = QQ.array(rows)
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert piv == piv2
    assert is_zero(r - r2)
    # row operations do not change the row space
    assert span(list(m), m.shape[1]) == span(list(r[: len(piv)]), m.shape[1])


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_is_a_solution(rows, xs):
    m = QQ.array(rows)
    b = m @ QQ.array(xs[: m.shape[1]])
    x = solve(m, b)
    assert x is not None and is_zero(m @ x - b)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4), matrices(3, 4))
def test_sum_and_intersection_dimensions(r1, r2):
    n = 4
    a = span([QQ.array(r + [0] * (n - len(r))) for r in r1], n)
    b = span([QQ.array(r + [0] * (n - len(r))) for r in r2], n)
    assert subspace_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim
    comp = complement(a, full_space(n))
    assert comp.dim + a.dim == n
    assert subspace_sum(a, comp).dim == n


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_inverse_exact(rows):
    m = QQ.array(rows)
    inv = inverse(m)
    if rank(m) == m.shape[0]:
        assert is_zero(m @ inv - QQ.eye(m.shape[0]))
    else:
        assert inv is None


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_image_over_gf7_matches_rank(rows):
    f = GF(7)
    m = f.array(rows)
    assert image(m, f).dim == rank(m, f)
