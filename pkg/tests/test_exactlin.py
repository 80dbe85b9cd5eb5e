"""Exact linear algebra: kernels, cokernels, preimages, tensor plumbing."""
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bicoalg.exactlin import (
    Field, Fp, LinMap, NoPreimage, NotInSubspace, Q, Subspace, cokernel, corestrict_map, image, kernel,
    permutation_map, rank, solve_preimage, tensor_map, twist,
)

from .oracles import brute_kernel_size, dense_matmul, dense_tensor


def small_matrix(max_rows=4, max_cols=4, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_normal_forms():
    assert Q.parse("6/4") == Fraction(3, 2)
    assert Q.parse("-2/4") == Fraction(-1, 2)
    F5 = Fp(5)
    assert F5.parse(-1) == 4
    assert F5.coerce(Fraction(1, 2)) == 3
    with pytest.raises(ValueError):
        Fp(6)


# -- kernel ------------------------------------------------------------------

def test_kernel_of_identity_is_zero():
    assert kernel(LinMap.identity(2)).dim == 0


def test_kernel_of_zero_map_is_everything():
    K = kernel(LinMap.zero(2, 2))
    assert K.dim == 2
    assert K.inclusion == LinMap.identity(2)


def test_kernel_of_sum_row():
    K = kernel(LinMap.from_dense([[1, 1]]))
    assert K.dim == 1
    assert K.basis[0] == {0: 1, 1: -1}


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rank_nullity(grid):
    f = LinMap.from_dense(grid)
    assert rank(f) + kernel(f).dim == f.cols
    assert (f @ kernel(f).inclusion).is_zero()


@settings(max_examples=40, deadline=None)
@given(small_matrix(3, 4, 0, 2))
def test_kernel_dimension_against_enumeration_over_f3(grid):
    F = Fp(3)
    f = LinMap.from_dense(grid, F=F)
    assert 3 ** kernel(f).dim == brute_kernel_size(grid, 3)


# -- cokernel ----------------------------------------------------------------

def test_cokernel_of_identity_is_zero():
    assert cokernel(LinMap.identity(3)).dim == 0


def test_cokernel_of_zero_map_is_identity_projection():
    q = cokernel(LinMap.zero(3, 2))
    assert q.dim == 3
    assert q.projection == LinMap.identity(3)


def test_cokernel_of_diagonal_inclusion():
    f = LinMap.from_dense([[1], [1]])
    q = cokernel(f)
    assert q.dim == 1
    # canonical normalization: the coefficient on the surviving coordinate is 1
    assert q.projection.entries == [[-1, 1]]
    assert (q.projection @ f).is_zero()


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_cokernel_projection_properties(grid):
    f = LinMap.from_dense(grid)
    q = cokernel(f)
    assert (q.projection @ f).is_zero()
    assert rank(q.projection) == q.dim == f.rows - rank(f)
    assert q.projection @ q.section == LinMap.identity(q.dim)


# -- preimages and corestriction --------------------------------------------

def test_solve_preimage_examples():
    assert solve_preimage(LinMap.identity(2), {0: 1, 1: 2}) == {0: 1, 1: 2}
    assert solve_preimage(LinMap.from_dense([[1, 1]]), {0: 3}) == {0: 3}
    with pytest.raises(NoPreimage):
        solve_preimage(LinMap.zero(1, 1), {0: 1})


@settings(max_examples=60, deadline=None)
@given(small_matrix(), st.data())
def test_solve_preimage_round_trip(grid, data):
    f = LinMap.from_dense(grid)
    x = data.draw(st.lists(st.integers(-3, 3), min_size=f.cols, max_size=f.cols))
    v = f({i: Fraction(a) for i, a in enumerate(x) if a})
    assert f(solve_preimage(f, v)) == v


def test_corestrict_identity_and_failure():
    S = image(LinMap.from_dense([[1], [1], [0]]))
    assert corestrict_map(S.inclusion, S) == LinMap.identity(1)
    with pytest.raises(NotInSubspace) as err:
        corestrict_map(LinMap.from_dense([[1, 1], [1, 0], [0, 0]]), S)
    assert err.value.column == 1


# -- tensor plumbing ---------------------------------------------------------

def test_tensor_identity_and_scalar():
    assert tensor_map(LinMap.identity(2), LinMap.identity(3)) == LinMap.identity(6)
    assert tensor_map(LinMap.from_dense([[2]]), LinMap.identity(2)).entries == [[2, 0], [0, 2]]


@settings(max_examples=40, deadline=None)
@given(*(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2) for _ in range(4)))
def test_tensor_functorial(f, g, f2, g2):
    F, G, F2, G2 = (LinMap.from_dense(m) for m in (f, g, f2, g2))
    assert tensor_map(F, G) @ tensor_map(F2, G2) == tensor_map(F @ F2, G @ G2)
    # independent dense Kronecker oracle
    assert tensor_map(F, G).entries == dense_tensor(f, g)
    assert (F @ F2).entries == dense_matmul(f, f2)


def test_twist_small_cases():
    assert twist(1, 4) == LinMap.identity(4)
    tw = twist(2, 2)
    assert tw({1: 1}) == {2: 1}  # e0⊗e1 -> e1⊗e0


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 7) for b in range(1, 7)])
def test_twist_involution(a, b):
    assert twist(b, a) @ twist(a, b) == LinMap.identity(a * b)


def test_middle_twist_matches_enumeration():
    d = 2
    tw23 = tensor_map(tensor_map(LinMap.identity(d), twist(d, d)), LinMap.identity(d))
    for i, j, k, l in product(range(d), repeat=4):
        src = ((i * d + j) * d + k) * d + l
        dst = ((i * d + k) * d + j) * d + l
        assert tw23({src: 1}) == {dst: 1}
    assert permutation_map((d,) * 4, (0, 2, 1, 3)) == tw23


def test_prime_field_arithmetic_stays_reduced():
    F = Fp(7)
    f = LinMap.from_dense([[3, 5], [6, 1]], F=F)
    g = f @ f
    assert all(0 <= x < 7 for row in g.entries for x in row)
    assert g.entries == [[(3 * 3 + 5 * 6) % 7, (3 * 5 + 5 * 1) % 7], [(6 * 3 + 1 * 6) % 7, (6 * 5 + 1) % 7]]


def test_subspace_membership_and_coords():
    S = Subspace.span(3, [{0: 1, 1: 1}, {2: 2}])
    assert S.contains({0: 2, 1: 2, 2: 5})
    assert not S.contains({0: 1})
    c = S.coords({0: 2, 1: 2, 2: 5})
    assert S.embed(c) == {0: 2, 1: 2, 2: 5}
    with pytest.raises(NotInSubspace):
        S.coords({1: 1})


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        tensor_map(LinMap.identity(1), LinMap.identity(1, F=Field(5)))
