"""Coalgebras, bicomodules, cotensor products and cocenters."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from bicoalg.coalgebra import (
    Bicomodule, Coalgebra, CocenterObstruction, cocenter, coenveloping, coopposite, corestrict, cotensor,
    factor_through_cocenter, is_cocommutative, phi_matrix, regular_bicomodule, second_section, trivial_coalgebra,
    unit_isomorphisms, verify_anti_coalgebra_map, verify_bicomodule, verify_coalgebra, verify_coalgebra_map,
    w_spanning_set,
)
from bicoalg.examples import (
    bigraded_bicomodule, cyclic_group, divided_power, dual_group_hopf, grouplike, outer_bicomodule,
    random_bicomodule, symmetric_group,
)
from bicoalg.exactlin import LinMap, NotInSubspace, Q, rank, tensor_map

from .oracles import coassociative, dense_matmul, equalizer_dim, grouplike_cotensor_dim, phi_image_rank

GENERATED = [
    trivial_coalgebra(Q), grouplike(1), grouplike(2), grouplike(3), divided_power(2), divided_power(3),
    dual_group_hopf(cyclic_group(2)), dual_group_hopf(cyclic_group(3)), dual_group_hopf(symmetric_group(3)),
]


@pytest.mark.parametrize("C", GENERATED, ids=lambda C: C.label)
def test_generated_coalgebras_pass(C):
    assert verify_coalgebra(C).ok
    assert coassociative(C.delta.entries, C.dim)


def test_dual_group_of_z2_passes():
    assert verify_coalgebra(dual_group_hopf(cyclic_group(2))).ok


def test_zero_counit_fails_with_witness_zero():
    C = grouplike(2)
    broken = Coalgebra(2, C.delta, LinMap.zero(1, 2), "broken")
    rep = verify_coalgebra(broken)
    assert rep["coassociativity"].passed
    assert not rep["counit"].passed
    assert rep["counit"].witness["basis"] == 0


# -- coalgebra maps ------------------------------------------------------------

def test_identity_is_coalgebra_map():
    C = dual_group_hopf(symmetric_group(3))
    assert verify_coalgebra_map(C.identity(), C, C).ok


def test_collapse_to_one_point():
    collapse = LinMap.from_dense([[1, 1]])
    assert verify_coalgebra_map(collapse, grouplike(2), grouplike(1)).ok


def test_non_grouplike_image_fails():
    f = LinMap.from_dense([[1, 0], [1, 1]])  # x ↦ x + y
    rep = verify_coalgebra_map(f, grouplike(2), grouplike(2))
    assert not rep["comultiplicative"].passed
    assert rep["comultiplicative"].witness["basis"] == 0


def test_anti_map_on_non_cocommutative():
    C = dual_group_hopf(symmetric_group(3))
    assert not verify_coalgebra_map(C.identity(), C, coopposite(C)).ok
    assert verify_anti_coalgebra_map(C.identity(), C, coopposite(C)).ok


# -- cotensor ------------------------------------------------------------------

def test_grouplike_cotensor_is_diagonal():
    C = grouplike(2)
    S = cotensor(C.delta, C.delta, C)
    assert S.dim == grouplike_cotensor_dim(2) == 2
    assert S.contains({0: 1}) and S.contains({3: 1})  # x⊗x, y⊗y
    assert not S.contains({1: 1})


def test_cotensor_over_ground_field_is_full():
    k = trivial_coalgebra(Q)
    M = bigraded_bicomodule(k, [(0, 0)] * 3)
    N = bigraded_bicomodule(k, [(0, 0)] * 2)
    assert cotensor(M.rho, N.lam, k).dim == 6


@pytest.mark.parametrize("C", GENERATED, ids=lambda C: C.label)
def test_cotensor_unit_laws(C):
    S, into, out = unit_isomorphisms(C)
    assert S.dim == C.dim
    assert S.dim == equalizer_dim(C.delta.entries, C.delta.entries, C.dim, C.dim, C.dim)
    assert out @ into == C.identity()
    assert into @ out == LinMap.identity(S.dim)


def test_corestrict_delta_and_failure():
    C = grouplike(2)
    S = cotensor(C.delta, C.delta, C)
    assert corestrict(S.inclusion, S) == LinMap.identity(2)
    assert S.inclusion @ corestrict(C.delta, S) == C.delta
    bad = LinMap.from_dense([[1], [1], [0], [0]])
    with pytest.raises(NotInSubspace) as err:
        corestrict(bad, S)
    assert err.value.column == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_cotensor_dimension_matches_dense_equalizer(seed):
    rng = random.Random(seed)
    M = random_bicomodule(rng)
    N = random_bicomodule(rng)
    if N.base != M.base:
        N = regular_bicomodule(M.base)
    c = M.base.dim
    S = cotensor(M.rho, N.lam, M.base)
    assert S.dim == equalizer_dim(M.rho.entries, N.lam.entries, M.dim, c, N.dim)


# -- cocenter ------------------------------------------------------------------

def test_symmetric_coactions_have_trivial_phi():
    C = dual_group_hopf(cyclic_group(3))  # cocommutative, so λ = tw∘ρ on the regular bicomodule
    q, zeta = cocenter(regular_bicomodule(C))
    assert phi_matrix(regular_bicomodule(C)).is_zero()
    assert q.dim == C.dim and zeta == C.identity()


def test_grouplike_regular_cocenter_is_everything():
    q, _ = cocenter(regular_bicomodule(grouplike(2)))
    assert q.dim == 2


def test_outer_bicomodule_cocenter_counts_diagonal_classes():
    C = grouplike(2)
    M = outer_bicomodule(C)
    q, zeta = cocenter(M)
    expected = M.dim - phi_image_rank(M.lam.entries, M.rho.entries, M.dim, C.dim)
    assert q.dim == expected == 2
    # x⊗x and y⊗y survive, x⊗y and y⊗x die
    assert zeta({1: 1}) == {} and zeta({2: 1}) == {}
    assert zeta({0: 1}) and zeta({3: 1})


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_cocenter_rank_property(seed):
    M = random_bicomodule(random.Random(seed))
    assert verify_bicomodule(M).ok
    q, zeta = cocenter(M)
    Phi = phi_matrix(M)
    assert (zeta @ Phi).is_zero()
    assert rank(zeta) == q.dim == M.dim - rank(Phi)
    assert rank(Phi) == phi_image_rank(M.lam.entries, M.rho.entries, M.dim, M.base.dim)


def test_factor_zeta_through_itself():
    M = outer_bicomodule(grouplike(2))
    q, zeta = cocenter(M)
    assert factor_through_cocenter(zeta, M) == LinMap.identity(q.dim)


def test_counit_type_map_factors_uniquely():
    C = grouplike(2)
    M = outer_bicomodule(C)
    q, zeta = cocenter(M)
    g = LinMap.from_dense([[1, 0, 0, 1]])  # supported on the diagonal x⊗x, y⊗y
    f = tensor_map(C.counit, C.counit)  # nonzero on x⊗y, which lies in the image of Φ
    f1 = factor_through_cocenter(g, M)
    assert f1 @ zeta == g
    assert g @ second_section(q) == f1
    with pytest.raises(CocenterObstruction):
        factor_through_cocenter(f, M)


def test_identity_obstructed_when_phi_nonzero():
    M = outer_bicomodule(grouplike(2))
    with pytest.raises(CocenterObstruction) as err:
        factor_through_cocenter(LinMap.identity(4), M)
    assert err.value.basis == 1
    assert err.value.w == w_spanning_set(M)[1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_factorization_iff_annihilates_w(seed):
    rng = random.Random(seed)
    M = random_bicomodule(rng)
    q, zeta = cocenter(M)
    n = rng.randint(1, 3)
    if rng.random() < 0.5 and q.dim:
        g = LinMap.from_dense([[rng.randint(-2, 2) for _ in range(q.dim)] for _ in range(n)])
        f = g @ zeta
    else:
        f = LinMap.from_dense([[rng.randint(-2, 2) for _ in range(M.dim)] for _ in range(n)])
    Phi = phi_matrix(M).entries
    kills = all(x == 0 for row in dense_matmul(f.entries, Phi) for x in row)
    if kills:
        f1 = factor_through_cocenter(f, M)
        assert f1 @ zeta == f
    else:
        with pytest.raises(CocenterObstruction):
            factor_through_cocenter(f, M)


# -- co-opposite and co-enveloping ------------------------------------------------

def test_cocommutative_cop_is_same():
    C = grouplike(3)
    assert coopposite(C).delta == C.delta


def test_dual_s3_is_not_cocommutative():
    C = dual_group_hopf(symmetric_group(3))
    assert not is_cocommutative(C)
    assert coopposite(C).delta != C.delta
    assert verify_coalgebra(coopposite(C)).ok


@pytest.mark.parametrize("C", GENERATED, ids=lambda C: C.label)
def test_coenveloping_passes(C):
    Ce = coenveloping(C)
    assert Ce.dim == C.dim ** 2
    assert verify_coalgebra(Ce).ok
    assert verify_coalgebra(coopposite(C)).ok


def test_bicomodule_verifier_catches_incompatible_coactions():
    C = dual_group_hopf(cyclic_group(2))
    M = regular_bicomodule(C)
    broken = Bicomodule(M.dim, C, M.lam, LinMap.from_dense([[1, 0], [0, 0], [0, 0], [0, 1]]), "broken")
    assert not verify_bicomodule(broken).ok
