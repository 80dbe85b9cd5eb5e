"""Right modules, Yetter-Drinfeld modules, pre-braidings and braided cocommutative coalgebras."""
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from bicoalg.bicoalgebroid import regular_h_comodule, unit_h_comodule
from bicoalg.coalgebra import Bicomodule, cotensor, verify_bicomodule
from bicoalg.examples import (
    SetLevelViolation, action_groupoid_bcc, coenveloping_bico, conjugation_bcc, conjugation_gset, cyclic_group,
    group_hopf, grouplike, random_gset, regular_bcc, regular_gset, regular_left_yd, swap_gset, symmetric_group,
    trivial_phi,
)
from bicoalg.exactlin import LinMap, tensor_map
from bicoalg.yd import (
    LeftYDModule, RightHModule, bcc_prebraiding_fixes_coproduct, check_center_embedding, hexagon_check,
    induced_left_coaction, is_yd_morphism, kappa_prebraiding, prebraiding, verify_bcc, verify_left_yd,
    verify_right_module, verify_yd, yang_baxter_check, yd_tensor, yd_unit,
)

from .oracles import set_level_stabilizer, set_level_yd

S3 = symmetric_group(3)
Z3 = cyclic_group(3)


def linearized(X):
    """The YD module of a linearized G-set, without the set-level gate."""
    Dd, B = action_groupoid_bcc(X, check_set_level=False)
    return Dd.yd, B


def conj_yd(G):
    return linearized(conjugation_gset(G))


def non_central(G):
    return next(g for g in G.elements() if any(G.mul(g, h) != G.mul(h, g) for h in G.elements()))


# -- right modules ------------------------------------------------------------------

def test_unit_module_passes():
    for B in (group_hopf(S3), coenveloping_bico(grouplike(2))):
        rep = verify_right_module(yd_unit(B), B)
        assert rep.ok, rep.failed()


def test_right_multiplication_passes():
    Dd, B = regular_bcc(S3)
    assert verify_right_module(Dd.yd, B).ok


def test_scaled_action_fails_unit():
    Dd, B = regular_bcc(cyclic_group(2))
    M = RightHModule(Dd.dim, Dd.yd.space.rho, Dd.yd.action_total.scale(2))
    rep = verify_right_module(M, B)
    assert not rep["action_unit"].passed


def test_induced_coaction_over_ground_field_is_trivial():
    Dd, B = regular_bcc(S3)
    assert induced_left_coaction(Dd.yd, B) == LinMap.identity(6)


def test_induced_coaction_on_coenveloping_unit():
    B = coenveloping_bico(grouplike(2))
    U = yd_unit(B)
    tau = induced_left_coaction(U, B)
    assert verify_bicomodule(Bicomodule(2, B.base, tau, U.space.rho)).ok
    assert tau == B.base.delta
    rep = verify_right_module(U, B)
    assert rep["action_factors_through_cocenter"].passed


# -- YD modules ------------------------------------------------------------------------

def test_conjugation_yd_on_s3_passes():
    Z, B = conj_yd(S3)
    assert verify_yd(Z, B).ok
    assert set_level_yd(S3.table, S3.inverse, conjugation_gset(S3).act, list(S3.elements())) == []


def test_trivial_coaction_passes_on_any_gset():
    for X in (swap_gset(), trivial_phi(regular_gset(S3)), trivial_phi(conjugation_gset(S3))):
        Z, B = linearized(X)
        assert verify_yd(Z, B).ok


def test_non_normal_coaction_fails():
    X = conjugation_gset(S3).with_phi([non_central(S3)] * 6)
    assert set_level_yd(S3.table, S3.inverse, X.act, X.phi)
    Z, B = linearized(X)
    rep = verify_yd(Z, B)
    assert not rep["yd_compatibility"].passed


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_linear_yd_agrees_with_set_level(seed):
    X = random_gset(random.Random(seed))
    G = X.group
    set_ok = not set_level_yd(G.table, G.inverse, X.act, X.phi)
    Z, B = linearized(X)
    assert verify_yd(Z, B).ok == set_ok


def test_second_extension_gives_same_yd_verdicts():
    Z, B = conj_yd(S3)
    rep = verify_yd(Z, B, seed=7)
    assert rep["extension_independence"].passed


# -- tensor and unit -------------------------------------------------------------------

def test_tensor_with_unit_is_isomorphic():
    Z, B = conj_yd(Z3)
    T = yd_tensor(Z, yd_unit(B), B)
    assert T.dim == Z.dim
    assert verify_yd(T, B).ok
    # C = k, so the cotensor basis is z⊗1 and the structure is Z's own
    assert T.delta == Z.delta
    assert T.action_total @ tensor_map(T.sub.reader, B.total.identity()) @ tensor_map(
        T.sub.inclusion, B.total.identity()) == T.action_total


def test_conjugation_square_over_z3_passes():
    Z, B = conj_yd(Z3)
    T = yd_tensor(Z, Z, B)
    assert T.dim == 9
    assert verify_yd(T, B).ok


def test_tensor_action_with_trivial_coactions():
    G = S3
    Z, B = linearized(trivial_phi(regular_gset(G)))
    T = yd_tensor(Z, Z, B)
    n = G.order
    for x in G.elements():
        for y in G.elements():
            for g in G.elements():
                (i, _), = T.sub.coords({x * n + y: 1}).items()
                out = T.action_total({i * n + g: 1})
                expected = T.sub.coords({G.mul(x, g) * n + G.mul(y, g): 1})
                assert out == expected  # grouplike h: z◁h ⊠ z'◁h


# -- pre-braidings ---------------------------------------------------------------------

def test_prebraiding_conjugation_formula():
    Z, B = conj_yd(S3)
    tau = prebraiding(Z, Z, B)
    n = S3.order
    for x in S3.elements():
        for y in S3.elements():
            assert tau.columns[x * n + y] == {y * n + S3.conj(x, y): 1}  # y ⊗ y⁻¹xy


def test_prebraiding_is_yd_morphism():
    Z, B = conj_yd(Z3)
    T = yd_tensor(Z, Z, B)
    tau = prebraiding(Z, Z, B)
    assert is_yd_morphism(tau, T, T, B).ok


def test_prebraiding_with_unit():
    Z, B = conj_yd(S3)
    tau = prebraiding(Z, yd_unit(B), B)
    assert tau == LinMap.identity(6)


def test_hexagon_on_conjugation_triple():
    Z, B = conj_yd(Z3)
    assert hexagon_check(Z, Z, Z, B).ok


def test_yang_baxter_on_s3_conjugation():
    Z, B = conj_yd(S3)
    rep = yang_baxter_check(Z, Z, Z, B)
    assert rep.ok and rep.info["triple_dim"] == 216


def test_yang_baxter_with_unit_in_triple():
    Z, B = conj_yd(S3)
    U = yd_unit(B)
    assert yang_baxter_check(Z, U, Z, B).ok
    assert yang_baxter_check(U, Z, Z, B).ok


def test_yang_baxter_fails_for_mutated_action():
    Z, B = conj_yd(S3)
    n = 6
    g = non_central(S3)
    # replace the conjugation by left multiplication x ↦ g⁻¹x on one generator's column block
    act = Z.action_total
    for x in S3.elements():
        act = act.with_entry(S3.conj(x, g), x * n + g, 0).with_entry(S3.mul(S3.inv(g), x), x * n + g, 1)
    broken = replace(Z, action_total=act)
    assert not yang_baxter_check(broken, broken, broken, B).ok


# -- weak-center components -------------------------------------------------------------

def test_center_embedding_on_comodule_family():
    Z, B = conj_yd(S3)
    R = regular_h_comodule(B)
    U = unit_h_comodule(B)
    rep = check_center_embedding(Z, [U, R], B, morphisms=[(B.eta, U, R), (LinMap.identity(6).scale(2), R, R)])
    assert rep.ok, rep.failed()


def test_theta_unit_is_identity():
    Z, B = conj_yd(Z3)
    assert check_center_embedding(Z, [], B)["theta_unit"].passed


# -- left YD ---------------------------------------------------------------------------

def test_regular_left_yd_passes_and_kappa_fixes_coproduct():
    Z, B = regular_left_yd(S3)
    assert verify_left_yd(Z, B).ok
    kappa = kappa_prebraiding(Z, Z, B)
    S = cotensor(Z.space.rho, Z.space.lam, B.base)
    d = LinMap(S.dim, 6, tuple(S.coords(c) for c in B.total.delta.columns), B.field)
    assert kappa @ d == d


def test_broken_left_action_fails():
    Z, B = regular_left_yd(cyclic_group(2))
    broken = LeftYDModule(Z.space, Z.action_total.scale(2), Z.delta)
    assert not verify_left_yd(broken, B).ok


def test_regular_adjoint_coaction_is_trivial():
    Dd, B = regular_bcc(cyclic_group(2))
    assert Dd.yd.delta.columns == ({0: 1}, {1: 1})  # g ↦ e⊗g


# -- BCCs ---------------------------------------------------------------------------------

def test_swap_action_groupoid_bcc():
    Dd, B = action_groupoid_bcc(swap_gset())
    assert verify_bcc(Dd, B).ok


@pytest.mark.parametrize("G", [Z3, S3], ids=["Z3", "S3"])
def test_conjugation_bcc(G):
    Dd, B = conjugation_bcc(G)
    rep = verify_bcc(Dd, B)
    assert rep.ok, rep.failed()
    assert bcc_prebraiding_fixes_coproduct(Dd, B) is None


def test_conjugation_gset_set_level_holds():
    X = conjugation_gset(S3)
    assert set_level_yd(S3.table, S3.inverse, X.act, X.phi) == []
    assert set_level_stabilizer(X.act, X.phi) == []
    action_groupoid_bcc(X)  # no SetLevelViolation


def test_grouplike_conjugation_fails_comodule_coalgebra():
    # linearizing X = G with φ = id gives δ(x) = x⊗x, and x·x ≠ x breaks the coalgebra compatibility
    Dd, B = action_groupoid_bcc(conjugation_gset(Z3))
    rep = verify_bcc(Dd, B)
    assert rep["yd_module"].passed
    assert not rep["comodule_coalgebra"].passed


def test_phi_outside_stabilizer_raises():
    X = regular_gset(Z3, [1, 1, 1])  # φ ≡ g with g ≠ e: central, so YD holds, but x·g ≠ x
    assert set_level_yd(Z3.table, Z3.inverse, X.act, X.phi) == []
    assert set_level_stabilizer(X.act, X.phi) == [0, 1, 2]
    with pytest.raises(SetLevelViolation) as err:
        action_groupoid_bcc(X)
    assert err.value.where == (0,)


def test_regular_bcc_on_s3():
    Dd, B = regular_bcc(S3)
    assert verify_bcc(Dd, B).ok
    assert bcc_prebraiding_fixes_coproduct(Dd, B) is None


def test_unit_bcc_passes():
    from bicoalg.examples import unit_bcc
    for B in (group_hopf(S3), coenveloping_bico(grouplike(2))):
        rep = verify_bcc(unit_bcc(B), B)
        assert rep.ok, rep.failed()


def test_non_cocommutative_bcc_candidate_fails_braiding():
    # k^S3 with the trivial action and diagonal coaction e_x ↦ e⊗e_x is not braided cocommutative
    from bicoalg.examples import dual_group_hopf
    from bicoalg.yd import bcc_from_parts
    B = group_hopf(S3)
    D = dual_group_hopf(S3)
    act = tensor_map(D.identity(), B.total.counit)
    delta = LinMap(36, 6, tuple({S3.identity * 6 + x: 1} for x in range(6)), B.field)
    rep = verify_bcc(bcc_from_parts(D, D.counit, act, delta, B), B)
    assert not rep["braided_cocommutative"].passed
    assert rep["comodule_coalgebra"].passed
