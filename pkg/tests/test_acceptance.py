"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (the lines are printed uncaptured) or directly with
``python3 -m tests.test_acceptance``.
"""
import random
import time
from itertools import product

import pytest

from bicoalg.bicoalgebroid import random_extension, regular_h_comodule, unit_h_comodule, verify_bicoalgebroid
from bicoalg.coalgebra import (
    CocenterObstruction, cocenter, cotensor, factor_through_cocenter, phi_matrix, second_section,
    trivial_coalgebra, unit_isomorphisms, w_spanning_set,
)
from bicoalg.comonadics import g2_map, standard_objects, verify_bicomonad, verify_opmonoidal_comonad
from bicoalg.examples import (
    action_groupoid, action_groupoid_bcc, bigraded_bicomodule, coenveloping_bico, conjugation_bcc,
    conjugation_gset, cyclic_group, divided_power, dual_group_hopf, finite_groupoid_bico, group_hopf, grouplike,
    random_bicomodule, random_gset, regular_gset, swap_gset, symmetric_group, trivial_phi, unit_bcc,
)
from bicoalg.exactlin import Fp, LinMap, Q, tensor_map
from bicoalg.smash import compare_bicoalgebroids, scalar_extension
from bicoalg.yd import (
    BCCData, YDModule, is_yd_morphism, prebraiding, verify_bcc, verify_yd, yang_baxter_check, yd_tensor, yd_unit,
)

from .mutations import INSTANCES, mutate
from .oracles import dense_matmul, equalizer_dim, set_level_yd

S3 = symmetric_group(3)
Z3 = cyclic_group(3)
SEED = 20240601


def line(n: int, ok: bool, detail: str) -> str:
    return f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}"


# -- 1 -------------------------------------------------------------------------------

def criterion_1():
    cases = {
        "kZ2": lambda: group_hopf(cyclic_group(2)),
        "kZ3": lambda: group_hopf(Z3),
        "kS3": lambda: group_hopf(S3),
        "ce_grouplike2": lambda: coenveloping_bico(grouplike(2)),
        "ce_grouplike3": lambda: coenveloping_bico(grouplike(3)),
        "groupoid_Z2_on_2": lambda: finite_groupoid_bico(action_groupoid(swap_gset())),
    }
    t = time.perf_counter()
    bad = [name for name, make in cases.items() if not verify_bicoalgebroid(make()).ok]
    elapsed = time.perf_counter() - t
    return not bad and elapsed < 60, f"{len(cases) - len(bad)}/{len(cases)} instances, {elapsed:.1f}s over Q, failing={bad}"


# -- 2 -------------------------------------------------------------------------------

def criterion_2():
    notes = []
    ok = True
    for F, limit in ((Q, 600), (Fp(101), 60)):
        for name, X in (("Z2_swap", swap_gset()), ("S3_regular", trivial_phi(regular_gset(S3)))):
            t = time.perf_counter()
            Dd, B = action_groupoid_bcc(X, F)
            E = scalar_extension(Dd, B)
            passed = verify_bicoalgebroid(E).ok
            # canonical bijection: x⋊g is the arrow (x, g), index x·|G| + g in both bases
            same = compare_bicoalgebroids(E, finite_groupoid_bico(action_groupoid(X), F)).ok
            elapsed = time.perf_counter() - t
            ok &= passed and same and elapsed < limit
            notes.append(f"{name}/{F}: dim {E.n}, verify={passed}, equal={same}, {elapsed:.1f}s")
    return ok, "; ".join(notes)


# -- 3 -------------------------------------------------------------------------------

def criterion_3():
    notes = []
    ok = True
    for G in (Z3, S3):
        Dd, B = conjugation_bcc(G)
        bcc = verify_bcc(Dd, B).ok
        E = scalar_extension(Dd, B)
        ext = verify_bicoalgebroid(E).ok
        ok &= bcc and ext
        notes.append(f"{G.name}: verify_bcc={bcc}, extension dim {E.n} verify={ext}")
    return ok, "; ".join(notes)


def grouplike_conjugation_note():
    """The same data on the grouplike coalgebra k[G] is YD but not a comonoid there."""
    out = []
    for G in (Z3, S3):
        Dd, B = action_groupoid_bcc(conjugation_gset(G))
        rep = verify_bcc(Dd, B)
        out.append(f"{G.name}: yd_module={rep['yd_module'].passed}, comodule_coalgebra={rep['comodule_coalgebra'].passed}")
    return "; ".join(out)


# -- 4 -------------------------------------------------------------------------------

def criterion_4(count: int = 24):
    rng = random.Random(SEED)
    factored = obstructed = 0
    bad = []
    for k in range(count):
        M = random_bicomodule(rng, max_dim=4, max_base=3)
        q, zeta = cocenter(M)
        Phi = phi_matrix(M).entries
        maps = []
        for _ in range(3):
            n = rng.randint(1, 3)
            if q.dim:
                g = LinMap.from_dense([[rng.randint(-2, 2) for _ in range(q.dim)] for _ in range(n)])
                maps.append(g @ zeta)
            maps.append(LinMap.from_dense([[rng.randint(-2, 2) for _ in range(M.dim)] for _ in range(n)]))
        for f in maps:
            # independent decision: f kills W_M iff the dense product f·Φ vanishes
            kills = all(x == 0 for row in dense_matmul(f.entries, Phi) for x in row)
            fc = tensor_map(f, M.base.identity())
            if kills != all(not fc(w) for w in w_spanning_set(M)):
                bad.append(k)
            if kills:
                f1 = factor_through_cocenter(f, M)
                unique = f1 @ zeta == f and f @ q.section == f1 and f @ second_section(q) == f1
                factored += 1
                if not unique:
                    bad.append(k)
            else:
                try:
                    factor_through_cocenter(f, M)
                    bad.append(k)
                except CocenterObstruction:
                    obstructed += 1
    ok = not bad and count >= 20 and factored and obstructed
    return ok, f"{count} bicomodules, {factored} maps factored uniquely, {obstructed} obstructed, bad={bad}"


# -- 5 -------------------------------------------------------------------------------

GENERATED = [
    trivial_coalgebra(Q), grouplike(1), grouplike(2), grouplike(3), divided_power(2), divided_power(3),
    dual_group_hopf(cyclic_group(2)), dual_group_hopf(Z3), dual_group_hopf(S3),
]


def criterion_5():
    bad = []
    for C in GENERATED:
        S, into, out = unit_isomorphisms(C)
        oracle = equalizer_dim(C.delta.entries, C.delta.entries, C.dim, C.dim, C.dim)
        if not (S.dim == C.dim == oracle and out @ into == C.identity() and into @ out == LinMap.identity(S.dim)):
            bad.append(C.label)
    k = trivial_coalgebra(Q)
    for m, n in product(range(1, 4), repeat=2):
        M = bigraded_bicomodule(k, [(0, 0)] * m)
        N = bigraded_bicomodule(k, [(0, 0)] * n)
        if cotensor(M.rho, N.lam, k).inclusion != LinMap.identity(m * n):
            bad.append(f"k:{m}x{n}")
    return not bad, f"{len(GENERATED)} coalgebras and 9 ground-field pairs, failing={bad}"


# -- 6 -------------------------------------------------------------------------------

def yd_family(G):
    Dd, B = conjugation_bcc(G)
    return B, {
        "conj_grouplike": action_groupoid_bcc(conjugation_gset(G), check_set_level=False)[0].yd,
        "regular": action_groupoid_bcc(trivial_phi(regular_gset(G)))[0].yd,
        "unit": yd_unit(B),
        "conj_dual": Dd.yd,
    }


def criterion_6():
    rng = random.Random(SEED)
    agree = yd_true = 0
    for _ in range(50):
        X = random_gset(rng, max_group=6, max_set=6)
        G = X.group
        set_ok = not set_level_yd(G.table, G.inverse, X.act, X.phi)
        Dd, B = action_groupoid_bcc(X, check_set_level=False)
        agree += verify_yd(Dd.yd, B).ok == set_ok
        yd_true += set_ok
    bad = []
    triples = 0
    for G in (Z3, S3):
        B, fam = yd_family(G)
        bad += [name for name, Z in fam.items() if not verify_yd(Z, B).ok]
        for a, b in product(fam, repeat=2):
            tau = prebraiding(fam[a], fam[b], B)
            src, tgt = yd_tensor(fam[a], fam[b], B), yd_tensor(fam[b], fam[a], B)
            if not is_yd_morphism(tau, src, tgt, B).ok:
                bad.append(f"morphism {G.name}:{a},{b}")
        for a, b, c in product(fam, repeat=3):
            triples += 1
            if not yang_baxter_check(fam[a], fam[b], fam[c], B).ok:
                bad.append(f"YB {G.name}:{a},{b},{c}")
    ok = agree == 50 and not bad
    return ok, f"{agree}/50 G-sets agree ({yd_true} YD at set level), {triples} triples, failing={bad}"


# -- 7 -------------------------------------------------------------------------------

def criterion_7():
    notes = []
    ok = True
    for name, B in (("kZ2", group_hopf(cyclic_group(2))), ("kZ3", group_hopf(Z3)), ("kS3", group_hopf(S3)),
                    ("ce_grouplike2", coenveloping_bico(grouplike(2))),
                    ("ce_dualZ2", coenveloping_bico(dual_group_hopf(cyclic_group(2))))):
        rep = verify_bicomonad(B, standard_objects(B))
        ok &= rep.ok
        notes.append(f"bicomonad {name}={rep.ok}")
    for G in (Z3, S3):
        Dd, B = conjugation_bcc(G)
        rep = verify_opmonoidal_comonad(Dd, B)
        ok &= rep.ok and rep["g2_inverse"].passed
        # G2 against the inverse assembled from plain matrices, both composites
        inv_ok = True
        for X, Y in product([unit_h_comodule(B), regular_h_comodule(B)], repeat=2):
            src, tgt, G2 = g2_map(Dd, X, Y, B)
            collapse = tensor_map(tensor_map(tensor_map(Dd.coalgebra.identity(), LinMap.identity(X.dim)),
                                             B.base.counit @ Dd.augmentation), LinMap.identity(Y.dim))
            inverse = LinMap(src.dim, tgt.dim, tuple(src.coords(collapse(v)) for v in tgt.basis), B.field)
            inv_ok &= inverse @ G2 == LinMap.identity(src.dim) and G2 @ inverse == LinMap.identity(tgt.dim)
        ok &= inv_ok
        notes.append(f"opmonoidal conj{G.name}={rep.ok}, G2 inverse={inv_ok}")
    return ok, "; ".join(notes)


# -- 8 -------------------------------------------------------------------------------

def criterion_8():
    missed = []
    total = 0
    for name, make in INSTANCES.items():
        B = make()
        rng = random.Random(f"{SEED}-{name}")
        for _ in range(20):
            M, desc = mutate(B, rng)
            total += 1
            failed = verify_bicoalgebroid(M, independence=False).failed()
            if not failed or not all(c.witness for c in failed):
                missed.append(f"{name}:{desc}")
    return not missed, f"{total - len(missed)}/{total} mutations caught with a witness, missed={missed}"


# -- 9 -------------------------------------------------------------------------------

def criterion_9():
    bad = []
    runs = 0
    for name, make in INSTANCES.items():
        B = make()
        base = verify_bicoalgebroid(B, independence=False).verdicts()
        for seed in range(3):
            B2 = B.with_mu_total(random_extension(B.mu_total, B.box, random.Random(seed)))
            runs += 1
            if verify_bicoalgebroid(B2, independence=False).verdicts() != base:
                bad.append(f"{name}/mu{seed}")
        if not verify_bicoalgebroid(B, seed=SEED)["extension_independence"].passed:
            bad.append(f"{name}/builtin")
    ce = coenveloping_bico(grouplike(2))
    # over k the action is total; the coenveloping unit BCC has a proper domain C ⊠_C H
    for label, (Dd, B) in (("conjZ3", conjugation_bcc(Z3)), ("conjS3", conjugation_bcc(S3)),
                           ("swap", action_groupoid_bcc(swap_gset())), ("ce_unit", (unit_bcc(ce), ce))):
        base = verify_bcc(Dd, B).verdicts()
        E = scalar_extension(Dd, B)
        dom = Dd.yd.domain(B)
        for seed in range(3):
            act = random_extension(Dd.yd.action_total, dom, random.Random(seed))
            yd2 = YDModule(Dd.yd.space, act, Dd.yd.delta, Dd.yd.label)
            Dd2 = BCCData(Dd.coalgebra, Dd.augmentation, yd2, Dd.label)
            runs += 1
            if verify_bcc(Dd2, B, seed=seed).verdicts() != base:
                bad.append(f"{label}/act{seed}")
            if not compare_bicoalgebroids(E, scalar_extension(Dd2, B)).ok:
                bad.append(f"{label}/extension{seed}")
    return not bad, f"{runs} re-runs with second extensions of μ or ◁, differing={bad}"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
            7: criterion_7, 8: criterion_8, 9: criterion_9}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print("\n" + line(n, ok, detail))
        if n == 3:
            print(f"NOTE 3: grouplike linearization of the same G-set: {grouplike_conjugation_note()}")
    assert ok, detail


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        print(line(n, *fn()), flush=True)
