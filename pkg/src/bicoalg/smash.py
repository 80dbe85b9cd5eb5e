"""Smash coproducts D⋊H and the scalar extension of a bicoalgebroid by a BCC."""
from __future__ import annotations

from dataclasses import dataclass

from .bicoalgebroid import Bicoalgebroid, HComodule
from .coalgebra import Coalgebra, cotensor, verify_coalgebra
from .exactlin import LinMap, Subspace, tensor_map
from .report import CheckReport, maps_differ
from .tensor import Evaluator, NotInCotensorDomain
from .yd import BCCData, module_evaluator, require_bcc


@dataclass(frozen=True, eq=False)
class SmashCoproduct:
    """D⋊H on the basis of D ⊠_C H; ``sub`` is that cotensor inside D⊗H."""

    coalgebra: Coalgebra
    sub: Subspace


def _smash_evaluator(D: Coalgebra, comodule: HComodule, B: Bicoalgebroid, S: Subspace) -> Evaluator:
    ev = B.ev.extend({"D": D.dim, "S": S.dim})
    ev.register("deltaD", D.delta, "D", "DD")
    ev.register("epsD", D.counit, "D", "")
    ev.register("dD", comodule.delta, "D", "HD")
    ev.register("incS", S.inclusion, "S", "DH")
    ev.register("crdS", S.reader, "DH", "S", S)
    return ev


def smash_coproduct(D: Coalgebra, comodule: HComodule, B: Bicoalgebroid,
                    augmentation: LinMap | None = None) -> SmashCoproduct:
    """Δ(d⋊h) = d_(1) ⋊ d_(2)⟨−1⟩h_(1) ⊗ d_(2)⟨0⟩ ⋊ h_(2), ε(d⋊h) = ε(d) ε_H(h).

    ``comodule`` is the H-comodule structure on D.  The underlying space is
    D ⊠_C H for the right coaction of ``comodule.space``.
    """
    F = B.field
    S = cotensor(comodule.space.rho, B.lam_L, B.base)
    ev = _smash_evaluator(D, comodule, B, S)
    if augmentation is not None:
        ev.register("pi", augmentation, "D", "C")
        eps_stages = ("incS", "pi eps", "epsC")
    else:
        eps_stages = ("incS", "epsD eps")
    one = F.coerce(1)
    dcols, ecols = [], []
    for i in range(S.dim):
        e = {(i,): one}
        try:
            v = ev.eval(e, "S", "incS", "deltaD delta", "D dD H H", "@0,1,3,2,4", "D mu D H", "crdS crdS")
        except NotInCotensorDomain as err:
            raise NotInCotensorDomain(err.op, err.residual, {"basis": i}) from None
        dcols.append(ev.to_flat(v, "SS"))
        ecols.append(ev.to_flat(ev.eval(e, "S", *eps_stages), ""))
    k = S.dim
    C = Coalgebra(k, LinMap(k * k, k, tuple(dcols), F), LinMap(1, k, tuple(ecols), F), f"{D.label}⋊{B.label}")
    return SmashCoproduct(C, S)


def scalar_extension(Dd: BCCData, B: Bicoalgebroid, check: bool = True) -> Bicoalgebroid:
    """The bicoalgebroid D⋊H over D.

    μ̃(d⋊h ⊠ d'⋊h') = d ε_C(π(d')) ⋊ hh', η̃(d) = d_(1) ⋊ η(π(d_(2))),
    α̃(d⋊h) = d ε_H(h), β̃(d⋊h) = d ◁ h.  With ``check`` the input must pass
    :func:`verify_bcc` (raises BCCViolation otherwise).
    """
    if check:
        require_bcc(Dd, B)
    F = B.field
    D = Dd.coalgebra
    sm = smash_coproduct(D, Dd.yd.comodule, B, Dd.augmentation)
    S = sm.sub
    k = S.dim
    ev = module_evaluator(B, D=Dd.yd).extend({"S": k})
    ev.register("deltaD", D.delta, "D", "DD")
    ev.register("pi", Dd.augmentation, "D", "C")
    ev.register("incS", S.inclusion, "S", "DH")
    ev.register("crdS", S.reader, "DH", "S", S)
    ev.register("rdS", S.reader, "DH", "S")
    ev.register("mutot", B.mu_total, "HH", "H")
    one = F.coerce(1)

    acols, bcols = [], []
    for i in range(k):
        e = {(i,): one}
        acols.append(ev.to_flat(ev.eval(e, "S", "incS", "D eps"), "D"))
        bcols.append(ev.to_flat(ev.eval(e, "S", "incS", "actD"), "D"))
    alpha = LinMap(D.dim, k, tuple(acols), F)
    beta = LinMap(D.dim, k, tuple(bcols), F)
    eta_cols = []
    for d in range(D.dim):
        v = ev.eval({(d,): one}, "D", "deltaD", "D pi", "D eta", "crdS")
        eta_cols.append(ev.to_flat(v, "S"))
    eta = LinMap(k, D.dim, tuple(eta_cols), F)

    # total extension of μ̃ through the ambient (D⊗H)⊗(D⊗H); only its restriction matters
    mu_stages = ("incS incS", "D H pi H", "D H epsC H", "D mutot", "rdS")
    mu_cols = []
    for i in range(k):
        for j in range(k):
            v = ev.eval({(i, j): one}, "SS", *mu_stages)
            mu_cols.append(ev.to_flat(v, "S"))
    mu_total = LinMap(k, k * k, tuple(mu_cols), F)
    out = Bicoalgebroid(D, sm.coalgebra, alpha, beta, mu_total, eta, f"{D.label}⋊{B.label}")

    # membership-checked evaluation on the cotensor basis must agree with the extension
    checked = ("incS incS", "D H pi H", "D H epsC H", "D mu", "crdS")
    for i, t in out.box_basis():
        try:
            a = ev.eval(t, "SS", *checked)
        except NotInCotensorDomain as err:
            raise NotInCotensorDomain(err.op, err.residual, {"box_basis": i}) from None
        if a != out.ev.eval(t, "HH", "mu"):
            raise ArithmeticError(f"μ̃ extension disagrees with the checked product on box basis {i}")
    return out


def smash_comodule_correspondence(X: HComodule, coaction_D: LinMap, Dd: BCCData, B: Bicoalgebroid) -> CheckReport:
    """δ_{D⋊H} = (D ⊗ δ_X) ∘ δ_D is a D⋊H-coaction, and splitting it returns (δ_D, δ_X)."""
    F = B.field
    D = Dd.coalgebra
    sm = smash_coproduct(D, Dd.yd.comodule, B, Dd.augmentation)
    S = sm.sub
    m = X.dim
    I_x = LinMap.identity(m, F)
    rep = CheckReport(info={"dim": m, "smash_dim": S.dim})
    comp = tensor_map(D.identity(), X.delta) @ coaction_D  # X -> D⊗H⊗X
    inc = tensor_map(S.inclusion, I_x)
    cols = []
    for j, col in enumerate(comp.columns):
        v = {}
        for key, x in col.items():
            dh, xi = divmod(key, m)
            v.setdefault(xi, {})[dh] = x
        out = {}
        for xi, sl in v.items():
            if not S.contains(sl):
                rep.add("corestriction", False, {"basis": j, "error": "NotInSubspace"})
                return rep
            for s, y in S.coords(sl).items():
                out[s * m + xi] = y
        cols.append(out)
    rep.add("corestriction", True)
    delta = LinMap(S.dim * m, m, tuple(cols), F)
    Sm = sm.coalgebra
    rep.add_parts("coassociative", [
        lambda: maps_differ(tensor_map(Sm.delta, I_x) @ delta, tensor_map(Sm.identity(), delta) @ delta)])
    rep.add_parts("counital", [lambda: maps_differ(tensor_map(Sm.counit, I_x) @ delta, I_x)])
    split_d = tensor_map(tensor_map(D.identity(), B.total.counit), I_x) @ inc @ delta
    split_h = tensor_map(tensor_map(D.counit, B.total.identity()), I_x) @ inc @ delta
    rep.add_parts("round_trip", [
        lambda: maps_differ(split_d, coaction_D, "D"),
        lambda: maps_differ(split_h, X.delta, "H")])
    return rep


def _perm(bij, F) -> LinMap:
    one = F.coerce(1)
    return LinMap(len(bij), len(bij), tuple({b: one} for b in bij), F)


def compare_bicoalgebroids(B1: Bicoalgebroid, B2: Bicoalgebroid, bijection=None,
                           base_bijection=None) -> CheckReport:
    """Entry-wise equality of all structure maps after relabelling bases.

    ``bijection[i]`` is the B2 index of total basis vector i of B1.  μ is
    compared on the cotensor only.
    """
    rep = CheckReport()
    if (B1.n, B1.c) != (B2.n, B2.c):
        rep.add("dimensions", False, {"detail": f"{(B1.n, B1.c)} vs {(B2.n, B2.c)}"})
        return rep
    rep.add("dimensions", True)
    F = B1.field
    P = _perm(bijection if bijection is not None else range(B1.n), F)
    Q = _perm(base_bijection if base_bijection is not None else range(B1.c), F)
    PP = tensor_map(P, P)
    rep.add_parts("base", [lambda: maps_differ(tensor_map(Q, Q) @ B1.base.delta, B2.base.delta @ Q, "delta"),
                           lambda: maps_differ(B1.base.counit, B2.base.counit @ Q, "counit")])
    rep.add_parts("delta", [lambda: maps_differ(PP @ B1.total.delta, B2.total.delta @ P)])
    rep.add_parts("counit", [lambda: maps_differ(B1.total.counit, B2.total.counit @ P)])
    rep.add_parts("alpha", [lambda: maps_differ(Q @ B1.alpha, B2.alpha @ P)])
    rep.add_parts("beta", [lambda: maps_differ(Q @ B1.beta, B2.beta @ P)])
    rep.add_parts("eta", [lambda: maps_differ(P @ B1.eta, B2.eta @ Q)])

    def mu():
        moved = PP @ B1.box.inclusion
        for j, col in enumerate(moved.columns):
            if not B2.box.contains(col):
                return {"basis": j, "detail": "cotensor basis not mapped into the other cotensor"}
        if B1.box.dim != B2.box.dim:
            return {"detail": f"cotensor dims {B1.box.dim} vs {B2.box.dim}"}
        return maps_differ(P @ B1.mu, B2.mu_total @ moved)

    rep.add_parts("mu", [mu])
    return rep


def verify_smash_coproduct(sm: SmashCoproduct) -> CheckReport:
    return verify_coalgebra(sm.coalgebra)


__all__ = ["SmashCoproduct", "compare_bicoalgebroids", "scalar_extension", "smash_comodule_correspondence",
           "smash_coproduct", "verify_smash_coproduct"]
