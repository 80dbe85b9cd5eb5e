"""Right modules over a bicoalgebroid, Yetter-Drinfeld modules and braided cocommutative coalgebras."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .bicoalgebroid import (Bicoalgebroid, HComodule, _report_witness, h_comodule_tensor, kernel_within,
                            random_extension, unit_h_comodule, verify_h_comodule)
from .coalgebra import (Bicomodule, Coalgebra, CocenterObstruction, cotensor, factor_through_cocenter,
                        regular_bicomodule, verify_bicomodule, verify_coalgebra, verify_coalgebra_map,
                        verify_left_comodule, verify_right_comodule)
from .exactlin import LinMap, NotInSubspace, Subspace, corestrict_map, tensor_map
from .report import CheckReport, equation, maps_differ
from .tensor import Evaluator, NotInCotensorDomain


class BCCViolation(ValueError):
    """Input data is not a braided cocommutative coalgebra."""

    def __init__(self, report: CheckReport):
        names = ", ".join(c.name for c in report.failed())
        super().__init__(f"not a braided cocommutative coalgebra: {names}")
        self.report = report


@dataclass(frozen=True, eq=False)
class RightHModule:
    """A right C-comodule X with ``action_total: X⊗H -> X``, used only on X ⊠_C H."""

    dim: int
    rho: LinMap
    action_total: LinMap
    label: str = "X"

    def domain(self, B: Bicoalgebroid) -> Subspace:
        return cotensor(self.rho, B.lam_L, B.base)


@dataclass(frozen=True, eq=False)
class YDModule:
    """C-bicomodule ``space`` with a right H-action and a left H-coaction ``delta: Z -> H⊗Z``.

    ``sub`` and ``factors`` are set for cotensor products and record the
    embedding Z ⊠_C Z' ⊂ Z ⊗ Z'.
    """

    space: Bicomodule
    action_total: LinMap
    delta: LinMap
    label: str = "Z"
    sub: Subspace | None = None
    factors: tuple = ()

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def comodule(self) -> HComodule:
        return HComodule(self.space, self.delta, self.label)

    @property
    def module(self) -> RightHModule:
        return RightHModule(self.space.dim, self.space.rho, self.action_total, self.label)

    @cached_property
    def _domains(self) -> dict:
        return {}

    def domain(self, B: Bicoalgebroid) -> Subspace:
        got = self._domains.get(id(B))
        if got is None:
            got = cotensor(self.space.rho, B.lam_L, B.base)
            self._domains[id(B)] = got
        return got


@dataclass(frozen=True, eq=False)
class BCCData:
    """A coalgebra D with augmentation π: D -> C and a YD structure whose C-coactions are induced by π."""

    coalgebra: Coalgebra
    augmentation: LinMap
    yd: YDModule
    label: str = "D"

    @property
    def dim(self) -> int:
        return self.coalgebra.dim


def module_evaluator(B: Bicoalgebroid, **objects) -> Evaluator:
    """B's evaluator extended by one leg type per object.

    For a leg ``k`` this registers ``rho<k>``, and when present ``lam<k>``,
    ``d<k>`` (H-coaction) and ``act<k>`` (action, domain X ⊠_C H).
    """
    ev = B.ev.extend({k: v.dim for k, v in objects.items()})
    for k, v in objects.items():
        if isinstance(v, RightHModule):
            ev.register(f"rho{k}", v.rho, k, k + "C")
            ev.register(f"act{k}", v.action_total, k + "H", k, v.domain(B))
            continue
        space = v.space
        ev.register(f"rho{k}", space.rho, k, k + "C")
        ev.register(f"lam{k}", space.lam, k, "C" + k)
        ev.register(f"d{k}", v.delta, k, "H" + k)
        if isinstance(v, YDModule):
            ev.register(f"act{k}", v.action_total, k + "H", k, v.domain(B))
    return ev


def _basis_of(ev: Evaluator, S: Subspace, legs: str):
    one = ev.field.coerce(1)
    for i in range(S.dim):
        yield i, ev.embed(S, {i: one}, legs)


def _eq(ev, items, legs, lhs, rhs, part=None):
    return equation(items, lambda t: ev.eval(t, legs, *lhs), lambda t: ev.eval(t, legs, *rhs), ev.field, part)


def module_triples(ev: Evaluator, X, B: Bicoalgebroid, leg: str = "X") -> Subspace:
    """X ⊠_C H ⊠_C H inside X⊗H⊗H."""
    dom = X.domain(B)
    gens = [{k + (h,): x for k, x in t.items()} for _, t in _basis_of(ev, dom, leg + "H") for h in range(B.n)]
    return kernel_within(ev, gens, leg + "HH", (f"{leg} rhoL H",), (f"{leg} H lamL",))


# -- right modules --------------------------------------------------------------------

def induced_left_coaction(X, B: Bicoalgebroid) -> LinMap:
    """τ(x) = β(η(x_[1])_(2)) ⊗ x_[0] ◁ η(x_[1])_(1)."""
    M = X.module if isinstance(X, YDModule) else X
    ev = module_evaluator(B, X=M)
    F = B.field
    one = F.coerce(1)
    cols = []
    for i in range(M.dim):
        t = ev.eval({(i,): one}, "X", "rhoX", "X eta", "X delta", "X H beta", "actX C", "tw")
        cols.append(ev.to_flat(t, "CX"))
    return LinMap(B.c * M.dim, M.dim, tuple(cols), F)


def action_bicomodule(X, tau: LinMap, B: Bicoalgebroid):
    """X ⊠_C H as a bicomodule: τ on the X leg and ρ_R on the H leg.  Returns ``(bicomodule, domain)``."""
    M = X.module if isinstance(X, YDModule) else X
    dom = M.domain(B)
    ev = module_evaluator(B, X=M).extend({"S": dom.dim})
    ev.register("tauX", tau, "X", "CX")
    ev.register("crdS", dom.reader, "XH", "S", dom)
    F = B.field
    lcols, rcols = [], []
    for _, t in _basis_of(ev, dom, "XH"):
        lcols.append(ev.to_flat(ev.eval(t, "XH", "tauX H", "C crdS"), "CS"))
        rcols.append(ev.to_flat(ev.eval(t, "XH", "X rhoR", "crdS C"), "SC"))
    k = dom.dim
    bic = Bicomodule(k, B.base, LinMap(B.c * k, k, tuple(lcols), F), LinMap(k * B.c, k, tuple(rcols), F))
    return bic, dom


def verify_right_module(X, B: Bicoalgebroid) -> CheckReport:
    """Comodule-map property, associativity, unit, and the three consequences for the induced τ."""
    M = X.module if isinstance(X, YDModule) else X
    ev = module_evaluator(B, X=M)
    dom = M.domain(B)
    xb = list(_basis_of(ev, dom, "XH"))
    F = B.field
    one = F.coerce(1)
    basis = [(i, {(i,): one}) for i in range(M.dim)]
    rep = CheckReport(info={"dim": M.dim, "cotensor_dim": dom.dim})
    rep.add_parts("right_comodule", [lambda: _report_witness(
        _right_comodule_report(M, B), "rho")])
    rep.add_parts("action_right_colinear", [
        lambda: _eq(ev, xb, "XH", ("actX", "rhoX"), ("X rhoL", "actX C"))])

    def assoc():
        T = module_triples(ev, M, B)
        items = _basis_of(ev, T, "XHH")
        return _eq(ev, items, "XHH", ("actX H", "actX"), ("X mu", "actX"))

    rep.add_parts("action_associative", [assoc])
    rep.add_parts("action_unit", [
        lambda: equation(basis, lambda t: ev.eval(t, "X", "rhoX", "X eta", "actX"), lambda t: t, F)])
    if not rep.ok:
        return rep

    try:
        tau = induced_left_coaction(M, B)
    except NotInCotensorDomain as e:
        rep.add("induced_coaction", False, {"error": type(e).__name__, "detail": str(e)})
        return rep
    rep.add_parts("induced_coaction", [
        lambda: _report_witness(verify_left_comodule(tau, B.base, M.dim), "tau")])
    rep.add_parts("induced_bicomodule", [
        lambda: _report_witness(verify_bicomodule(Bicomodule(M.dim, B.base, tau, M.rho)), "bicomodule")])
    ev2 = ev.extend()
    ev2.register("tauX", tau, "X", "CX")
    rep.add_parts("action_left_colinear", [
        lambda: _eq(ev2, xb, "XH", ("actX", "tauX"), ("X lamR", "tw H", "C actX"))])

    def factor():
        bic, _ = action_bicomodule(M, tau, B)
        try:
            factor_through_cocenter(M.action_total @ dom.inclusion, bic)
        except CocenterObstruction as e:
            return {"error": "CocenterObstruction", "basis": e.basis}
        return None

    rep.add_parts("action_factors_through_cocenter", [factor])
    return rep


def _right_comodule_report(M: RightHModule, B: Bicoalgebroid) -> CheckReport:
    return verify_right_comodule(M.rho, B.base, M.dim)


# -- Yetter-Drinfeld modules ---------------------------------------------------------

def yd_equation(Z: YDModule, B: Bicoalgebroid, ev: Evaluator | None = None, leg: str = "Z") -> dict | None:
    """d⟨−1⟩h_(1) ⊠ d⟨0⟩◁h_(2) = h_(2)(d◁h_(1))⟨−1⟩ ⊠ (d◁h_(1))⟨0⟩ on every basis vector of Z ⊠_C H."""
    ev = ev or module_evaluator(B, Z=Z)
    z = leg
    items = _basis_of(ev, Z.domain(B), z + "H")
    # μ first, then the action: the middle stage is only cotensor-valued after μ has absorbed its legs
    lhs = (f"d{z} delta", "@0,2,1,3", f"mu {z} H", f"H act{z}")
    rhs = (f"{z} delta", f"act{z} H", f"d{z} H", "@2,0,1", f"mu {z}")
    return _eq(ev, items, z + "H", lhs, rhs)


def verify_yd(Z: YDModule, B: Bicoalgebroid, seed: int | None = None) -> CheckReport:
    """Module, comodule, induced-coaction agreement and the YD compatibility.

    With ``seed`` set, the action-dependent checks are re-run on a second
    random total extension of the action and must give identical results.
    """
    rep = CheckReport(info={"dim": Z.dim})
    rep.add_parts("right_module", [lambda: _report_witness(verify_right_module(Z, B), "module")])
    rep.add_parts("h_comodule", [lambda: _report_witness(verify_h_comodule(Z.comodule, B), "comodule")])
    if not rep.ok:
        return rep
    rep.add_parts("left_coaction_induced", [
        lambda: maps_differ(induced_left_coaction(Z, B), Z.space.lam)])
    rep.add_parts("yd_compatibility", [lambda: yd_equation(Z, B)])
    if seed is not None:
        dom = Z.domain(B)
        Z2 = YDModule(Z.space, random_extension(Z.action_total, dom, random.Random(seed)), Z.delta, Z.label)
        second = CheckReport()
        second.add_parts("right_module", [lambda: _report_witness(verify_right_module(Z2, B), "module")])
        second.add_parts("yd_compatibility", [lambda: yd_equation(Z2, B)])

        def same():
            for c in second:
                if (c.passed, c.witness) != (rep[c.name].passed, rep[c.name].witness):
                    return {"part": c.name, "second": c.to_json()}
            return None
        rep.add_parts("extension_independence", [same])
    return rep


def yd_unit(B: Bicoalgebroid) -> YDModule:
    """C with c◁h = ε(c) β(h) and the unit H-coaction.

    On C ⊠_C H the product c ε(h) equals ε(c) α(h); the β form is the one that
    is a right C-comodule map, and the two agree whenever α = β there (C = k).
    """
    act = tensor_map(B.base.counit, B.beta)
    u = unit_h_comodule(B)
    return YDModule(regular_bicomodule(B.base), act, u.delta, "C")


def yd_tensor(Z: YDModule, W: YDModule, B: Bicoalgebroid) -> YDModule:
    """Z ⊠_C W with (z⊠w)◁h = z◁h_(2) ⊠ w◁h_(1) and δ(z⊠w) = z⟨−1⟩w⟨−1⟩ ⊗ z⟨0⟩ ⊗ w⟨0⟩."""
    F = B.field
    T = h_comodule_tensor(Z.comodule, W.comodule, B)
    S = T.sub
    k = S.dim
    dom = cotensor(T.space.rho, B.lam_L, B.base)
    ev = module_evaluator(B, Z=Z, W=W).extend({"S": k})
    ev.register("incS", S.inclusion, "S", "ZW")
    ev.register("crdS", S.reader, "ZW", "S", S)
    cols = []
    for _, t in _basis_of(ev, dom, "SH"):
        v = ev.eval(t, "SH", "incS H", "Z W delta", "@0,3,1,2", "actZ actW", "crdS")
        cols.append(ev.to_flat(v, "S"))
    on_dom = LinMap(k, dom.dim, tuple(cols), F)
    total = on_dom @ dom.reader
    return YDModule(T.space, total, T.delta, f"{Z.label}⊠{W.label}", S, (Z, W))


def tau_stages(legs: str, p: int) -> tuple:
    """Stages applying z⊗z' -> z'⟨0⟩ ⊠ z◁z'⟨−1⟩ to legs p, p+1 of ``legs``."""
    a, b = legs[p], legs[p + 1]
    pre, post = legs[:p], legs[p + 2:]

    def st(*toks):
        return " ".join([*pre, *toks, *post])

    n = len(legs) + 1
    order = list(range(p)) + [p + 2, p, p + 1] + list(range(p + 3, n))
    return (st(a, f"d{b}"), "@" + ",".join(map(str, order)), st(b, f"act{a}"))


def prebraiding(Z: YDModule, W, B: Bicoalgebroid) -> LinMap:
    """τ_{Z,W}: Z ⊠_C W -> W ⊠_C Z, z⊗w ↦ w⟨0⟩ ⊠ z ◁ w⟨−1⟩.

    ``W`` may be any H-comodule; then this is the weak-center component θ_W.
    """
    F = B.field
    src = cotensor(Z.space.rho, W.space.lam, B.base)
    tgt = cotensor(W.space.rho, Z.space.lam, B.base)
    ev = module_evaluator(B, Z=Z, W=W)
    cols = []
    for j, t in _basis_of(ev, src, "ZW"):
        v = ev.to_flat(ev.eval(t, "ZW", *tau_stages("ZW", 0)), "WZ")
        if not tgt.contains(v):
            raise NotInSubspace(f"τ of basis {j} leaves the target cotensor", column=j, vector=v)
        cols.append(tgt.coords(v))
    return LinMap(tgt.dim, src.dim, tuple(cols), F)


theta_component = prebraiding


def is_yd_morphism(f: LinMap, Z1: YDModule, Z2: YDModule, B: Bicoalgebroid) -> CheckReport:
    """f commutes with both C-coactions, the H-coaction and the action."""
    I_c = B.base.identity()
    rep = CheckReport()
    rep.add_parts("left_colinear", [lambda: maps_differ(Z2.space.lam @ f, tensor_map(I_c, f) @ Z1.space.lam)])
    rep.add_parts("right_colinear", [lambda: maps_differ(Z2.space.rho @ f, tensor_map(f, I_c) @ Z1.space.rho)])
    rep.add_parts("h_colinear", [
        lambda: maps_differ(Z2.delta @ f, tensor_map(B.total.identity(), f) @ Z1.delta)])
    ev = module_evaluator(B, X=Z1, Y=Z2)
    ev.register("f", f, "X", "Y")
    rep.add_parts("h_linear", [
        lambda: _eq(ev, _basis_of(ev, Z1.domain(B), "XH"), "XH", ("actX", "f"), ("f H", "actY"))])
    return rep


def _triple_space(ev: Evaluator, legs: str, B: Bicoalgebroid, objs: dict) -> Subspace:
    a, b, c = legs
    pair = cotensor(objs[a].space.rho, objs[b].space.lam, B.base)
    one = ev.field.coerce(1)
    gens = []
    for i in range(pair.dim):
        t = ev.embed(pair, {i: one}, a + b)
        for z in range(objs[c].dim):
            gens.append({k + (z,): x for k, x in t.items()})
    return kernel_within(ev, gens, legs, (f"{a} rho{b} {c}",), (f"{a} {b} lam{c}",))


def yang_baxter_check(Z1: YDModule, Z2: YDModule, Z3: YDModule, B: Bicoalgebroid) -> CheckReport:
    """(τ⊠id)(id⊠τ)(τ⊠id) = (id⊠τ)(τ⊠id)(id⊠τ) on Z1 ⊠ Z2 ⊠ Z3."""
    objs = {"X": Z1, "Y": Z2, "W": Z3}
    ev = module_evaluator(B, **objs)
    T = _triple_space(ev, "XYW", B, objs)
    rep = CheckReport(info={"triple_dim": T.dim})

    def run(t, first):
        legs = "XYW"
        for p in ((0, 1, 0) if first else (1, 0, 1)):
            t, legs = ev.run(t, legs, *tau_stages(legs, p))
        return t

    rep.add_parts("yang_baxter", [lambda: equation(
        _basis_of(ev, T, "XYW"), lambda t: run(t, True), lambda t: run(t, False), B.field)])
    return rep


def hexagon_check(Z: YDModule, X, Y, B: Bicoalgebroid) -> CheckReport:
    """τ_{Z, X⊠Y} = (X ⊠ τ_{Z,Y}) ∘ (τ_{Z,X} ⊠ Y) on Z ⊠ X ⊠ Y.

    ``X`` and ``Y`` are YD modules or H-comodules; this is the weak-center
    condition for θ when they are comodules.
    """
    if isinstance(X, YDModule) and isinstance(Y, YDModule):
        P = yd_tensor(X, Y, B)
    else:
        P = h_comodule_tensor(_as_comodule(X), _as_comodule(Y), B)
    objs = {"Z": Z, "X": X, "Y": Y}
    ev = module_evaluator(B, Z=Z, X=X, Y=Y, P=P)
    ev.register("incP", P.sub.inclusion, "P", "XY")
    ev.register("crdP", P.sub.reader, "XY", "P", P.sub)
    T = _triple_space(ev, "ZXY", B, objs)
    rep = CheckReport(info={"triple_dim": T.dim})

    def lhs(t):
        t = ev.eval(t, "ZXY", "Z crdP")
        t = ev.eval(t, "ZP", *tau_stages("ZP", 0))
        return ev.eval(t, "PZ", "incP Z")

    def rhs(t):
        t, legs = ev.run(t, "ZXY", *tau_stages("ZXY", 0))
        return ev.run(t, legs, *tau_stages(legs, 1))[0]

    rep.add_parts("hexagon", [lambda: equation(_basis_of(ev, T, "ZXY"), lhs, rhs, B.field)])
    return rep


def _as_comodule(X) -> HComodule:
    return X.comodule if isinstance(X, YDModule) else X


def check_center_embedding(Z: YDModule, objects: list, B: Bicoalgebroid, morphisms: list = ()) -> CheckReport:
    """θ_X = prebraiding against H-comodules: multiplicativity on pairs, θ_C = id, naturality.

    ``morphisms`` holds triples ``(f, X, Y)`` of H-comodule maps f: X -> Y.
    """
    F = B.field
    rep = CheckReport(info={"objects": len(objects)})

    def pairs():
        for i, X in enumerate(objects):
            for j, Y in enumerate(objects):
                r = hexagon_check(Z, X, Y, B)
                if not r.ok:
                    return {"pair": [i, j], **r.checks[0].witness}
        return None

    rep.add_parts("theta_multiplicative", [pairs])

    def unit():
        U = unit_h_comodule(B)
        th = prebraiding(Z, U, B)
        src = cotensor(Z.space.rho, U.space.lam, B.base)
        tgt = cotensor(U.space.rho, Z.space.lam, B.base)
        left = tensor_map(B.base.counit, LinMap.identity(Z.dim, F)) @ tgt.inclusion @ th
        right = tensor_map(LinMap.identity(Z.dim, F), B.base.counit) @ src.inclusion
        return maps_differ(left, right)

    rep.add_parts("theta_unit", [unit])

    def natural():
        for n, (f, X, Y) in enumerate(morphisms):
            src_x = cotensor(Z.space.rho, X.space.lam, B.base)
            tgt_y = cotensor(Y.space.rho, Z.space.lam, B.base)
            tx = prebraiding(Z, X, B)
            ty = prebraiding(Z, Y, B)
            I_z = LinMap.identity(Z.dim, F)
            src_y = cotensor(Z.space.rho, Y.space.lam, B.base)
            tgt_x = cotensor(X.space.rho, Z.space.lam, B.base)
            a = tensor_map(f, I_z) @ tgt_x.inclusion @ tx
            b = tgt_y.inclusion @ ty @ _corestrict_cols(tensor_map(I_z, f) @ src_x.inclusion, src_y)
            w = maps_differ(a, b)
            if w:
                return {"morphism": n, **w}
        return None

    rep.add_parts("theta_natural", [natural])
    return rep


def _corestrict_cols(f: LinMap, S: Subspace) -> LinMap:
    return corestrict_map(f, S)


# -- left Yetter-Drinfeld modules -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LeftYDModule:
    """C-bicomodule with a left action ``action_total: H⊗Z -> Z`` (on H ⊠_C Z) and coaction ``delta``."""

    space: Bicomodule
    action_total: LinMap
    delta: LinMap
    label: str = "Z"

    @property
    def dim(self) -> int:
        return self.space.dim

    def domain(self, B: Bicoalgebroid) -> Subspace:
        return cotensor(B.rho_L, self.space.lam, B.base)


def _left_evaluator(B: Bicoalgebroid, **objects) -> Evaluator:
    ev = B.ev.extend({k: v.dim for k, v in objects.items()})
    for k, v in objects.items():
        ev.register(f"rho{k}", v.space.rho, k, k + "C")
        ev.register(f"lam{k}", v.space.lam, k, "C" + k)
        ev.register(f"d{k}", v.delta, k, "H" + k)
        ev.register(f"lact{k}", v.action_total, "H" + k, k, v.domain(B))
    return ev


def verify_left_yd(Z: LeftYDModule, B: Bicoalgebroid) -> CheckReport:
    """Left module laws, the H-comodule laws, and h_(1)z⟨−1⟩ ⊠ h_(2)▷z⟨0⟩ = (h_(1)▷z)⟨−1⟩h_(2) ⊠ (h_(1)▷z)⟨0⟩."""
    F = B.field
    one = F.coerce(1)
    ev = _left_evaluator(B, Z=Z)
    dom = Z.domain(B)
    items = list(_basis_of(ev, dom, "HZ"))
    basis = [(i, {(i,): one}) for i in range(Z.dim)]
    rep = CheckReport(info={"dim": Z.dim})
    rep.add_parts("action_left_colinear", [
        lambda: _eq(ev, items, "HZ", ("lactZ", "lamZ"), ("lamL Z", "C lactZ"))])

    def assoc():
        gens = [{(g,) + k: x for k, x in t.items()} for _, t in items for g in range(B.n)]
        T = kernel_within(ev, gens, "HHZ", ("rhoL H Z",), ("H lamL Z",))
        return _eq(ev, _basis_of(ev, T, "HHZ"), "HHZ", ("H lactZ", "lactZ"), ("mu Z", "lactZ"))

    rep.add_parts("action_associative", [assoc])
    rep.add_parts("action_unit", [lambda: equation(
        basis, lambda t: ev.eval(t, "Z", "lamZ", "eta Z", "lactZ"), lambda t: t, F)])
    rep.add_parts("h_comodule", [lambda: _report_witness(
        verify_h_comodule(HComodule(Z.space, Z.delta, Z.label), B), "comodule")])
    rep.add_parts("yd_compatibility", [lambda: _eq(
        ev, items, "HZ", ("delta dZ", "H tw Z", "mu lactZ"),
        ("delta Z", "H tw", "lactZ H", "dZ H", "H tw", "mu Z"))])
    return rep


def kappa_prebraiding(Zp: LeftYDModule, Z: LeftYDModule, B: Bicoalgebroid) -> LinMap:
    """κ_{Z',Z}(z'⊗z) = z'⟨−1⟩ ▷ z ⊗ z'⟨0⟩ on Z' ⊠_C Z."""
    F = B.field
    src = cotensor(Zp.space.rho, Z.space.lam, B.base)
    tgt = cotensor(Z.space.rho, Zp.space.lam, B.base)
    ev = _left_evaluator(B, Y=Zp, Z=Z)
    cols = []
    for j, t in _basis_of(ev, src, "YZ"):
        v = ev.to_flat(ev.eval(t, "YZ", "dY Z", "@0,2,1", "lactZ Y"), "ZY")
        if not tgt.contains(v):
            raise NotInSubspace(f"κ of basis {j} leaves the target cotensor", column=j, vector=v)
        cols.append(tgt.coords(v))
    return LinMap(tgt.dim, src.dim, tuple(cols), F)


# -- braided cocommutative coalgebras ----------------------------------------------------

def bcc_from_parts(D: Coalgebra, augmentation: LinMap, action_total: LinMap, delta: LinMap,
                   B: Bicoalgebroid) -> BCCData:
    """Assemble BCC data, inducing both C-coactions from the augmentation."""
    I_d = D.identity()
    lam = tensor_map(augmentation, I_d) @ D.delta
    rho = tensor_map(I_d, augmentation) @ D.delta
    space = Bicomodule(D.dim, B.base, lam, rho, D.label)
    return BCCData(D, augmentation, YDModule(space, action_total, delta, D.label), D.label)


def bcc_evaluator(Dd: BCCData, B: Bicoalgebroid) -> Evaluator:
    ev = module_evaluator(B, D=Dd.yd)
    ev.register("deltaD", Dd.coalgebra.delta, "D", "DD")
    ev.register("epsD", Dd.coalgebra.counit, "D", "")
    ev.register("pi", Dd.augmentation, "D", "C")
    return ev


def verify_bcc(Dd: BCCData, B: Bicoalgebroid, seed: int | None = None) -> CheckReport:
    """Preconditions, the module/comodule coalgebra equations, the counit-coaction equation, and braided cocommutativity."""
    D = Dd.coalgebra
    F = B.field
    one = F.coerce(1)
    I_d = D.identity()
    rep = CheckReport(info={"dim": D.dim})
    rep.add_parts("coalgebra", [lambda: _report_witness(verify_coalgebra(D), "D")])
    rep.add_parts("augmentation_coalgebra_map", [
        lambda: _report_witness(verify_coalgebra_map(Dd.augmentation, D, B.base), "augmentation")])
    rep.add_parts("induced_coactions", [
        lambda: maps_differ(Dd.yd.space.lam, tensor_map(Dd.augmentation, I_d) @ D.delta, "left"),
        lambda: maps_differ(Dd.yd.space.rho, tensor_map(I_d, Dd.augmentation) @ D.delta, "right")])
    rep.add_parts("yd_module", [lambda: _report_witness(verify_yd(Dd.yd, B, seed), "yd")])
    if not rep.ok:
        return rep
    ev = bcc_evaluator(Dd, B)
    dom = Dd.yd.domain(B)
    items = list(_basis_of(ev, dom, "DH"))
    basis = [(i, {(i,): one}) for i in range(D.dim)]
    rep.add_parts("module_coalgebra", [
        lambda: _eq(ev, items, "DH", ("actD", "deltaD"), ("deltaD delta", "D tw H", "actD actD"))])
    rep.add_parts("module_counit", [
        lambda: _eq(ev, items, "DH", ("actD", "epsD"), ("epsD eps",))])
    rep.add_parts("comodule_coalgebra", [
        lambda: _eq(ev, basis, "D", ("deltaD", "dD dD", "H tw D", "mu D D"), ("dD", "H deltaD"))])
    rep.add_parts("comodule_counit", [
        lambda: _eq(ev, basis, "D", ("dD", "H pi"),
                    ("pi", "deltaC", "eta C"))])
    rep.add_parts("braided_cocommutative", [
        lambda: _eq(ev, basis, "D", ("deltaD",), ("deltaD", "D dD", "@2,0,1", "D actD"))])
    return rep


def require_bcc(Dd: BCCData, B: Bicoalgebroid) -> None:
    rep = verify_bcc(Dd, B)
    if not rep.ok:
        raise BCCViolation(rep)


def bcc_prebraiding_fixes_coproduct(Dd: BCCData, B: Bicoalgebroid) -> dict | None:
    """τ_{D,D} ∘ Δ_D = Δ_D, with Δ_D corestricted to D ⊠_C D."""
    D = Dd.coalgebra
    S = cotensor(Dd.yd.space.rho, Dd.yd.space.lam, B.base)
    tau = prebraiding(Dd.yd, Dd.yd, B)
    d = corestrict_map(D.delta, S)
    return maps_differ(tau @ d, d)


__all__ = [
    "BCCData", "BCCViolation", "LeftYDModule", "RightHModule", "YDModule", "bcc_from_parts",
    "bcc_prebraiding_fixes_coproduct", "check_center_embedding", "hexagon_check", "induced_left_coaction",
    "is_yd_morphism", "kappa_prebraiding", "module_evaluator", "prebraiding", "require_bcc",
    "tau_stages", "theta_component", "verify_bcc", "verify_left_yd", "verify_right_module", "verify_yd",
    "yang_baxter_check", "yd_equation", "yd_tensor", "yd_unit",
]
