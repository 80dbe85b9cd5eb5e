"""The comonad G = H ⊠_{C^e} − on C-bicomodules and the opmonoidal comonad D ⊠_C − on H-comodules.

Functors are never built as objects.  Every check evaluates both sides of a
diagram on the basis of a finite-dimensional source space inside its ambient
tensor power, with the usual cotensor-membership checks on every μ and ◁.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import product

from .bicoalgebroid import (Bicoalgebroid, HComodule, ce_left, ce_right_total, cotensor_ce, h_comodule_tensor,
                            kernel_within, regular_h_comodule, unit_h_comodule)
from .coalgebra import Bicomodule, cotensor, regular_bicomodule
from .exactlin import LinMap, NotInSubspace, Subspace, tensor_map, twist
from .report import CheckReport, equation, fmt_vec, maps_differ
from .tensor import Evaluator, NotInCotensorDomain
from .yd import BCCData, bcc_evaluator

BICOMONAD_CHECKS = (
    "xi_well_defined", "xi_is_unit_coaction", "delta_well_defined", "comonad_counit", "comonad_coassociative",
    "kappa_well_defined", "kappa_unit", "kappa_associative",
    "delta_monoidal", "delta_unit", "eps_monoidal", "eps_unit",
)

OPMONOIDAL_CHECKS = (
    "delta_well_defined", "comonad_counit", "comonad_coassociative", "g2_well_defined", "g2_inverse",
    "delta_opmonoidal", "delta_opmonoidal_unit", "eps_opmonoidal", "eps_is_g0",
)


# -- helpers -------------------------------------------------------------------

def corestrict_slices(f: LinMap, S: Subspace, left: int, right: int) -> LinMap:
    """Corestrict f: V -> L⊗A⊗R to L⊗S⊗R for S ⊂ A, one (l, r) slice at a time."""
    a, k = S.ambient_dim, S.dim
    cols = []
    for j, col in enumerate(f.columns):
        groups: dict = {}
        for i, x in col.items():
            l, rest = divmod(i, a * right)
            ai, r = divmod(rest, right)
            groups.setdefault((l, r), {})[ai] = x
        out = {}
        for (l, r), sl in groups.items():
            if not S.contains(sl):
                raise NotInSubspace(f"column {j} leaves the subspace in slice {(l, r)}", column=j, vector=dict(col))
            for s, y in S.coords(sl).items():
                out[(l * k + s) * right + r] = y
        cols.append(out)
    return LinMap(left * k * right, f.cols, tuple(cols), f.field)


def lift(outer: Subspace, inner: Subspace, left: int) -> Subspace:
    """``outer`` ⊂ L ⊗ inner, moved into L ⊗ ambient(inner)."""
    F = inner.field
    inc = tensor_map(LinMap.identity(left, F), inner.inclusion)
    return Subspace.span(left * inner.ambient_dim, [inc(b) for b in outer.basis], F)


def cotensor_bicomodule(X: Bicomodule, Y: Bicomodule) -> tuple[Subspace, Bicomodule]:
    """X ⊠_C Y with the outer coactions, on cotensor coordinates."""
    C = X.base
    F = X.field
    S = cotensor(X.rho, Y.lam, C)
    lam = corestrict_slices(tensor_map(X.lam, LinMap.identity(Y.dim, F)) @ S.inclusion, S, C.dim, 1)
    rho = corestrict_slices(tensor_map(LinMap.identity(X.dim, F), Y.rho) @ S.inclusion, S, 1, C.dim)
    return S, Bicomodule(S.dim, C, lam, rho, f"{X.label}⊠{Y.label}")


def g_subspace(B: Bicoalgebroid, X: Bicomodule) -> Subspace:
    """G(X) = H ⊠_{C^e} X inside H ⊗ X."""
    return cotensor_ce(ce_right_total(B), ce_left(X), B.base)


def g_object(B: Bicoalgebroid, X: Bicomodule) -> tuple[Subspace, Bicomodule]:
    """G(X) with the C-coactions carried by the H leg: α(h_(1)) ⊗ h_(2) ⊗ x and h_(2) ⊗ x ⊗ β(h_(1))."""
    F = B.field
    S = g_subspace(B, X)
    I_x = LinMap.identity(X.dim, F)
    lam = tensor_map(B.lam_L, I_x) @ S.inclusion
    rho = tensor_map(B.total.identity(), twist(B.c, X.dim, F)) @ tensor_map(B.rho_L, I_x) @ S.inclusion
    return S, Bicomodule(S.dim, B.base, corestrict_slices(lam, S, B.c, 1), corestrict_slices(rho, S, 1, B.c),
                         f"G({X.label})")


def xi_map(B: Bicoalgebroid) -> LinMap:
    """ξ(c) = η(c)_(1) ⊗ α(η(c)_(2)) as a map C -> H⊗C, computed through the evaluator."""
    F = B.field
    cols = [B.ev.to_flat(B.ev.eval(t, "C", "eta", "delta", "H alpha"), "HC") for _, t in B.c_basis()]
    return LinMap(B.n * B.c, B.c, tuple(cols), F)


def tensor_bicomodule(X: Bicomodule, Y: Bicomodule) -> Bicomodule:
    """X ⊗ Y with λ on the X leg and ρ on the Y leg."""
    F = X.field
    lam = tensor_map(X.lam, LinMap.identity(Y.dim, F))
    rho = tensor_map(LinMap.identity(X.dim, F), Y.rho)
    return Bicomodule(X.dim * Y.dim, X.base, lam, rho, f"{X.label}⊗{Y.label}")


def standard_objects(B: Bicoalgebroid) -> list:
    """C, H with (λ_L, ρ_L), and C⊗C."""
    C = regular_bicomodule(B.base)
    return [C, regular_h_comodule(B).space, tensor_bicomodule(C, C)]


def _basis(ev: Evaluator, S: Subspace, legs: str) -> list:
    one = ev.field.coerce(1)
    return [(i, ev.embed(S, {i: one}, legs)) for i in range(S.dim)]


def _products(left: list, right: list) -> list:
    return [{ka + kb: x * y for ka, x in a.items() for kb, y in b.items()} for (_, a), (_, b) in product(left, right)]


def _stages(ev: Evaluator, legs: str, stages: tuple):
    return lambda t: ev.eval(t, legs, *stages)


def _membership(ev: Evaluator, items, legs: str, stages: tuple, S: Subspace, out_legs: str, part: str):
    F = ev.field
    for label, t in items:
        try:
            v = ev.eval(t, legs, *stages)
        except (NotInCotensorDomain, NotInSubspace) as e:
            return {"basis": label, "error": type(e).__name__, "detail": str(e), "part": part}
        flat = ev.to_flat(v, out_legs)
        if not S.contains(flat):
            return {"basis": label, "error": "NotInSubspace", "lhs": fmt_vec(v, F), "part": part}
    return None


def _equal_on(ev: Evaluator, items, legs: str, lhs: tuple, rhs: tuple | None, part: str):
    """``rhs=None`` compares against the argument itself."""
    right = (lambda t: dict(t)) if rhs is None else _stages(ev, legs, rhs)
    return equation(items, _stages(ev, legs, lhs), right, ev.field, part)


def _ambient_cotensor(ev: Evaluator, gens: list, legs: str, lhs: tuple, rhs: tuple) -> Subspace:
    return kernel_within(ev, gens, legs, lhs, rhs)


def _finish(rep: CheckReport, names: tuple, parts: dict) -> CheckReport:
    for name in names:
        if name in parts:
            rep.add_parts(name, parts[name])
    return rep


# -- the bicomonad H ⊠_{C^e} − -----------------------------------------------------

def verify_bicomonad(B: Bicoalgebroid, objects: list | None = None, triples: bool = True) -> CheckReport:
    """Comonad laws, κ and ξ, and the four compatibility equations.

    δ_X(h⊗x) = h_(1) ⊗ h_(2) ⊗ x, ε_X(h⊗x) = ε_H(h) x,
    κ((h⊗x) ⊗ (h'⊗y)) = hh' ⊗ x ⊗ y, ξ(c) = η(c)_(1) ⊗ α(η(c)_(2)).

    * ``delta_monoidal``: δ_{X⊠Y}∘κ = Gκ ∘ κ_{GX,GY} ∘ (δ_X ⊠ δ_Y)
    * ``delta_unit``: δ_C∘ξ = Gξ∘ξ
    * ``eps_monoidal``: ε_{X⊠Y}∘κ = ε_X ⊠ ε_Y
    * ``eps_unit``: ε_C∘ξ = id

    ``objects`` defaults to :func:`standard_objects`.  Every equation is
    compared in the ambient tensor power on a basis of its source.
    """
    objs = list(objects) if objects is not None else standard_objects(B)
    rep = CheckReport(info={"objects": [X.label for X in objs]})
    parts: dict = defaultdict(list)
    xi = xi_map(B)
    base = B.ev.extend()
    base.register("xi", xi, "C", "HC")

    # unit data
    C = regular_bicomodule(B.base)
    GC_sub, _ = g_object(B, C)
    cb = B.c_basis()
    parts["xi_well_defined"].append(lambda: _membership(base, cb, "C", ("xi",), GC_sub, "HC", "C"))
    parts["xi_is_unit_coaction"].append(lambda: maps_differ(xi, unit_h_comodule(B).delta))
    parts["delta_unit"].append(lambda: _equal_on(base, cb, "C", ("xi", "delta C"), ("xi", "H xi"), "C"))
    parts["eps_unit"].append(lambda: _equal_on(base, cb, "C", ("xi", "eps C"), None, "C"))

    gobj = [g_object(B, X) for X in objs]
    evs = []
    bases = []
    for X, (S, GX) in zip(objs, gobj):
        ev = base.extend({"X": X.dim})
        evs.append(ev)
        tb = _basis(ev, S, "HX")
        bases.append(tb)
        GG = lift(g_subspace(B, GX), S, B.n)
        lab = X.label
        parts["delta_well_defined"].append(
            lambda ev=ev, tb=tb, GG=GG, lab=lab: _membership(ev, tb, "HX", ("delta X",), GG, "HHX", lab))
        parts["comonad_counit"] += [
            lambda ev=ev, tb=tb, lab=lab: _equal_on(ev, tb, "HX", ("delta X", "eps H X"), None, lab + ":outer"),
            lambda ev=ev, tb=tb, lab=lab: _equal_on(ev, tb, "HX", ("delta X", "H eps X"), None, lab + ":inner")]
        parts["comonad_coassociative"].append(
            lambda ev=ev, tb=tb, lab=lab: _equal_on(ev, tb, "HX", ("delta X", "delta H X"), ("delta X", "H delta X"),
                                                    lab))

        def unit_parts(ev=ev, tb=tb, X=X, lab=lab):
            left = _ambient_cotensor(ev, _products(cb, tb), "CHX", ("deltaC H X",), ("C lamL X",))
            right = _ambient_cotensor(ev, _products(tb, cb), "HXC", ("rhoL X C", "H tw C"), ("H X deltaC",))
            w = _equal_on(ev, _basis(ev, left, "CHX"), "CHX", ("xi H X", "@0,2,1,3", "mu C X", "H epsC X"),
                          ("epsC H X",), lab + ":left")
            if w:
                return w
            return _equal_on(ev, _basis(ev, right, "HXC"), "HXC", ("H X xi", "@0,2,1,3", "mu X C", "H X epsC"),
                             ("H X epsC",), lab + ":right")

        parts["kappa_unit"].append(unit_parts)

    pair_cache: dict = {}

    def pair(i, j):
        got = pair_cache.get((i, j))
        if got is None:
            ev = base.extend({"X": objs[i].dim, "Y": objs[j].dim})
            gens = _products(bases[i], [(k, {(h, y): x for (h, y), x in t.items()}) for k, t in bases[j]])
            P = _ambient_cotensor(ev, gens, "HXHY", ("rhoL X H Y", "H tw H Y"), ("H X lamL Y",))
            got = pair_cache[(i, j)] = (ev, P, _basis(ev, P, "HXHY"))
        return got

    kappa = ("H tw Y", "mu X Y")
    for i, j in product(range(len(objs)), repeat=2):
        lab = f"{objs[i].label},{objs[j].label}"

        def well_defined(i=i, j=j, lab=lab):
            ev, P, pb = pair(i, j)
            S_xy, XY = cotensor_bicomodule(objs[i], objs[j])
            target = lift(g_subspace(B, XY), S_xy, B.n)
            return _membership(ev, pb, "HXHY", kappa, target, "HXY", lab)

        def delta_monoidal(i=i, j=j, lab=lab):
            ev, P, pb = pair(i, j)
            return _equal_on(ev, pb, "HXHY", kappa + ("delta X Y",),
                             ("delta X delta Y", "@0,3,1,2,4,5", "mu H X H Y", "H H tw Y", "H mu X Y"), lab)

        def eps_monoidal(i=i, j=j, lab=lab):
            ev, P, pb = pair(i, j)
            return _equal_on(ev, pb, "HXHY", kappa + ("eps X Y",), ("eps X eps Y",), lab)

        parts["kappa_well_defined"].append(well_defined)
        parts["delta_monoidal"].append(delta_monoidal)
        parts["eps_monoidal"].append(eps_monoidal)

    if triples:
        for i, j, k in product(range(len(objs)), repeat=3):
            lab = f"{objs[i].label},{objs[j].label},{objs[k].label}"

            def assoc(i=i, j=j, k=k, lab=lab):
                _, _, pb = pair(i, j)
                ev = base.extend({"X": objs[i].dim, "Y": objs[j].dim, "Z": objs[k].dim})
                zb = [(m, {(h, z): x for (h, z), x in t.items()}) for m, t in bases[k]]
                T = _ambient_cotensor(ev, _products(pb, zb), "HXHYHZ", ("H X rhoL Y H Z", "H X H tw H Z"),
                                      ("H X H Y lamL Z",))
                return _equal_on(ev, _basis(ev, T, "HXHYHZ"), "HXHYHZ",
                                 ("@0,2,1,3,4,5", "mu X Y H Z", "@0,3,1,2,4", "mu X Y Z"),
                                 ("@0,1,2,4,3,5", "H X mu Y Z", "@0,2,1,3,4", "mu X Y Z"), lab)

            parts["kappa_associative"].append(assoc)
    return _finish(rep, BICOMONAD_CHECKS, parts)


def lifted_tensor_agrees(M: HComodule, N: HComodule, B: Bicoalgebroid) -> CheckReport:
    """The coaction of M ⊠_C N equals κ_{M,N}∘(δ_M ⊠ δ_N) built from plain matrices, and ξ is δ_C."""
    F = B.field
    T = h_comodule_tensor(M, N, B)
    S = T.sub
    I_h = B.total.identity()
    I_m = LinMap.identity(M.dim, F)
    I_n = LinMap.identity(N.dim, F)
    both = tensor_map(M.delta, N.delta) @ S.inclusion  # H M H N
    moved = tensor_map(tensor_map(I_h, twist(M.dim, B.n, F)), I_n) @ both  # H H M N
    prod = tensor_map(tensor_map(B.mu_total, I_m), I_n) @ moved
    rep = CheckReport(info={"dim": S.dim})
    rep.add_parts("tensor_coaction", [lambda: maps_differ(corestrict_slices(prod, S, B.n, 1), T.delta)])
    rep.add_parts("unit_coaction", [lambda: maps_differ(xi_map(B), unit_h_comodule(B).delta)])
    return rep


# -- the opmonoidal comonad D ⊠_C − -------------------------------------------------

def _opmonoidal_evaluator(Dd: BCCData, B: Bicoalgebroid, **objects) -> Evaluator:
    ev = bcc_evaluator(Dd, B).extend({k: v.dim for k, v in objects.items()})
    for k, v in objects.items():
        ev.register(f"d{k}", v.delta, k, "H" + k)
        ev.register(f"lam{k}", v.space.lam, k, "C" + k)
        ev.register(f"rho{k}", v.space.rho, k, k + "C")
    return ev


G2_STAGES = ("deltaD X Y", "D D dX Y", "@0,3,1,2,4", "D X actD Y")
G2_INVERSE_STAGES = ("D X pi Y", "D X epsC Y")


def g2_map(Dd: BCCData, X: HComodule, Y: HComodule, B: Bicoalgebroid) -> tuple[Subspace, Subspace, LinMap]:
    """G2: D⊠(X⊠Y) -> (D⊠X) ⊠_D (D⊠Y), d⊗x⊗y ↦ d_(1) ⊗ x⟨0⟩ ⊗ d_(2)◁x⟨−1⟩ ⊗ y.

    Returns ``(source, target, matrix)`` with both spaces inside their ambient
    tensor powers D⊗X⊗Y and D⊗X⊗D⊗Y.  Raises NotInSubspace if an image leaves
    the target.
    """
    ev = _opmonoidal_evaluator(Dd, B, X=X, Y=Y)
    src, tgt = _g2_spaces(ev, Dd, X, Y, B)
    cols = []
    for i, t in _basis(ev, src, "DXY"):
        v = ev.to_flat(ev.eval(t, "DXY", *G2_STAGES), "DXDY")
        if not tgt.contains(v):
            raise NotInSubspace(f"G2 of basis {i} leaves the target", column=i, vector=v)
        cols.append(tgt.coords(v))
    return src, tgt, LinMap(tgt.dim, src.dim, tuple(cols), B.field)


def _dx_basis(ev: Evaluator, Dd: BCCData, X: HComodule, B: Bicoalgebroid, leg: str) -> list:
    S = cotensor(Dd.yd.space.rho, X.space.lam, B.base)
    return _basis(ev, S, "D" + leg)


def _g2_spaces(ev: Evaluator, Dd: BCCData, X: HComodule, Y: HComodule, B: Bicoalgebroid):
    S_xy = cotensor(X.space.rho, Y.space.lam, B.base)
    one = B.field.coerce(1)
    d_basis = [(d, {(d,): one}) for d in range(Dd.dim)]
    src = _ambient_cotensor(ev, _products(d_basis, _basis(ev, S_xy, "XY")), "DXY", ("rhoD X Y",), ("D lamX Y",))
    gens = _products(_dx_basis(ev, Dd, X, B, "X"), _dx_basis(ev, Dd, Y, B, "Y"))
    right_coaction = ("deltaD X D Y", "D D dX D Y", "@0,3,1,2,4,5", "D X actD D Y")
    tgt = _ambient_cotensor(ev, gens, "DXDY", right_coaction, ("D X deltaD Y",))
    return src, tgt


def verify_opmonoidal_comonad(Dd: BCCData, B: Bicoalgebroid, objects: list | None = None) -> CheckReport:
    """Comonad laws for D ⊠_C −, G2 with its inverse, and the four opmonoidality diagrams.

    ε_X(d⊗x) = ε_C(π(d)) x, G0(d⊗c) = ε_D(d) c, and the inverse of G2 is
    (d⊗x) ⊗ (d'⊗y) ↦ d ε_C(π(d')) ⊗ x ⊗ y.

    * ``delta_opmonoidal``: (Δ_X ⊠ Δ_Y)∘G2_{X,Y} = G2_{DX,DY} ∘ (D ⊠ G2_{X,Y}) ∘ Δ_{X⊠Y}
    * ``delta_opmonoidal_unit``: G0 ∘ (D ⊠ G0) ∘ Δ_C = G0
    * ``eps_opmonoidal``: (ε_X ⊠ ε_Y)∘G2_{X,Y} = ε_{X⊠Y}
    * ``eps_is_g0``: ε_C = G0

    ``objects`` (H-comodules) defaults to the unit C and the regular H.
    """
    objs = list(objects) if objects is not None else [unit_h_comodule(B), regular_h_comodule(B)]
    rep = CheckReport(info={"objects": [X.label for X in objs]})
    parts: dict = defaultdict(list)

    for X in objs:
        lab = X.label

        def per_object(X=X, lab=lab):
            ev = _opmonoidal_evaluator(Dd, B, X=X)
            tb = _dx_basis(ev, Dd, X, B, "X")
            return ev, tb

        def well_defined(per_object=per_object, lab=lab):
            ev, tb = per_object()
            return (_equal_on(ev, [(i, ev.eval(t, "DX", "deltaD X")) for i, t in tb], "DDX", ("rhoD D X",),
                              ("D lamD X",), lab + ":outer")
                    or _equal_on(ev, [(i, ev.eval(t, "DX", "deltaD X")) for i, t in tb], "DDX", ("D rhoD X",),
                                 ("D D lamX",), lab + ":inner"))

        def counit(per_object=per_object, lab=lab):
            ev, tb = per_object()
            return (_equal_on(ev, tb, "DX", ("deltaD X", "pi D X", "epsC D X"), None, lab + ":outer")
                    or _equal_on(ev, tb, "DX", ("deltaD X", "D pi X", "D epsC X"), None, lab + ":inner"))

        def coassoc(per_object=per_object, lab=lab):
            ev, tb = per_object()
            return _equal_on(ev, tb, "DX", ("deltaD X", "deltaD D X"), ("deltaD X", "D deltaD X"), lab)

        parts["delta_well_defined"].append(well_defined)
        parts["comonad_counit"].append(counit)
        parts["comonad_coassociative"].append(coassoc)

    def unit_diagrams():
        ev = bcc_evaluator(Dd, B)
        S = cotensor(Dd.yd.space.rho, B.base.delta, B.base)
        tb = _basis(ev, S, "DC")
        return ev, tb

    parts["delta_opmonoidal_unit"].append(
        lambda: _equal_on(*_unit_args(unit_diagrams), ("deltaD C", "D epsD C", "epsD C"), ("epsD C",), "C"))
    parts["eps_is_g0"].append(
        lambda: _equal_on(*_unit_args(unit_diagrams), ("pi C", "epsC C"), ("epsD C",), "C"))

    for X, Y in product(objs, repeat=2):
        lab = f"{X.label},{Y.label}"
        cache: dict = {}

        def spaces(X=X, Y=Y, cache=cache):
            if not cache:
                ev = _opmonoidal_evaluator(Dd, B, X=X, Y=Y)
                src, tgt = _g2_spaces(ev, Dd, X, Y, B)
                cache.update(ev=ev, src=_basis(ev, src, "DXY"), tgt=tgt, tgt_basis=_basis(ev, tgt, "DXDY"))
            return cache

        def g2_well_defined(spaces=spaces, lab=lab):
            c = spaces()
            return _membership(c["ev"], c["src"], "DXY", G2_STAGES, c["tgt"], "DXDY", lab)

        def g2_inverse(spaces=spaces, lab=lab):
            c = spaces()
            ev = c["ev"]
            return (_equal_on(ev, c["src"], "DXY", G2_STAGES + G2_INVERSE_STAGES, None, lab + ":inverse_after")
                    or _equal_on(ev, c["tgt_basis"], "DXDY", G2_INVERSE_STAGES + G2_STAGES, None,
                                 lab + ":inverse_before"))

        def delta_opmonoidal(spaces=spaces, lab=lab):
            c = spaces()
            rhs = ("deltaD X Y", "D deltaD X Y", "D D D dX Y", "@0,1,4,2,3,5", "D D X actD Y",
                   "deltaD D X D Y", "D D dD dX D Y", "@0,1,2,4,3,5,6,7", "D D mu D X D Y",
                   "@0,3,4,1,2,5,6", "D D X actD D Y")
            return _equal_on(c["ev"], c["src"], "DXY", G2_STAGES + ("deltaD X deltaD Y",), rhs, lab)

        def eps_opmonoidal(spaces=spaces, lab=lab):
            c = spaces()
            return _equal_on(c["ev"], c["src"], "DXY", G2_STAGES + ("pi X pi Y", "epsC X epsC Y"),
                             ("pi X Y", "epsC X Y"), lab)

        parts["g2_well_defined"].append(g2_well_defined)
        parts["g2_inverse"].append(g2_inverse)
        parts["delta_opmonoidal"].append(delta_opmonoidal)
        parts["eps_opmonoidal"].append(eps_opmonoidal)
    return _finish(rep, OPMONOIDAL_CHECKS, parts)


def _unit_args(make):
    ev, tb = make()
    return ev, tb, "DC"


__all__ = [
    "BICOMONAD_CHECKS", "G2_INVERSE_STAGES", "G2_STAGES", "OPMONOIDAL_CHECKS", "corestrict_slices",
    "cotensor_bicomodule", "g2_map", "g_object", "g_subspace", "lift", "lifted_tensor_agrees", "standard_objects",
    "tensor_bicomodule", "verify_bicomonad", "verify_opmonoidal_comonad", "xi_map",
]
