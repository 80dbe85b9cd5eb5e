"""Left bicoalgebroids, their verifier, and the monoidal category of H-comodules."""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import cached_property

from .coalgebra import (Bicomodule, Coalgebra, coenveloping, cotensor, regular_bicomodule,
                        verify_anti_coalgebra_map, verify_bicomodule, verify_coalgebra,
                        verify_coalgebra_map)
from .exactlin import (LinMap, NotInSubspace, Subspace, cokernel, kernel, tensor_map, twist, vaxpy,
                       vclean)
from .report import CheckReport, equation, fmt_vec, maps_differ
from .tensor import Evaluator, NotInCotensorDomain


@dataclass(frozen=True, eq=False)
class Bicoalgebroid:
    """(C, H, α, β, μ, η) with μ given by a total extension ``mu_total: H⊗H -> H``.

    Only the restriction of ``mu_total`` to H ⊠_C H (ρ_L against λ_L) is ever
    used; every application is preceded by a membership check.
    """

    base: Coalgebra
    total: Coalgebra
    alpha: LinMap
    beta: LinMap
    mu_total: LinMap
    eta: LinMap
    label: str = "H"

    def __post_init__(self):
        n, c = self.total.dim, self.base.dim
        for name, m, shape in [("alpha", self.alpha, (c, n)), ("beta", self.beta, (c, n)),
                               ("mu_total", self.mu_total, (n, n * n)), ("eta", self.eta, (n, c))]:
            if (m.rows, m.cols) != shape:
                raise ValueError(f"{name} must be {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")

    @property
    def field(self):
        return self.total.field

    @property
    def n(self) -> int:
        return self.total.dim

    @property
    def c(self) -> int:
        return self.base.dim

    # derived coactions ----------------------------------------------------

    @cached_property
    def lam_L(self) -> LinMap:
        """h -> α(h_(1)) ⊗ h_(2)"""
        return tensor_map(self.alpha, self.total.identity()) @ self.total.delta

    @cached_property
    def rho_L(self) -> LinMap:
        """h -> h_(2) ⊗ β(h_(1))"""
        return twist(self.c, self.n, self.field) @ tensor_map(self.beta, self.total.identity()) @ self.total.delta

    @cached_property
    def lam_R(self) -> LinMap:
        """h -> β(h_(2)) ⊗ h_(1)"""
        return twist(self.n, self.c, self.field) @ tensor_map(self.total.identity(), self.beta) @ self.total.delta

    @cached_property
    def rho_R(self) -> LinMap:
        """h -> h_(1) ⊗ α(h_(2))"""
        return tensor_map(self.total.identity(), self.alpha) @ self.total.delta

    @cached_property
    def box(self) -> Subspace:
        """H ⊠_C H, the domain of μ."""
        return cotensor(self.rho_L, self.lam_L, self.base)

    @cached_property
    def mu(self) -> LinMap:
        """μ on cotensor coordinates."""
        return self.mu_total @ self.box.inclusion

    @cached_property
    def ev(self) -> Evaluator:
        F = self.field
        C, H = self.base, self.total
        return Evaluator(F, {"H": self.n, "C": self.c}, {
            "delta": (H.delta, "H", "HH"),
            "eps": (H.counit, "H", ""),
            "deltaC": (C.delta, "C", "CC"),
            "epsC": (C.counit, "C", ""),
            "alpha": (self.alpha, "H", "C"),
            "beta": (self.beta, "H", "C"),
            "eta": (self.eta, "C", "H"),
            "mu": (self.mu_total, "HH", "H", self.box),
            "lamL": (self.lam_L, "H", "CH"),
            "rhoL": (self.rho_L, "H", "HC"),
            "lamR": (self.lam_R, "H", "CH"),
            "rhoR": (self.rho_R, "H", "HC"),
        })

    def box_basis(self):
        """Labelled cotensor basis vectors as tensors on legs ``HH``."""
        for i in range(self.box.dim):
            yield i, self.ev.embed(self.box, {i: self.field.coerce(1)}, "HH")

    def h_basis(self):
        one = self.field.coerce(1)
        return [(i, {(i,): one}) for i in range(self.n)]

    def c_basis(self):
        one = self.field.coerce(1)
        return [(i, {(i,): one}) for i in range(self.c)]

    def with_mu_total(self, mu_total: LinMap) -> Bicoalgebroid:
        """Same data with another total extension; μ-independent caches are shared."""
        out = replace(self, mu_total=mu_total)
        for name in ("lam_L", "rho_L", "lam_R", "rho_R", "box", "box3"):
            if name in self.__dict__:
                out.__dict__[name] = self.__dict__[name]
        return out

    @cached_property
    def box3(self) -> Subspace:
        """H ⊠_C H ⊠_C H inside H⊗H⊗H."""
        gens = [{k + (h,): x for k, x in t.items()} for _, t in self.box_basis() for h in range(self.n)]
        return kernel_within(self.ev, gens, "HHH", ("H rhoL H",), ("H H lamL",))


def kernel_within(ev: Evaluator, gens: list, legs: str, lhs: tuple, rhs: tuple) -> Subspace:
    """Span of combinations of ``gens`` on which the two stage sequences agree."""
    F = ev.field
    diffs = []
    out_legs = None
    for g in gens:
        a, out_legs = ev.run(g, legs, *lhs)
        b, _ = ev.run(g, legs, *rhs)
        d = dict(a)
        vaxpy(d, -1, b)
        diffs.append(vclean(d, F))
    flat_cols = [ev.to_flat(d, out_legs) for d in diffs] if gens else []
    ambient_out = 1
    for t in (out_legs or ""):
        ambient_out *= ev.types[t]
    f = LinMap(ambient_out, len(gens), tuple(flat_cols), F)
    ker = kernel(f)
    flat_gens = [ev.to_flat(g, legs) for g in gens]
    vecs = []
    for b in ker.basis:
        acc: dict = {}
        for i, x in b.items():
            vaxpy(acc, x, flat_gens[i])
        vecs.append(vclean(acc, F))
    ambient = 1
    for t in legs:
        ambient *= ev.types[t]
    return Subspace.span(ambient, vecs, F)


def derived_coactions(B: Bicoalgebroid):
    """(λ_L, ρ_L, λ_R, ρ_R)."""
    return B.lam_L, B.rho_L, B.lam_R, B.rho_R


def sweedler_eval(expr, B: Bicoalgebroid, args: dict, legs: str = "H") -> dict:
    """Evaluate a composite given as a sequence of stages (see :mod:`bicoalg.tensor`).

    ``args`` is a tensor keyed by index tuples on ``legs``.  Every ``mu``
    first checks that its argument lies in H ⊠_C H.
    """
    if isinstance(expr, str):
        expr = [s for s in expr.split("|")]
    return B.ev.eval(args, legs, *[s.strip() for s in expr])


def box_square(B: Bicoalgebroid):
    """H ⊠_C H and the cocenter H ⊠ H of the (λ_R ⊗ H, H ⊗ ρ_R) bicomodule.

    Returns ``(cotensor, quotient, zeta2, phi2)``; ``phi2`` is Φ₂ on the
    basis (cotensor basis vector) ⊗ (dual basis of C).
    """
    ev = B.ev
    S = B.box
    F = B.field
    cols = []
    for i, t in B.box_basis():
        a = ev.eval(t, "HH", "H rhoR")  # g ⊗ h1 ⊗ α(h2)
        b = ev.eval(t, "HH", "lamR H", "tw H", "H tw")  # g1 ⊗ h ⊗ β(g2)
        for j in range(B.c):
            v: dict = {}
            for k, x in a.items():
                if k[2] == j:
                    v[k[:2]] = v.get(k[:2], 0) + x
            for k, x in b.items():
                if k[2] == j:
                    v[k[:2]] = v.get(k[:2], 0) - x
            v = vclean(v, F)
            cols.append(S.coords(ev.to_flat(v, "HH")))
    phi2 = LinMap(S.dim, S.dim * B.c, tuple(cols), F)
    q = cokernel(phi2)
    return S, q, q.projection, phi2


def mu_factors_through_box_square(B: Bicoalgebroid) -> bool:
    _, _, _, phi2 = box_square(B)
    return (B.mu @ phi2).is_zero()


# -- the verifier --------------------------------------------------------------

CHECK_NAMES = (
    "coalgebras",
    "source_target_coalgebra_maps",
    "source_target_cocommute",
    "coactions_commute",
    "monoid_in_bicomodules",
    "mu_factors_through_cocenter",
    "mu_comultiplicative",
    "mu_counital",
    "eta_unit",
    "eta_coalgebra_compatible",
    "source_target_multiplicative",
    "extension_independence",
)

_EXTENSION_DEPENDENT = CHECK_NAMES[4:11]


def _report_witness(rep: CheckReport, part: str) -> dict | None:
    for c in rep:
        if not c.passed:
            return {"part": f"{part}.{c.name}", **c.witness}
    return None


def verify_bicoalgebroid(B: Bicoalgebroid, seed: int = 0, independence: bool = True) -> CheckReport:
    F = B.field
    ev = B.ev
    rep = CheckReport(info={"dim_total": B.n, "dim_base": B.c})
    hb = B.h_basis()

    def eq(items, lhs_legs, lhs, rhs, part=None):
        legs = lhs_legs
        return equation(items, lambda t: ev.eval(t, legs, *lhs), lambda t: ev.eval(t, legs, *rhs), F, part)

    def eq_id(items, legs, stages, part=None):
        return equation(items, lambda t: ev.eval(t, legs, *stages), lambda t: t, F, part)

    rep.add_parts("coalgebras", [
        lambda: _report_witness(verify_coalgebra(B.total), "total"),
        lambda: _report_witness(verify_coalgebra(B.base), "base")])
    rep.add_parts("source_target_coalgebra_maps", [
        lambda: _report_witness(verify_coalgebra_map(B.alpha, B.total, B.base), "alpha"),
        lambda: _report_witness(verify_anti_coalgebra_map(B.beta, B.total, B.base), "beta")])
    rep.add_parts("source_target_cocommute", [
        lambda: eq(hb, "H", ("delta", "alpha beta"), ("delta", "beta alpha", "tw"))])

    lefts = {"lamL": "lamL", "lamR": "lamR"}
    rights = {"rhoL": "rhoL", "rhoR": "rhoR"}
    parts = []
    for l in lefts:
        parts.append(lambda l=l: eq(hb, "H", (l, "deltaC H"), (l, f"C {l}"), f"{l}.coassociative"))
        parts.append(lambda l=l: eq_id(hb, "H", (l, "epsC H"), f"{l}.counit"))
    for r in rights:
        parts.append(lambda r=r: eq(hb, "H", (r, "H deltaC"), (r, f"{r} C"), f"{r}.coassociative"))
        parts.append(lambda r=r: eq_id(hb, "H", (r, "H epsC"), f"{r}.counit"))
    parts.append(lambda: eq(hb, "H", ("lamL", "C lamR"), ("lamR", "C lamL", "tw H"), "lamL/lamR"))
    parts.append(lambda: eq(hb, "H", ("rhoR", "rhoL C"), ("rhoL", "rhoR C", "H tw"), "rhoL/rhoR"))
    for l in lefts:
        for r in rights:
            parts.append(lambda l=l, r=r: eq(hb, "H", (r, f"{l} C"), (l, f"C {r}"), f"{l}/{r}"))
    rep.add_parts("coactions_commute", parts)

    _extension_checks(B, rep)

    if independence:
        rep.add_parts("extension_independence", [lambda: _independence_witness(B, rep, seed)])
    return rep


def _extension_checks(B: Bicoalgebroid, rep: CheckReport) -> None:
    """Checks 5-11: everything that touches μ."""
    F = B.field
    ev = B.ev
    hb = B.h_basis()
    cb = B.c_basis()
    xb = list(B.box_basis())

    def eq(items, legs, lhs, rhs, part=None):
        return equation(items, lambda t: ev.eval(t, legs, *lhs), lambda t: ev.eval(t, legs, *rhs), F, part)

    def eq_id(items, legs, stages, part=None):
        return equation(items, lambda t: ev.eval(t, legs, *stages), lambda t: t, F, part)

    def triples():
        one = F.coerce(1)
        for i in range(B.box3.dim):
            yield i, ev.embed(B.box3, {i: one}, "HHH")

    rep.add_parts("monoid_in_bicomodules", [
        lambda: eq(xb, "HH", ("mu", "lamL"), ("lamL H", "C mu"), "mu.left_colinear"),
        lambda: eq(xb, "HH", ("mu", "rhoL"), ("H rhoL", "mu C"), "mu.right_colinear"),
        lambda: eq(cb, "C", ("eta", "lamL"), ("deltaC", "C eta"), "eta.left_colinear"),
        lambda: eq(cb, "C", ("eta", "rhoL"), ("deltaC", "eta C"), "eta.right_colinear"),
        lambda: eq(triples(), "HHH", ("mu H", "mu"), ("H mu", "mu"), "mu.associative"),
    ])
    rep.add_parts("mu_factors_through_cocenter", [
        lambda: eq(xb, "HH", ("H rhoR", "mu C"), ("lamR H", "tw H", "H tw", "mu C"))])
    rep.add_parts("mu_comultiplicative", [
        lambda: eq(xb, "HH", ("mu", "delta"), ("delta delta", "H tw H", "mu H H", "H mu"))])
    rep.add_parts("mu_counital", [
        lambda: eq(xb, "HH", ("mu", "eps"), ("eps eps",))])
    rep.add_parts("eta_unit", [
        lambda: eq_id(hb, "H", ("lamL", "eta H", "mu"), "left"),
        lambda: eq_id(hb, "H", ("rhoL", "H eta", "mu"), "right")])
    rep.add_parts("eta_coalgebra_compatible", [
        lambda: eq(cb, "C", ("eta", "delta"), ("eta", "delta", "H alpha", "H eta"), "alpha_leg"),
        lambda: eq(cb, "C", ("eta", "delta"), ("eta", "delta", "H beta", "H eta"), "beta_leg"),
        lambda: eq(cb, "C", ("eta", "eps"), ("epsC",), "counit")])
    rep.add_parts("source_target_multiplicative", [
        lambda: eq(xb, "HH", ("mu", "alpha"), ("alpha eps",), "alpha"),
        lambda: eq(xb, "HH", ("mu", "beta"), ("eps beta",), "beta")])


def random_extension(total: LinMap, S: Subspace, rng: random.Random) -> LinMap:
    """A total map agreeing with ``total`` on S and random off S."""
    F = total.field
    q = cokernel(S.inclusion)
    if q.dim == 0:
        return total
    R = LinMap.from_dense([[rng.randint(-3, 3) for _ in range(q.dim)] for _ in range(total.rows)],
                          q.dim, F)
    return total + R @ q.projection


def _independence_witness(B: Bicoalgebroid, rep: CheckReport, seed: int) -> dict | None:
    rng = random.Random(seed)
    B2 = B.with_mu_total(random_extension(B.mu_total, B.box, rng))
    rep2 = CheckReport()
    _extension_checks(B2, rep2)
    for c in rep2:
        c1 = rep[c.name]
        if (c1.passed, c1.witness) != (c.passed, c.witness):
            return {"part": c.name, "first": c1.to_json(), "second": c.to_json()}
    return None


# -- φ and the C^e-coactions ---------------------------------------------------

def phi_map(B: Bicoalgebroid) -> LinMap:
    """φ = (α ⊗ β)∘Δ : H -> C ⊗ C_cop."""
    return tensor_map(B.alpha, B.beta) @ B.total.delta


def ce_right_total(B: Bicoalgebroid) -> LinMap:
    """Right C^e-coaction on H: h -> h_(1) ⊗ φ(h_(2))."""
    return tensor_map(B.total.identity(), phi_map(B)) @ B.total.delta


def ce_left_total(B: Bicoalgebroid) -> LinMap:
    """Left C^e-coaction on H: h -> φ(h_(1)) ⊗ h_(2)."""
    return tensor_map(phi_map(B), B.total.identity()) @ B.total.delta


def ce_left(M: Bicomodule) -> LinMap:
    """The left C^e-coaction of a C-bicomodule: m -> m_[−1] ⊗ m_[1] ⊗ m_[0]."""
    C = M.base
    F = M.field
    step = tensor_map(M.lam, C.identity()) @ M.rho  # C ⊗ M ⊗ C
    return tensor_map(C.identity(), twist(M.dim, C.dim, F)) @ step


def cotensor_ce(rho_e: LinMap, lam_e: LinMap, C: Coalgebra) -> Subspace:
    return cotensor(rho_e, lam_e, coenveloping(C))


def delta_bar(B: Bicoalgebroid):
    """Δ corestricted into H ⊠_{C^e} H; returns ``(subspace, corestricted map)``."""
    S = cotensor_ce(ce_right_total(B), ce_left_total(B), B.base)
    cols = []
    for j, col in enumerate(B.total.delta.columns):
        if not S.contains(col):
            raise NotInSubspace(f"Δ(e_{j}) is not in H ⊠_(C^e) H", column=j, vector=dict(col))
        cols.append(S.coords(col))
    return S, LinMap(S.dim, B.n, tuple(cols), B.field)


# -- H-comodules ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HComodule:
    """A C-bicomodule with an H-coaction ``delta: M -> H ⊗ M``."""

    space: Bicomodule
    delta: LinMap
    label: str = "M"

    @property
    def dim(self) -> int:
        return self.space.dim


def regular_h_comodule(B: Bicoalgebroid) -> HComodule:
    return HComodule(Bicomodule(B.n, B.base, B.lam_L, B.rho_L, "H"), B.total.delta, "H")


def unit_h_comodule(B: Bicoalgebroid) -> HComodule:
    """C with δ_C(c) = η(c)_(1) ⊗ α(η(c)_(2))."""
    d = tensor_map(B.total.identity(), B.alpha) @ B.total.delta @ B.eta
    return HComodule(regular_bicomodule(B.base), d, "C")


def h_comodule_target(M: HComodule, B: Bicoalgebroid) -> Subspace:
    """H ⊠_{C^e} M inside H ⊗ M."""
    return cotensor_ce(ce_right_total(B), ce_left(M.space), B.base)


def verify_h_comodule(M: HComodule, B: Bicoalgebroid) -> CheckReport:
    F = B.field
    m = M.dim
    I_m = LinMap.identity(m, F)
    rep = CheckReport(info={"dim": m})
    rep.add_parts("bicomodule", [lambda: _report_witness(verify_bicomodule(M.space), "space")])
    if (M.delta.rows, M.delta.cols) != (B.n * m, m):
        rep.add("corestriction", False, {"detail": "delta has the wrong shape"})
        return rep
    S = h_comodule_target(M, B)

    def core():
        for j, col in enumerate(M.delta.columns):
            if not S.contains(col):
                return {"basis": j, "error": "NotInSubspace", "lhs": fmt_vec(col, F)}
        return None

    rep.add_parts("corestriction", [core])
    rep.add_parts("coassociativity", [
        lambda: maps_differ(tensor_map(B.total.delta, I_m) @ M.delta,
                            tensor_map(B.total.identity(), M.delta) @ M.delta)])
    rep.add_parts("counit", [
        lambda: maps_differ(tensor_map(phi_map(B), I_m) @ M.delta, ce_left(M.space), "phi_leg"),
        lambda: maps_differ(tensor_map(B.total.counit, I_m) @ M.delta, I_m, "eps_leg")])
    rep.add_parts("ce_colinear", [
        lambda: maps_differ(tensor_map(ce_left_total(B), I_m) @ M.delta,
                            tensor_map(LinMap.identity(B.c * B.c, F), M.delta) @ ce_left(M.space))])
    return rep


def comodule_evaluator(B: Bicoalgebroid, **objects) -> Evaluator:
    """Extend B's evaluator with legs and coactions for named HComodules.

    ``objects`` maps a one-letter leg name to an HComodule; registers
    ``d<X>`` (δ), ``lam<X>`` and ``rho<X>``.
    """
    types = {k: v.dim for k, v in objects.items()}
    ev = B.ev.extend(types)
    for k, v in objects.items():
        ev.register(f"d{k}", v.delta, k, "H" + k)
        ev.register(f"lam{k}", v.space.lam, k, "C" + k)
        ev.register(f"rho{k}", v.space.rho, k, k + "C")
    return ev


@dataclass(frozen=True, eq=False)
class TensorComodule(HComodule):
    """M ⊠_C N together with its embedding into M ⊗ N."""

    sub: Subspace | None = None
    factors: tuple = ()


def h_comodule_tensor(M: HComodule, N: HComodule, B: Bicoalgebroid) -> TensorComodule:
    """M ⊠_C N with δ(m⊗n) = m_[−1] n_[−1] ⊗ m_[0] ⊗ n_[0]."""
    F = B.field
    S = cotensor(M.space.rho, N.space.lam, B.base)
    ev = comodule_evaluator(B, M=M, N=N).extend({"S": S.dim})
    ev.register("crdS", S.reader, "MN", "S", S)
    one = F.coerce(1)
    dcols, lcols, rcols = [], [], []
    for i in range(S.dim):
        t = ev.embed(S, {i: one}, "MN")
        d = ev.eval(t, "MN", "dM dN", "H tw N", "mu M N", "H crdS")
        dcols.append(ev.to_flat(d, "HS"))
        lcols.append(ev.to_flat(ev.eval(t, "MN", "lamM N", "C crdS"), "CS"))
        rcols.append(ev.to_flat(ev.eval(t, "MN", "M rhoN", "crdS C"), "SC"))
    k = S.dim
    space = Bicomodule(k, B.base, LinMap(B.c * k, k, tuple(lcols), F), LinMap(k * B.c, k, tuple(rcols), F),
                       f"{M.label}⊠{N.label}")
    delta = LinMap(B.n * k, k, tuple(dcols), F)
    out = TensorComodule(space, delta, space.label, S, (M, N))
    target = h_comodule_target(out, B)
    for j, col in enumerate(delta.columns):
        if not target.contains(col):
            raise NotInSubspace(f"δ of basis {j} leaves H ⊠_(C^e) (M ⊠ N)", column=j, vector=dict(col))
    return out


__all__ = [
    "Bicoalgebroid", "CHECK_NAMES", "HComodule", "NotInCotensorDomain", "TensorComodule", "box_square",
    "ce_left", "ce_left_total", "ce_right_total", "comodule_evaluator", "cotensor_ce", "delta_bar",
    "derived_coactions", "h_comodule_target", "h_comodule_tensor", "kernel_within",
    "mu_factors_through_box_square", "phi_map", "random_extension", "regular_h_comodule",
    "sweedler_eval", "unit_h_comodule", "verify_bicoalgebroid", "verify_h_comodule",
]
