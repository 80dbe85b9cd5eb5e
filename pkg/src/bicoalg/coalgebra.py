"""Coalgebras, comodules, cotensor products and cocenters."""
from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (Field, LinMap, NotInSubspace, Quotient, Subspace, cokernel, corestrict_map,
                       kernel, tensor_map, tensor_maps, twist, vaxpy, vclean)
from .report import CheckReport, fmt_vec, maps_differ


class CocenterObstruction(ValueError):
    """A map does not annihilate W_M, so it does not factor through the cocenter."""

    def __init__(self, basis: int, w: dict, image: dict):
        super().__init__(f"(f ⊗ id)(w) != 0 for the W_M generator of basis vector {basis}")
        self.basis = basis
        self.w = w
        self.image = image


@dataclass(frozen=True, eq=False)
class Coalgebra:
    dim: int
    delta: LinMap
    counit: LinMap
    label: str = "C"

    def __post_init__(self):
        n = self.dim
        if (self.delta.rows, self.delta.cols) != (n * n, n):
            raise ValueError(f"delta must be {n * n}x{n}, got {self.delta.rows}x{self.delta.cols}")
        if (self.counit.rows, self.counit.cols) != (1, n):
            raise ValueError(f"counit must be 1x{n}")

    @property
    def field(self) -> Field:
        return self.delta.field

    def identity(self) -> LinMap:
        return LinMap.identity(self.dim, self.field)

    def eps(self, v: dict):
        """Scalar value of the counit on a sparse vector."""
        return self.counit(v).get(0, 0)

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return self.dim == other.dim and self.delta == other.delta and self.counit == other.counit

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class Bicomodule:
    """A C-bicomodule: left coaction ``lam: M -> C⊗M``, right ``rho: M -> M⊗C``."""

    dim: int
    base: Coalgebra
    lam: LinMap
    rho: LinMap
    label: str = "M"

    @property
    def field(self) -> Field:
        return self.base.field


def regular_bicomodule(C: Coalgebra) -> Bicomodule:
    return Bicomodule(C.dim, C, C.delta, C.delta, C.label)


def trivial_coalgebra(F: Field) -> Coalgebra:
    """The ground field k as a one-dimensional coalgebra."""
    one = LinMap.identity(1, F)
    return Coalgebra(1, one, one, "k")


# -- verification ------------------------------------------------------------

def verify_coalgebra(C: Coalgebra) -> CheckReport:
    I = C.identity()
    rep = CheckReport(info={"dim": C.dim})
    rep.add_parts("coassociativity", [
        lambda: maps_differ(tensor_map(C.delta, I) @ C.delta, tensor_map(I, C.delta) @ C.delta)])
    rep.add_parts("counit", [
        lambda: maps_differ(tensor_map(C.counit, I) @ C.delta, I, "left"),
        lambda: maps_differ(tensor_map(I, C.counit) @ C.delta, I, "right")])
    return rep


def _check_map(f: LinMap, C: Coalgebra, D: Coalgebra, anti: bool) -> CheckReport:
    if (f.rows, f.cols) != (D.dim, C.dim):
        raise ValueError(f"map must be {D.dim}x{C.dim}")
    rep = CheckReport()
    lhs = D.delta @ f
    dc = twist(C.dim, C.dim, C.field) @ C.delta if anti else C.delta
    rhs = tensor_map(f, f) @ dc
    rep.add_parts("anti_comultiplicative" if anti else "comultiplicative", [lambda: maps_differ(lhs, rhs)])
    rep.add_parts("counital", [lambda: maps_differ(D.counit @ f, C.counit)])
    return rep


def verify_coalgebra_map(f: LinMap, C: Coalgebra, D: Coalgebra) -> CheckReport:
    """Δ_D∘f = (f⊗f)∘Δ_C and ε_D∘f = ε_C."""
    return _check_map(f, C, D, anti=False)


def verify_anti_coalgebra_map(f: LinMap, C: Coalgebra, D: Coalgebra) -> CheckReport:
    """Δ_D∘f = (f⊗f)∘tw∘Δ_C and ε_D∘f = ε_C."""
    return _check_map(f, C, D, anti=True)


def verify_left_comodule(lam: LinMap, C: Coalgebra, dim: int) -> CheckReport:
    I = LinMap.identity(dim, C.field)
    rep = CheckReport()
    rep.add_parts("left_coassociativity", [
        lambda: maps_differ(tensor_map(C.delta, I) @ lam, tensor_map(C.identity(), lam) @ lam)])
    rep.add_parts("left_counit", [lambda: maps_differ(tensor_map(C.counit, I) @ lam, I)])
    return rep


def verify_right_comodule(rho: LinMap, C: Coalgebra, dim: int) -> CheckReport:
    I = LinMap.identity(dim, C.field)
    rep = CheckReport()
    rep.add_parts("right_coassociativity", [
        lambda: maps_differ(tensor_map(rho, C.identity()) @ rho, tensor_map(I, C.delta) @ rho)])
    rep.add_parts("right_counit", [lambda: maps_differ(tensor_map(I, C.counit) @ rho, I)])
    return rep


def verify_bicomodule(M: Bicomodule) -> CheckReport:
    C = M.base
    rep = verify_left_comodule(M.lam, C, M.dim)
    rep.merge(verify_right_comodule(M.rho, C, M.dim))
    rep.add_parts("left_right_compatible", [
        lambda: maps_differ(tensor_map(C.identity(), M.rho) @ M.lam, tensor_map(M.lam, C.identity()) @ M.rho)])
    return rep


# -- cotensor ---------------------------------------------------------------

def cotensor_map(rho_m: LinMap, lam_n: LinMap, c: int) -> LinMap:
    """ρ_M ⊗ id_N − id_M ⊗ λ_N : M⊗N -> M⊗C⊗N."""
    m = rho_m.cols
    n = lam_n.cols
    F = rho_m.field
    return tensor_map(rho_m, LinMap.identity(n, F)) - tensor_map(LinMap.identity(m, F), lam_n)


def cotensor(rho_m: LinMap, lam_n: LinMap, C: Coalgebra) -> Subspace:
    """M ⊠_C N as the kernel of ρ_M⊗id − id⊗λ_N inside M⊗N."""
    m, n = rho_m.cols, lam_n.cols
    if rho_m.rows != m * C.dim or lam_n.rows != C.dim * n:
        raise ValueError("coactions do not match the base coalgebra")
    return kernel(cotensor_map(rho_m, lam_n, C.dim))


def corestrict(f: LinMap, S: Subspace) -> LinMap:
    return corestrict_map(f, S)


def unit_isomorphisms(C: Coalgebra):
    """The pair C -> C⊠C (corestricted Δ) and C⊠C -> C ((ε⊗id)∘ι)."""
    S = cotensor(C.delta, C.delta, C)
    into = corestrict(C.delta, S)
    out = tensor_map(C.counit, C.identity()) @ S.inclusion
    return S, into, out


# -- cocenter ---------------------------------------------------------------

def phi_matrix(M: Bicomodule) -> LinMap:
    """Φ as a matrix on the basis m⊗e^j of M⊗C*: slice j of ρ(m) minus slice j of λ(m)."""
    c = M.base.dim
    F = M.field
    cols = []
    for mi in range(M.dim):
        r = M.rho.columns[mi]
        l = M.lam.columns[mi]
        for j in range(c):
            v: dict = {}
            for k, x in r.items():
                a, b = divmod(k, c)
                if b == j:
                    v[a] = v.get(a, 0) + x
            for k, x in l.items():
                b, a = divmod(k, M.dim)
                if b == j:
                    v[a] = v.get(a, 0) - x
            cols.append(vclean(v, F))
    return LinMap(M.dim, M.dim * c, tuple(cols), F)


def cocenter(M: Bicomodule):
    """Returns ``(Quotient, zeta)``; ``Quotient.image`` is the image of Φ."""
    q = cokernel(phi_matrix(M))
    return q, q.projection


def w_spanning_set(M: Bicomodule) -> list:
    """Generators m_[0]⊗m_[1] − m_[0]⊗m_[−1] of W_M ⊂ M⊗C, one per basis vector."""
    tw = twist(M.base.dim, M.dim, M.field)
    diff = M.rho - tw @ M.lam
    return [dict(c) for c in diff.columns]


def second_section(q: Quotient) -> LinMap:
    """Another right inverse of the projection: shift every column by the sum of image generators."""
    F = q.field
    shift: dict = {}
    for b in q.image.basis:
        vaxpy(shift, 1, b)
    cols = []
    for c in q.section.columns:
        v = dict(c)
        vaxpy(v, 1, shift)
        cols.append(vclean(v, F))
    return LinMap(q.ambient_dim, q.dim, tuple(cols), F)


def factor_through_cocenter(f: LinMap, M: Bicomodule) -> LinMap:
    """The unique f' with f = f'∘ζ; raises CocenterObstruction otherwise."""
    if f.cols != M.dim:
        raise ValueError("map domain must be the bicomodule")
    fc = tensor_map(f, M.base.identity())
    for m, w in enumerate(w_spanning_set(M)):
        img = fc(w)
        if img:
            raise CocenterObstruction(m, w, img)
    q, zeta = cocenter(M)
    f1 = f @ q.section
    if f1 @ zeta != f:
        raise ArithmeticError("factorization does not reproduce f")
    if f @ second_section(q) != f1:
        raise ArithmeticError("factorization depends on the section")
    return f1


# -- co-opposite and co-enveloping coalgebras -------------------------------

def coopposite(C: Coalgebra) -> Coalgebra:
    return Coalgebra(C.dim, twist(C.dim, C.dim, C.field) @ C.delta, C.counit, C.label + "_cop")


def tw23(n: int, m: int, F: Field) -> LinMap:
    """id ⊗ tw ⊗ id on A⊗B⊗A'⊗B' with dim A = dim A' = n, dim B = dim B' = m."""
    return tensor_maps(LinMap.identity(n, F), twist(n, m, F), LinMap.identity(m, F))


def tensor_coalgebra(A: Coalgebra, B: Coalgebra, label: str | None = None) -> Coalgebra:
    F = A.field
    d = tw23(A.dim, B.dim, F) @ tensor_map(A.delta, B.delta)
    return Coalgebra(A.dim * B.dim, d, tensor_map(A.counit, B.counit), label or f"{A.label}⊗{B.label}")


def coenveloping(C: Coalgebra) -> Coalgebra:
    """C^e = C ⊗ C_cop with tw₂₃∘(Δ⊗Δ_cop) and ε⊗ε."""
    return tensor_coalgebra(C, coopposite(C), f"{C.label}^e")


def is_cocommutative(C: Coalgebra) -> bool:
    return twist(C.dim, C.dim, C.field) @ C.delta == C.delta


__all__ = [
    "Bicomodule", "Coalgebra", "CocenterObstruction", "NotInSubspace", "cocenter", "coenveloping",
    "coopposite", "corestrict", "cotensor", "cotensor_map", "factor_through_cocenter", "fmt_vec",
    "is_cocommutative", "phi_matrix", "regular_bicomodule", "second_section", "tensor_coalgebra",
    "trivial_coalgebra", "unit_isomorphisms", "verify_anti_coalgebra_map", "verify_bicomodule",
    "verify_coalgebra", "verify_coalgebra_map", "verify_left_comodule", "verify_right_comodule",
    "w_spanning_set",
]
