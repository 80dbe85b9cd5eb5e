"""Concrete groups, G-sets, groupoids and the structures built from them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from .bicoalgebroid import Bicoalgebroid
from .coalgebra import Bicomodule, Coalgebra, coopposite, regular_bicomodule, tensor_coalgebra, trivial_coalgebra
from .exactlin import Field, LinMap, Q, tensor_map
from .yd import BCCData, LeftYDModule, bcc_from_parts, yd_unit


class SetLevelViolation(ValueError):
    """A G-set with coaction φ breaks g⁻¹φ(x)g = φ(x◁g) or x◁φ(x) = x."""

    def __init__(self, condition: str, where: tuple):
        super().__init__(f"{condition} fails at {where}")
        self.condition = condition
        self.where = where


# -- groups -------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its Cayley table ``table[a][b] = ab``."""

    table: tuple
    identity: int = 0
    name: str = "G"
    inverse: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.table)
        if any(len(r) != n for r in self.table):
            raise ValueError("Cayley table must be square")
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise ValueError(f"{e} is not an identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(f"not associative at {(a, b, c)}")
        inv = []
        for a in range(n):
            found = [b for b in range(n) if self.table[a][b] == e]
            if len(found) != 1:
                raise ValueError(f"{a} has no unique inverse")
            inv.append(found[0])
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, g: int) -> int:
        """g⁻¹ x g"""
        return self.mul(self.mul(self.inv(g), x), g)

    def elements(self) -> range:
        return range(self.order)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order; (ab)(i) = a(b(i))."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(a[b[i]] for i in range(n))] for b in perms) for a in perms)
    return FiniteGroup(table, 0, f"S{n}")


def group_by_name(name: str) -> FiniteGroup:
    """``Z<n>`` for cyclic groups or ``S<n>`` for symmetric groups."""
    kind, rest = name[:1].upper(), name[1:]
    if not rest.isdigit() or int(rest) < 1:
        raise ValueError(f"unknown group {name!r}")
    if kind == "Z":
        return cyclic_group(int(rest))
    if kind == "S":
        return symmetric_group(int(rest))
    raise ValueError(f"unknown group {name!r}")


# -- G-sets -------------------------------------------------------------------

@dataclass(frozen=True)
class GSet:
    """A right G-set ``act[x][g] = x◁g`` with an optional map φ: X -> G."""

    group: FiniteGroup
    act: tuple
    phi: tuple | None = None

    def __post_init__(self):
        G = self.group
        if any(len(r) != G.order for r in self.act):
            raise ValueError("action table needs one column per group element")
        for x in range(self.size):
            if self.act[x][G.identity] != x:
                raise ValueError(f"x◁e != x at x={x}")
            for g in G.elements():
                for h in G.elements():
                    if self.act[self.act[x][g]][h] != self.act[x][G.mul(g, h)]:
                        raise ValueError(f"action not associative at {(x, g, h)}")
        if self.phi is not None and len(self.phi) != self.size:
            raise ValueError("phi needs one value per point")

    @property
    def size(self) -> int:
        return len(self.act)

    def yd_violations(self) -> list:
        """Pairs (x, g) with g⁻¹φ(x)g != φ(x◁g)."""
        G = self.group
        return [(x, g) for x in range(self.size) for g in G.elements()
                if G.conj(self.phi[x], g) != self.phi[self.act[x][g]]]

    def stabilizer_violations(self) -> list:
        """Points x with x◁φ(x) != x."""
        return [x for x in range(self.size) if self.act[x][self.phi[x]] != x]

    def check_set_level(self) -> None:
        if self.phi is None:
            return
        bad = self.yd_violations()
        if bad:
            raise SetLevelViolation("g⁻¹φ(x)g = φ(x◁g)", bad[0])
        bad = self.stabilizer_violations()
        if bad:
            raise SetLevelViolation("x◁φ(x) = x", (bad[0],))

    def with_phi(self, phi) -> GSet:
        return GSet(self.group, self.act, tuple(phi))


def regular_gset(G: FiniteGroup, phi=None) -> GSet:
    return GSet(G, tuple(tuple(G.mul(x, g) for g in G.elements()) for x in G.elements()),
                None if phi is None else tuple(phi))


def conjugation_gset(G: FiniteGroup) -> GSet:
    """X = G with x◁g = g⁻¹xg and φ = id."""
    return GSet(G, tuple(tuple(G.conj(x, g) for g in G.elements()) for x in G.elements()),
                tuple(G.elements()))


def trivial_phi(X: GSet) -> GSet:
    return X.with_phi([X.group.identity] * X.size)


def swap_gset() -> GSet:
    """Z/2 acting on {a, b} by swapping, φ ≡ e."""
    G = cyclic_group(2)
    return GSet(G, ((0, 1), (1, 0)), (0, 0))


def random_gset(rng: random.Random, max_group: int = 6, max_set: int = 6) -> GSet:
    """A random right G-set built as a disjoint union of coset spaces, with a random φ."""
    G = rng.choice([g for g in (cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
                                cyclic_group(5), cyclic_group(6), symmetric_group(3)) if g.order <= max_group])
    subgroups = _subgroups(G)
    points: list = []  # (orbit id, coset representative set)
    orbits = []
    while True:
        H = rng.choice(subgroups)
        cosets = _right_cosets(G, H)
        if len(points) + len(cosets) > max_set:
            break
        base = len(points)
        orbits.append((base, cosets))
        points.extend(cosets)
        if rng.random() < 0.4:
            break
    if not points:
        cosets = _right_cosets(G, G.elements())
        orbits.append((0, cosets))
        points.extend(cosets)
    act = []
    for base, cosets in orbits:
        lookup = {c: i for i, c in enumerate(cosets)}
        for c in cosets:
            rep = min(c)
            act.append(tuple(base + lookup[_coset_of(G, cosets, G.mul(rep, g))] for g in G.elements()))
    X = GSet(G, tuple(act))
    mode = rng.random()
    if mode < 0.3:
        return trivial_phi(X)
    if mode < 0.6:
        return X.with_phi(_equivariant_phi(X, rng) or [G.identity] * X.size)
    return X.with_phi([rng.randrange(G.order) for _ in range(X.size)])


def _subgroups(G: FiniteGroup) -> list:
    subs = set()
    for a in G.elements():
        for b in G.elements():
            S = {G.identity}
            frontier = [a, b]
            while frontier:
                x = frontier.pop()
                if x in S:
                    continue
                S.add(x)
                frontier.extend(G.mul(x, y) for y in list(S))
                frontier.extend(G.mul(y, x) for y in list(S))
            subs.add(frozenset(S))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def _right_cosets(G: FiniteGroup, H) -> list:
    seen, out = set(), []
    for g in G.elements():
        c = frozenset(G.mul(h, g) for h in H)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _coset_of(G, cosets, x):
    for c in cosets:
        if x in c:
            return c
    raise AssertionError("element in no coset")


def _equivariant_phi(X: GSet, rng: random.Random):
    """Try to pick φ orbit by orbit so that g⁻¹φ(x)g = φ(x◁g); None if the attempt fails."""
    G = X.group
    phi = [None] * X.size
    for x in range(X.size):
        if phi[x] is not None:
            continue
        candidates = list(G.elements())
        rng.shuffle(candidates)
        for z in candidates:
            trial = {}
            ok = True
            for g in G.elements():
                y = X.act[x][g]
                w = G.conj(z, g)
                if trial.get(y, w) != w:
                    ok = False
                    break
                trial[y] = w
            if ok:
                for y, w in trial.items():
                    phi[y] = w
                break
        else:
            return None
    return phi


# -- groupoids ------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroupoid:
    """Arrows ``(source, target)``; ``compose[(f, g)]`` is "f then g" when target(f) = source(g)."""

    objects: int
    arrows: tuple
    compose: dict = field(hash=False)
    identities: tuple = ()

    def __post_init__(self):
        for (f, g), h in self.compose.items():
            if self.arrows[f][1] != self.arrows[g][0]:
                raise ValueError(f"({f}, {g}) is not composable")
            if self.arrows[h] != (self.arrows[f][0], self.arrows[g][1]):
                raise ValueError(f"composite of ({f}, {g}) has the wrong ends")
        for f, (s, t) in enumerate(self.arrows):
            for g, (s2, _) in enumerate(self.arrows):
                if t == s2 and (f, g) not in self.compose:
                    raise ValueError(f"missing composite ({f}, {g})")
        for x, i in enumerate(self.identities):
            if self.arrows[i] != (x, x):
                raise ValueError(f"identity {i} is not a loop at {x}")
            for f, (s, t) in enumerate(self.arrows):
                if s == x and self.compose[(i, f)] != f:
                    raise ValueError("left identity law fails")
                if t == x and self.compose[(f, i)] != f:
                    raise ValueError("right identity law fails")
        for (f, g), h in self.compose.items():
            for k, (s, _) in enumerate(self.arrows):
                if s == self.arrows[g][1]:
                    if self.compose[(h, k)] != self.compose[(f, self.compose[(g, k)])]:
                        raise ValueError("composition not associative")
        for f, (s, t) in enumerate(self.arrows):
            if not any(self.compose[(f, g)] == self.identities[s] for g, (s2, _) in enumerate(self.arrows)
                       if s2 == t):
                raise ValueError(f"arrow {f} is not invertible")

    def composable_pairs(self) -> list:
        return sorted(self.compose)


def action_groupoid(X: GSet) -> FiniteGroupoid:
    """Arrows (x, g): x -> x◁g indexed by x·|G| + g; (x,g) then (x◁g,g') is (x, gg')."""
    G = X.group
    n = G.order
    arrows = tuple((x, X.act[x][g]) for x in range(X.size) for g in G.elements())
    compose = {}
    for x in range(X.size):
        for g in G.elements():
            y = X.act[x][g]
            for g2 in G.elements():
                compose[(x * n + g, y * n + g2)] = x * n + G.mul(g, g2)
    ids = tuple(x * n + G.identity for x in range(X.size))
    return FiniteGroupoid(X.size, arrows, compose, ids)


def group_as_groupoid(G: FiniteGroup) -> FiniteGroupoid:
    compose = {(a, b): G.mul(a, b) for a in G.elements() for b in G.elements()}
    return FiniteGroupoid(1, tuple((0, 0) for _ in G.elements()), compose, (G.identity,))


# -- coalgebras -------------------------------------------------------------------

def grouplike(n: int, F: Field = Q) -> Coalgebra:
    """The linearized set {0..n-1}: Δx = x⊗x, ε(x) = 1."""
    one = F.coerce(1)
    delta = LinMap(n * n, n, tuple({x * n + x: one} for x in range(n)), F)
    counit = LinMap(1, n, tuple({0: one} for _ in range(n)), F)
    return Coalgebra(n, delta, counit, f"grouplike{n}")


def dual_group_hopf(G: FiniteGroup, F: Field = Q) -> Coalgebra:
    """k^G: Δe_x = Σ_{ab=x} e_a⊗e_b, ε(e_x) = [x = e]."""
    n = G.order
    one = F.coerce(1)
    cols = [{} for _ in range(n)]
    for a in G.elements():
        for b in G.elements():
            cols[G.mul(a, b)][a * n + b] = one
    counit = LinMap(1, n, tuple({0: one} if x == G.identity else {} for x in range(n)), F)
    return Coalgebra(n, LinMap(n * n, n, tuple(cols), F), counit, f"k^{G.name}")


def divided_power(n: int, F: Field = Q) -> Coalgebra:
    """Δx_k = Σ_{i+j=k} x_i⊗x_j, ε(x_k) = [k = 0]; not cosemisimple for n ≥ 2."""
    one = F.coerce(1)
    cols = tuple({i * n + (k - i): one for i in range(k + 1)} for k in range(n))
    counit = LinMap(1, n, tuple({0: one} if k == 0 else {} for k in range(n)), F)
    return Coalgebra(n, LinMap(n * n, n, cols, F), counit, f"divided{n}")


# -- random bicomodules ------------------------------------------------------------

def _unimodular(rng: random.Random, n: int, F: Field) -> tuple:
    """A random integer matrix of determinant 1 and its inverse, as L·U with unit diagonals."""
    L = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
    P = LinMap.from_dense(L, F=F) @ LinMap.from_dense(U, F=F)
    Li = _unit_triangular_inverse(L, lower=True)
    Ui = _unit_triangular_inverse(U, lower=False)
    return P, LinMap.from_dense(Ui, F=F) @ LinMap.from_dense(Li, F=F)


def _unit_triangular_inverse(T, lower: bool):
    n = len(T)
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    order = range(n) if lower else range(n - 1, -1, -1)
    for i in order:
        for j in range(n):
            acc = inv[i][j]
            for k in (range(i) if lower else range(i + 1, n)):
                acc -= T[i][k] * inv[k][j]
            inv[i][j] = acc
    return inv


def conjugate_bicomodule(M: Bicomodule, P: LinMap, P_inv: LinMap) -> Bicomodule:
    """Transport the coactions along the basis change P."""
    I = M.base.identity()
    return Bicomodule(M.dim, M.base, tensor_map(I, P) @ M.lam @ P_inv, tensor_map(P, I) @ M.rho @ P_inv, M.label)


def bigraded_bicomodule(C: Coalgebra, grades) -> Bicomodule:
    """Over a grouplike coalgebra: basis vector m has left grade grades[m][0] and right grade grades[m][1]."""
    F = C.field
    one = F.coerce(1)
    c, m = C.dim, len(grades)
    lam = LinMap(c * m, m, tuple({a * m + i: one} for i, (a, _) in enumerate(grades)), F)
    rho = LinMap(m * c, m, tuple({i * c + b: one} for i, (_, b) in enumerate(grades)), F)
    return Bicomodule(m, C, lam, rho, "bigraded")


def outer_bicomodule(C: Coalgebra) -> Bicomodule:
    """C⊗C with the left coaction on the first leg and the right coaction on the second."""
    I = C.identity()
    lam = tensor_map(C.delta, I)
    rho = tensor_map(I, C.delta)
    return Bicomodule(C.dim * C.dim, C, lam, rho, f"{C.label}⊗{C.label}")


def random_bicomodule(rng: random.Random, max_dim: int = 4, max_base: int = 3, F: Field = Q) -> Bicomodule:
    """A random bicomodule with dim M ≤ max_dim over a coalgebra of dim ≤ max_base, in a scrambled basis."""
    kinds = ["bigraded", "regular", "outer"]
    kind = rng.choice(kinds)
    if kind == "bigraded":
        C = grouplike(rng.randint(1, max_base), F)
        m = rng.randint(1, max_dim)
        M = bigraded_bicomodule(C, [(rng.randrange(C.dim), rng.randrange(C.dim)) for _ in range(m)])
    else:
        pool = [grouplike(2, F), dual_group_hopf(cyclic_group(2), F), divided_power(2, F)]
        if kind == "regular":
            pool += [grouplike(3, F), dual_group_hopf(cyclic_group(3), F), divided_power(3, F)]
        pool = [C for C in pool if C.dim <= max_base and (C.dim if kind == "regular" else C.dim ** 2) <= max_dim]
        if not pool:
            return random_bicomodule(rng, max_dim, max_base, F)
        C = rng.choice(pool)
        M = regular_bicomodule(C) if kind == "regular" else outer_bicomodule(C)
    P, P_inv = _unimodular(rng, M.dim, F)
    return conjugate_bicomodule(M, P, P_inv)


def group_hopf(G: FiniteGroup, F: Field = Q) -> Bicoalgebroid:
    """k[G] over the ground field: group-like basis, Cayley multiplication, unit e."""
    n = G.order
    one = F.coerce(1)
    H = grouplike(n, F)
    H = Coalgebra(n, H.delta, H.counit, f"k[{G.name}]")
    k = trivial_coalgebra(F)
    mu = LinMap(n, n * n, tuple({G.mul(a, b): one} for a in G.elements() for b in G.elements()), F)
    eta = LinMap(n, 1, ({G.identity: one},), F)
    return Bicoalgebroid(k, H, H.counit, H.counit, mu, eta, H.label)


def coenveloping_bico(C: Coalgebra) -> Bicoalgebroid:
    """C_cop ⊗ C as a left bicoalgebroid over C.

    α(a⊗b) = ε(a) b, β(a⊗b) = a ε(b), μ(a⊗b ⊠ a'⊗b') = ε(a) ε(b') a'⊗b,
    η(c) = c_(2) ⊗ c_(1).
    """
    F = C.field
    n = C.dim
    H = tensor_coalgebra(coopposite(C), C, f"{C.label}_cop⊗{C.label}")
    eps = [C.counit.columns[i].get(0, 0) for i in range(n)]
    a_cols, b_cols = [], []
    for a in range(n):
        for b in range(n):
            a_cols.append({b: eps[a]} if eps[a] else {})
            b_cols.append({a: eps[b]} if eps[b] else {})
    alpha = LinMap.from_columns(n, a_cols, F)
    beta = LinMap.from_columns(n, b_cols, F)
    mu_cols = []
    for a in range(n):
        for b in range(n):
            for a2 in range(n):
                for b2 in range(n):
                    x = F.norm(eps[a] * eps[b2])
                    mu_cols.append({a2 * n + b: x} if x else {})
    mu = LinMap.from_columns(n * n, mu_cols, F)
    eta_cols = []
    for c in range(n):
        v = {}
        for k, x in C.delta.columns[c].items():
            c1, c2 = divmod(k, n)
            v[c2 * n + c1] = v.get(c2 * n + c1, 0) + x
        eta_cols.append(v)
    eta = LinMap.from_columns(n * n, eta_cols, F)
    return Bicoalgebroid(C, H, alpha, beta, mu, eta, H.label)


def finite_groupoid_bico(Gpd: FiniteGroupoid, F: Field = Q) -> Bicoalgebroid:
    """Grouplike coalgebras on arrows over objects; α = source, β = target, μ = composition."""
    one = F.coerce(1)
    m = len(Gpd.arrows)
    C = grouplike(Gpd.objects, F)
    H = grouplike(m, F)
    H = Coalgebra(m, H.delta, H.counit, "arrows")
    alpha = LinMap(Gpd.objects, m, tuple({s: one} for s, _ in Gpd.arrows), F)
    beta = LinMap(Gpd.objects, m, tuple({t: one} for _, t in Gpd.arrows), F)
    mu = LinMap(m, m * m, tuple({Gpd.compose[(f, g)]: one} if (f, g) in Gpd.compose else {}
                                for f in range(m) for g in range(m)), F)
    eta = LinMap(m, Gpd.objects, tuple({i: one} for i in Gpd.identities), F)
    return Bicoalgebroid(C, H, alpha, beta, mu, eta, "groupoid")


# -- braided cocommutative coalgebras ------------------------------------------------

def action_groupoid_bcc(X: GSet, F: Field = Q, check_set_level: bool = True):
    """Linearized G-set: grouplike D on X, x◁g from the table, δ(x) = φ(x) ⊗ x, over k[G]."""
    if X.phi is None:
        raise ValueError("the G-set needs a coaction map phi")
    if check_set_level:
        X.check_set_level()
    G = X.group
    B = group_hopf(G, F)
    one = F.coerce(1)
    n, m = G.order, X.size
    D = grouplike(m, F)
    act = LinMap(m, m * n, tuple({X.act[x][g]: one} for x in range(m) for g in range(n)), F)
    delta = LinMap(n * m, m, tuple({X.phi[x] * m + x: one} for x in range(m)), F)
    return bcc_from_parts(D, D.counit, act, delta, B), B


def conjugation_bcc(G: FiniteGroup, F: Field = Q):
    """k^G with e_x ◁ g = e_{g⁻¹xg} and δ(e_x) = x ⊗ e_x, over k[G]."""
    B = group_hopf(G, F)
    one = F.coerce(1)
    n = G.order
    D = dual_group_hopf(G, F)
    act = LinMap(n, n * n, tuple({G.conj(x, g): one} for x in range(n) for g in range(n)), F)
    delta = LinMap(n * n, n, tuple({x * n + x: one} for x in range(n)), F)
    return bcc_from_parts(D, D.counit, act, delta, B), B


def regular_bcc(G: FiniteGroup, F: Field = Q):
    """k[G] as a BCC over itself: right multiplication and the adjoint coaction g ↦ e ⊗ g."""
    B = group_hopf(G, F)
    n = G.order
    one = F.coerce(1)
    D = grouplike(n, F)
    act = B.mu_total
    delta = LinMap(n * n, n, tuple({G.identity * n + g: one} for g in range(n)), F)
    return bcc_from_parts(D, D.counit, act, delta, B), B


def regular_left_yd(G: FiniteGroup, F: Field = Q):
    """k[G] with left multiplication and the adjoint coaction h_(1)S(h_(3)) ⊗ h_(2) = e ⊗ g."""
    B = group_hopf(G, F)
    n = G.order
    one = F.coerce(1)
    D = B.total
    space = Bicomodule(n, B.base, B.lam_L, B.rho_L, D.label)
    delta = LinMap(n * n, n, tuple({G.identity * n + g: one} for g in range(n)), F)
    return LeftYDModule(space, B.mu_total, delta, D.label), B


def unit_bcc(B: Bicoalgebroid):
    """C itself as a BCC over B: identity augmentation, c◁h = ε(c) β(h), the unit coaction."""
    C = B.base
    return BCCData(C, C.identity(), yd_unit(B), C.label)
