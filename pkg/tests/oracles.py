"""Independent brute-force oracles used to derive frozen test values.

Nothing here imports the package: every routine works on plain nested lists
so that a bug in the sparse machinery cannot hide behind itself.
"""
from fractions import Fraction
from itertools import product


def dense_matmul(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def dense_tensor(a, b):
    """Kronecker product with row-major flattening."""
    return [[Fraction(a[i][j]) * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
            for i in range(len(a)) for k in range(len(b))]


def dense_rank(grid, p=None):
    """Row-reduction rank over Q (p is None) or F_p."""
    rows = [[(Fraction(x) if p is None else x % p) for x in r] for r in grid]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if p is None else pow(rows[r][c], -1, p)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                t = rows[i][c] * inv
                rows[i] = [(x - t * y) if p is None else (x - t * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def brute_kernel_size(grid, p):
    """Number of vectors in F_p^cols killed by ``grid``, by enumeration."""
    cols = len(grid[0])
    count = 0
    for x in product(range(p), repeat=cols):
        if all(sum(a * b for a, b in zip(row, x)) % p == 0 for row in grid):
            count += 1
    return count


def cayley_closure_ok(table):
    n = len(table)
    return all(table[table[a][b]][c] == table[a][table[b][c]] for a, b, c in product(range(n), repeat=3))


def composable_pairs(arrows):
    """Count pairs (f, g) with target(f) == source(g) for arrows given as (src, tgt)."""
    return sum(1 for f in arrows for g in arrows if f[1] == g[0])


def grouplike_cotensor_dim(n):
    """dim of span{x⊗y : x = y} inside the cotensor of the n-point grouplike coalgebra."""
    # e_x⊗e_y is in the equalizer iff e_x⊗e_x⊗e_y == e_x⊗e_y⊗e_y, i.e. x == y
    return sum(1 for x in range(n) for y in range(n) if (x, x, y) == (x, y, y))


def set_level_yd(mul, inv, act, phi):
    """All (x, g) with g⁻¹ φ(x) g != φ(x◁g), by enumeration."""
    bad = []
    for x in range(len(act)):
        for g in range(len(mul)):
            if mul[mul[inv[g]][phi[x]]][g] != phi[act[x][g]]:
                bad.append((x, g))
    return bad


def set_level_stabilizer(act, phi):
    return [x for x in range(len(act)) if act[x][phi[x]] != x]


def equalizer_dim(rho, lam, m, c, n):
    """dim ker(ρ⊗id − id⊗λ) on M⊗N, built entry by entry from dense coaction grids.

    ``rho`` is (m·c)×m, ``lam`` is (c·n)×n, both row-major.
    """
    rows = m * c * n
    grid = [[Fraction(0)] * (m * n) for _ in range(rows)]
    for a in range(m):
        for b in range(n):
            col = a * n + b
            for a2 in range(m):
                for k in range(c):
                    grid[(a2 * c + k) * n + b][col] += rho[a2 * c + k][a]
            for k in range(c):
                for b2 in range(n):
                    grid[(a * c + k) * n + b2][col] -= lam[k * n + b2][b]
    return m * n - dense_rank(grid)


def coassociative(delta, n):
    """Check Σ Δ-structure constants agree on both bracketings, by enumeration."""
    for x in range(n):
        for i, j, k in product(range(n), repeat=3):
            left = sum(Fraction(delta[a * n + k][x]) * delta[i * n + j][a] for a in range(n))
            right = sum(Fraction(delta[i * n + a][x]) * delta[j * n + k][a] for a in range(n))
            if left != right:
                return False
    return True


def phi_image_rank(lam, rho, m, c):
    """rank of span{slice_j ρ(e_x) − slice_j λ(e_x)} for a bicomodule of dim m over dim c."""
    gens = []
    for x in range(m):
        for j in range(c):
            gens.append([Fraction(rho[y * c + j][x]) - lam[j * m + y][x] for y in range(m)])
    return dense_rank(gens)
