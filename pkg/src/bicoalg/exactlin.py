"""Exact linear algebra over Q or a prime field F_p.

Linear maps are stored column-sparse: column ``j`` is a dict mapping row
indices to nonzero scalars.  The dense row-major grid is available through
``LinMap.entries``.  Vectors are sparse dicts ``{index: scalar}``.

Tensor products flatten row-major: ``index(i, j) = i * dim2 + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

Vec = dict  # sparse vector {int: scalar}


class NoPreimage(ValueError):
    """Raised when a vector is not in the image of a map."""


class NotInSubspace(ValueError):
    """Raised when a vector (or a column of a map) leaves a subspace."""

    def __init__(self, msg: str, column: int | None = None, vector: Vec | None = None):
        super().__init__(msg)
        self.column = column
        self.vector = vector


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def coerce(self, x) -> Fraction | int:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x % self.p if self.p is not None else x

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def parse(self, s) -> Fraction | int:
        if isinstance(s, str):
            return self.coerce(Fraction(s.strip()))
        if isinstance(s, int) and not isinstance(s, bool):
            return self.coerce(s)
        raise ValueError(f"scalar must be a string or integer, got {s!r}")

    def format(self, x) -> str:
        if self.p is None:
            return str(Fraction(x))
        return str(int(x) % self.p)

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"


Q = Field()


def Fp(p: int) -> Field:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return Field(p)


# -- sparse vector helpers -------------------------------------------------

def vclean(v: Mapping, F: Field) -> Vec:
    if F.p is None:
        return {k: x for k, x in v.items() if x != 0}
    out = {}
    for k, x in v.items():
        x %= F.p
        if x:
            out[k] = x
    return out


def vaxpy(acc: Vec, a, v: Mapping) -> None:
    """acc += a * v, in place, without normalization."""
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + a * x


def vsub(u: Mapping, v: Mapping, F: Field) -> Vec:
    out = dict(u)
    vaxpy(out, -1, v)
    return vclean(out, F)


def vscale(a, v: Mapping, F: Field) -> Vec:
    return vclean({k: a * x for k, x in v.items()}, F)


def dense(v: Mapping, n: int) -> list:
    return [v.get(i, 0) for i in range(n)]


def sparse(xs: Iterable, F: Field) -> Vec:
    return vclean({i: F.coerce(x) for i, x in enumerate(xs)}, F)


# -- linear maps ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinMap:
    """A linear map k^cols -> k^rows with exact entries."""

    rows: int
    cols: int
    columns: tuple
    field: Field = Q
    src_label: str | None = None
    tgt_label: str | None = None

    @classmethod
    def from_columns(cls, rows, columns, F=Q, src=None, tgt=None) -> LinMap:
        cols = tuple(vclean(c, F) for c in columns)
        for c in cols:
            if any(not 0 <= k < rows for k in c):
                raise ValueError("column entry outside target dimension")
        return cls(rows, len(cols), cols, F, src, tgt)

    @classmethod
    def from_dense(cls, grid, cols: int | None = None, F=Q, src=None, tgt=None) -> LinMap:
        grid = [list(r) for r in grid]
        rows = len(grid)
        if cols is None:
            if not rows:
                raise ValueError("empty grid needs an explicit column count")
            cols = len(grid[0])
        if any(len(r) != cols for r in grid):
            raise ValueError("ragged matrix")
        columns = [{} for _ in range(cols)]
        for i, r in enumerate(grid):
            for j, x in enumerate(r):
                x = F.coerce(x)
                if x:
                    columns[j][i] = x
        return cls(rows, cols, tuple(columns), F, src, tgt)

    @classmethod
    def identity(cls, n: int, F=Q, label=None) -> LinMap:
        return cls(n, n, tuple({i: F.coerce(1)} for i in range(n)), F, label, label)

    @classmethod
    def zero(cls, rows: int, cols: int, F=Q) -> LinMap:
        return cls(rows, cols, tuple({} for _ in range(cols)), F)

    @property
    def entries(self) -> list:
        grid = [[self.field.coerce(0)] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                grid[i][j] = x
        return grid

    def col(self, j: int) -> Vec:
        return self.columns[j]

    def __call__(self, v: Mapping) -> Vec:
        acc: Vec = {}
        for j, x in v.items():
            vaxpy(acc, x, self.columns[j])
        return vclean(acc, self.field)

    def compose(self, other: LinMap) -> LinMap:
        """self ∘ other."""
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} after {other.rows}x{other.cols}")
        if self.src_label and other.tgt_label and self.src_label != other.tgt_label:
            raise ValueError(f"label mismatch: {self.src_label} vs {other.tgt_label}")
        if self.field != other.field:
            raise ValueError("field mismatch")
        return LinMap(self.rows, other.cols, tuple(self(c) for c in other.columns),
                      self.field, other.src_label, self.tgt_label)

    __matmul__ = compose

    def _combine(self, other: LinMap, sign) -> LinMap:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.columns, other.columns):
            acc = dict(a)
            vaxpy(acc, sign, b)
            cols.append(vclean(acc, self.field))
        return LinMap(self.rows, self.cols, tuple(cols), self.field, self.src_label, self.tgt_label)

    def __add__(self, other: LinMap) -> LinMap:
        return self._combine(other, 1)

    def __sub__(self, other: LinMap) -> LinMap:
        return self._combine(other, -1)

    def scale(self, a) -> LinMap:
        a = self.field.coerce(a)
        return LinMap(self.rows, self.cols, tuple(vscale(a, c, self.field) for c in self.columns),
                      self.field, self.src_label, self.tgt_label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.columns, other.columns))

    def __hash__(self):
        return hash((self.rows, self.cols))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def transpose_rows(self) -> list:
        """Rows as sparse dicts keyed by column index."""
        rows = [{} for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def with_entry(self, i: int, j: int, x) -> LinMap:
        cols = list(self.columns)
        c = dict(cols[j])
        c[i] = self.field.coerce(x)
        cols[j] = vclean(c, self.field)
        return LinMap(self.rows, self.cols, tuple(cols), self.field, self.src_label, self.tgt_label)

    def entry(self, i: int, j: int):
        return self.columns[j].get(i, self.field.coerce(0))

    def __repr__(self):
        return f"LinMap({self.rows}x{self.cols}, {self.field})"


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    """f ⊗ g with row-major flattening on both sides."""
    if f.field != g.field:
        raise ValueError("field mismatch")
    cols = []
    for i in range(f.cols):
        fi = f.columns[i]
        for j in range(g.cols):
            gj = g.columns[j]
            cols.append(vclean({a * g.rows + b: x * y for a, x in fi.items() for b, y in gj.items()}, f.field))
    return LinMap(f.rows * g.rows, f.cols * g.cols, tuple(cols), f.field)


def tensor_maps(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return out


def twist(dim_v: int, dim_w: int, F: Field = Q) -> LinMap:
    """V ⊗ W -> W ⊗ V, e_i ⊗ e_j -> e_j ⊗ e_i."""
    one = F.coerce(1)
    cols = [{j * dim_v + i: one} for i in range(dim_v) for j in range(dim_w)]
    return LinMap(dim_v * dim_w, dim_v * dim_w, tuple(cols), F)


def permutation_map(dims: tuple, order: tuple, F: Field = Q) -> LinMap:
    """Permute tensor legs: output leg ``k`` is input leg ``order[k]``."""
    out_dims = [dims[o] for o in order]
    one = F.coerce(1)
    cols = []
    for key in product(*(range(d) for d in dims)):
        out = 0
        for o, d in zip(order, out_dims):
            out = out * d + key[o]
        cols.append({out: one})
    return LinMap(len(cols), len(cols), tuple(cols), F)


# -- echelon machinery ------------------------------------------------------

def _reduce(v: Vec, piv: dict, F: Field) -> Vec:
    """Eliminate pivot positions from ``v`` using echelon rows (pivot = min key)."""
    v = dict(v)
    while v:
        hits = [k for k in v if k in piv]
        if not hits:
            break
        k = min(hits)
        vaxpy(v, -v[k], piv[k])
        v = vclean(v, F)
    return v


def rref(vectors: Iterable[Mapping], F: Field) -> dict:
    """Reduced echelon form of a family of sparse vectors.

    Returns ``{pivot: row}``: each row is 1 at its pivot (its least index)
    and 0 at every other pivot.
    """
    piv: dict = {}
    for v in vectors:
        v = _reduce(vclean(v, F), piv, F)
        if not v:
            continue
        p = min(v)
        v = vscale(F.inv(v[p]), v, F)
        piv[p] = v
    for q in sorted(piv, reverse=True):
        v = piv[q]
        hits = [k for k in v if k != q and k in piv]
        if hits:
            for k in hits:
                vaxpy(v, -v[k], piv[k])
            piv[q] = vclean(v, F)
    return piv


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^ambient_dim with a canonical reduced echelon basis."""

    ambient_dim: int
    basis: tuple  # sparse vectors, sorted by pivot
    pivots: tuple
    field: Field = Q
    ambient_label: str | None = None
    _index: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index and self.pivots:
            self._index.update({p: i for i, p in enumerate(self.pivots)})

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping], F: Field = Q, label=None) -> Subspace:
        piv = rref(vectors, F)
        order = sorted(piv)
        return cls(ambient_dim, tuple(piv[p] for p in order), tuple(order), F, label,
                   {p: i for i, p in enumerate(order)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def inclusion(self) -> LinMap:
        return LinMap(self.ambient_dim, self.dim, self.basis, self.field, None, self.ambient_label)

    @property
    def reader(self) -> LinMap:
        """The pivot-reading map k^ambient -> k^dim; equals coordinates on members."""
        one = self.field.coerce(1)
        cols = [{} for _ in range(self.ambient_dim)]
        for i, p in enumerate(self.pivots):
            cols[p] = {i: one}
        return LinMap(self.dim, self.ambient_dim, tuple(cols), self.field, self.ambient_label)

    def residual(self, v: Mapping) -> Vec:
        r = dict(v)
        for k, x in v.items():
            i = self._index.get(k)
            if i is not None:
                vaxpy(r, -x, self.basis[i])
        return vclean(r, self.field)

    def contains(self, v: Mapping) -> bool:
        return not self.residual(v)

    def coords(self, v: Mapping) -> Vec:
        if not self.contains(v):
            raise NotInSubspace("vector is not in the subspace", vector=dict(v))
        return {self._index[k]: x for k, x in v.items() if k in self._index}

    def embed(self, c: Mapping) -> Vec:
        acc: Vec = {}
        for i, x in c.items():
            vaxpy(acc, x, self.basis[i])
        return vclean(acc, self.field)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis


@dataclass(frozen=True, eq=False)
class Quotient:
    """k^ambient_dim modulo ``image``, using pivot-complement coordinates."""

    ambient_dim: int
    image: Subspace
    complement: tuple  # non-pivot ambient indices, in order
    field: Field = Q

    @property
    def dim(self) -> int:
        return len(self.complement)

    @property
    def image_rank(self) -> int:
        return self.image.dim

    def project(self, v: Mapping) -> Vec:
        r = self.image.residual(v)
        pos = {k: i for i, k in enumerate(self.complement)}
        return {pos[k]: x for k, x in r.items()}

    @property
    def projection(self) -> LinMap:
        one = self.field.coerce(1)
        return LinMap(self.dim, self.ambient_dim,
                      tuple(self.project({i: one}) for i in range(self.ambient_dim)), self.field)

    @property
    def section(self) -> LinMap:
        one = self.field.coerce(1)
        return LinMap(self.ambient_dim, self.dim, tuple({k: one} for k in self.complement), self.field)


def column_reduce(f: LinMap):
    """Column elimination with tracking.

    Returns ``(image_rows, kernel_vectors)``: echelon image columns keyed by
    pivot row and a kernel basis expressed in the source coordinates.
    """
    F = f.field
    piv: dict = {}  # pivot row -> (column, combination)
    kern = []
    for j, c in enumerate(f.columns):
        v = dict(c)
        comb = {j: F.coerce(1)}
        while v:
            r = min(v)
            if r not in piv:
                a = F.inv(v[r])
                piv[r] = (vscale(a, v, F), vscale(a, comb, F))
                break
            pv, pc = piv[r]
            x = v[r]
            vaxpy(v, -x, pv)
            v = vclean(v, F)
            vaxpy(comb, -x, pc)
            comb = vclean(comb, F)
        else:
            kern.append(comb)
    return {r: pv for r, (pv, _) in piv.items()}, kern


def rank(f: LinMap) -> int:
    return len(column_reduce(f)[0])


def kernel(f: LinMap) -> Subspace:
    """ker f with a basis in reduced column echelon form."""
    _, kern = column_reduce(f)
    return Subspace.span(f.cols, kern, f.field, f.src_label)


def image(f: LinMap) -> Subspace:
    img, _ = column_reduce(f)
    return Subspace.span(f.rows, img.values(), f.field, f.tgt_label)


def cokernel(f: LinMap) -> Quotient:
    img = image(f)
    piv = set(img.pivots)
    comp = tuple(i for i in range(f.rows) if i not in piv)
    return Quotient(f.rows, img, comp, f.field)


def solve_preimage(f: LinMap, v: Mapping) -> Vec:
    """The least-pivot solution x of f(x) = v; free coordinates are zero."""
    F = f.field
    rows = f.transpose_rows()
    n = f.cols
    aug = []
    for i, r in enumerate(rows):
        r = dict(r)
        if v.get(i, 0):
            r[n] = F.coerce(v[i])
        aug.append(r)
    for i in v:
        if not 0 <= i < f.rows:
            raise ValueError("vector index outside target dimension")
    piv = rref(aug, F)
    if n in piv:
        raise NoPreimage("vector is not in the image")
    return vclean({p: r.get(n, 0) for p, r in piv.items()}, F)


def corestrict_map(f: LinMap, S: Subspace) -> LinMap:
    """g with S.inclusion ∘ g = f; raises NotInSubspace naming the bad column."""
    cols = []
    for j, c in enumerate(f.columns):
        if not S.contains(c):
            raise NotInSubspace(f"column {j} leaves the subspace", column=j, vector=dict(c))
        cols.append(S.coords(c))
    return LinMap(S.dim, f.cols, tuple(cols), f.field, f.src_label, None)
