"""Sparse evaluation of Sweedler-style composites on multi-leg tensors.

A tensor is a dict keyed by index tuples, one index per leg.  Each leg has a
type name (``"H"``, ``"C"``, ...) with a fixed dimension.  A *stage* is a
whitespace-separated list of tokens that consume the legs left to right:

* a type name is the identity on one leg of that type,
* ``tw`` swaps two adjacent legs,
* any registered operation consumes its input legs and emits its output legs.

Operations may carry a domain subspace.  Before a stage is applied, every
slice of the input through such an operation (all other legs fixed) is
checked for membership; a failure raises :class:`NotInCotensorDomain`.
Checked slices are then mapped through their domain coordinates, so only
the restriction of the matrix to the domain is ever used.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .exactlin import Field, LinMap, Subspace, vclean


class NotInCotensorDomain(ValueError):
    """A partially defined map was applied outside its cotensor domain."""

    def __init__(self, op: str, residual=None, context=None):
        super().__init__(f"argument of {op} is not in its cotensor domain")
        self.op = op
        self.residual = residual
        self.context = context


def flat_index(key, dims) -> int:
    i = 0
    for k, d in zip(key, dims):
        i = i * d + k
    return i


def unflat(i: int, dims) -> tuple:
    out = []
    for d in reversed(dims):
        i, r = divmod(i, d)
        out.append(r)
    return tuple(reversed(out))


@dataclass(eq=False)
class Op:
    name: str
    mat: LinMap
    ins: tuple
    outs: tuple
    domain: Subspace | None = None

    def __post_init__(self):
        self._cols: dict = {}
        self._rcols: dict = {}

    def column(self, j: int):
        c = self._cols.get(j)
        if c is None:
            out_dims = self.outs
            c = [(unflat(i, out_dims), x) for i, x in self.mat.columns[j].items()]
            self._cols[j] = c
        return c

    def restricted_column(self, i: int):
        """Output of the map on the i-th domain basis vector."""
        c = self._rcols.get(i)
        if c is None:
            acc: dict = {}
            for j, x in self.domain.basis[i].items():
                for okey, y in self.column(j):
                    acc[okey] = acc.get(okey, 0) + x * y
            c = [(k, v) for k, v in acc.items() if self.domain.field.norm(v)]
            c = [(k, self.domain.field.norm(v)) for k, v in c]
            self._rcols[i] = c
        return c


class Evaluator:
    """Typed leg evaluator over a fixed field."""

    def __init__(self, field: Field, types: Mapping[str, int], ops: Mapping[str, tuple] | None = None):
        self.field = field
        self.types = dict(types)
        self.ops: dict = {}
        self._stages: dict = {}
        for name, spec in (ops or {}).items():
            self.register(name, *spec)

    def register(self, name: str, mat: LinMap, ins: str, outs: str, domain: Subspace | None = None):
        ins_t, outs_t = tuple(ins), tuple(outs)
        in_dims = tuple(self.types[t] for t in ins_t)
        out_dims = tuple(self.types[t] for t in outs_t)
        n_in = _prod(in_dims)
        n_out = _prod(out_dims)
        if (mat.rows, mat.cols) != (n_out, n_in):
            raise ValueError(f"op {name}: matrix {mat.rows}x{mat.cols} does not match {outs}<-{ins}")
        self.ops[name] = (Op(name, mat, in_dims, out_dims, domain), ins_t, outs_t)
        self._stages.clear()

    def extend(self, types: Mapping[str, int] | None = None, ops: Mapping[str, tuple] | None = None) -> Evaluator:
        ev = Evaluator(self.field, {**self.types, **(types or {})})
        ev.ops = dict(self.ops)
        for name, spec in (ops or {}).items():
            ev.register(name, *spec)
        return ev

    def dims(self, legs) -> tuple:
        return tuple(self.types[t] for t in legs)

    # -- vectors -----------------------------------------------------------

    def basis(self, legs: str, *idx) -> dict:
        return {tuple(idx): self.field.coerce(1)}

    def from_flat(self, v: Mapping, legs: str) -> dict:
        dims = self.dims(legs)
        return {unflat(i, dims): x for i, x in v.items()}

    def to_flat(self, t: Mapping, legs: str) -> dict:
        dims = self.dims(legs)
        return {flat_index(k, dims): x for k, x in t.items()}

    def embed(self, S: Subspace, coords: Mapping, legs: str) -> dict:
        return self.from_flat(S.embed(coords), legs)

    # -- evaluation ----------------------------------------------------------

    def _parse(self, stage: str, legs: tuple):
        key = (stage, legs)
        got = self._stages.get(key)
        if got is not None:
            return got
        plan = []
        pos = 0
        out_legs: list = []
        for tok in stage.split():
            if tok in self.types:
                if pos >= len(legs) or legs[pos] != tok:
                    raise TypeError(f"stage {stage!r}: identity {tok} does not match legs {''.join(legs)}")
                out_legs.append(tok)
                pos += 1
            elif tok == "tw":
                if pos + 2 > len(legs):
                    raise TypeError(f"stage {stage!r}: tw runs past the legs")
                a, b = legs[pos], legs[pos + 1]
                plan.append(("tw", pos))
                out_legs += [b, a]
                pos += 2
            else:
                if tok not in self.ops:
                    raise KeyError(f"unknown operation {tok!r}")
                op, ins, outs = self.ops[tok]
                if tuple(legs[pos:pos + len(ins)]) != ins:
                    raise TypeError(f"stage {stage!r}: {tok} expects {''.join(ins)} at leg {pos}, "
                                    f"got {''.join(legs[pos:pos + len(ins)])}")
                plan.append((op, pos, len(ins), len(out_legs)))
                out_legs += list(outs)
                pos += len(ins)
        if pos != len(legs):
            raise TypeError(f"stage {stage!r} consumes {pos} of {len(legs)} legs {''.join(legs)}")
        got = (plan, tuple(out_legs))
        self._stages[key] = got
        return got

    def run(self, t: Mapping, legs: str, *stages: str):
        """Apply stages in order; returns ``(tensor, legs)``."""
        legs_t = tuple(legs)
        F = self.field
        for stage in stages:
            if stage.startswith("@"):
                order = [int(x) for x in stage[1:].split(",")]
                t = {tuple(k[o] for o in order): x for k, x in t.items()}
                legs_t = tuple(legs_t[o] for o in order)
                continue
            plan, out_legs = self._parse(stage, legs_t)
            for item in plan:
                if item[0] != "tw":
                    op, a, n, _ = item
                    if op.domain is not None:
                        _check_domain(t, op, a, n)
            # apply right to left so earlier leg positions stay valid
            for item in reversed(plan):
                if item[0] == "tw":
                    a = item[1]
                    t = {k[:a] + (k[a + 1], k[a]) + k[a + 2:]: x for k, x in t.items()}
                elif item[0].domain is not None:
                    t = _apply_restricted(t, *item[:3], F)
                else:
                    op, a, n, _ = item
                    acc: dict = {}
                    in_dims = op.ins
                    for k, x in t.items():
                        j = flat_index(k[a:a + n], in_dims)
                        pre, post = k[:a], k[a + n:]
                        for okey, y in op.column(j):
                            nk = pre + okey + post
                            acc[nk] = acc.get(nk, 0) + x * y
                    t = vclean(acc, F)
            legs_t = out_legs
        return t, "".join(legs_t)

    def eval(self, t: Mapping, legs: str, *stages: str) -> dict:
        return self.run(t, legs, *stages)[0]


def _check_domain(t: Mapping, op: Op, a: int, n: int) -> None:
    groups: dict = {}
    for k, x in t.items():
        other = k[:a] + k[a + n:]
        groups.setdefault(other, {})[flat_index(k[a:a + n], op.ins)] = x
    for other, sl in groups.items():
        r = op.domain.residual(sl)
        if r:
            raise NotInCotensorDomain(op.name, residual=r, context=other)


def _apply_restricted(t: Mapping, op: Op, a: int, n: int, F: Field) -> dict:
    """Apply ``op`` to already-checked slices through their domain coordinates."""
    index = op.domain._index
    acc: dict = {}
    for k, x in t.items():
        i = index.get(flat_index(k[a:a + n], op.ins))
        if i is None:
            continue
        pre, post = k[:a], k[a + n:]
        for okey, y in op.restricted_column(i):
            nk = pre + okey + post
            acc[nk] = acc.get(nk, 0) + x * y
    return vclean(acc, F)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def all_keys(dims):
    return product(*(range(d) for d in dims))
