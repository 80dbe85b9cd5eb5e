"""JSON structure documents: schema validation, exact parsing and round-trippable output.

A document names its field and carries any of ``coalgebra``, ``bicomodule``,
``bicoalgebroid``, ``bcc``, ``yd_module``, ``objects`` (C-bicomodules over the
document's bicoalgebroid base) and ``h_comodules``.  Matrices are dense,
row-major arrays of scalar strings.  Over Q a scalar is ``"p/q"`` or an integer
string; over F_p it is a residue ``"a"`` or ``"a mod p"``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from jsonschema import Draft202012Validator

from .bicoalgebroid import Bicoalgebroid, HComodule
from .coalgebra import Bicomodule, Coalgebra
from .exactlin import Field, Fp, LinMap, Q
from .yd import BCCData, YDModule

FORMAT_TAG = "bicoalg/1"
_Q_SCALAR = r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"
_FP_SCALAR = r"^[0-9]+( mod [0-9]+)?$"
_MOD = re.compile(r"^([0-9]+) mod ([0-9]+)$")


class DocumentError(ValueError):
    """Schema or consistency violation; ``pointer`` is a JSON pointer into the document."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.message = message
        self.pointer = pointer

    def to_json(self) -> dict:
        return {"error": "DocumentError", "pointer": self.pointer, "message": self.message}


# -- schema ----------------------------------------------------------------------

FIELD_SCHEMA = {
    "oneOf": [
        {"const": "Q"},
        {"type": "object", "required": ["Fp"], "additionalProperties": False,
         "properties": {"Fp": {"type": "integer", "minimum": 2}}},
    ]
}


def document_schema(F: Field = Q) -> dict:
    """The full document schema with the scalar syntax of ``F``."""
    scalar = {"type": "string", "pattern": _Q_SCALAR if F.p is None else _FP_SCALAR}
    matrix = {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/scalar"}}}
    dim = {"type": "integer", "minimum": 0}
    label = {"type": "string"}

    def obj(required, **props):
        return {"type": "object", "required": list(required), "additionalProperties": False,
                "properties": {**props, "label": {"$ref": "#/$defs/label"}}}

    M = {"$ref": "#/$defs/matrix"}
    defs = {
        "scalar": scalar,
        "matrix": matrix,
        "dim": dim,
        "label": label,
        "coalgebra": obj(["dim", "delta", "counit"], dim={"$ref": "#/$defs/dim"}, delta=M, counit=M),
        "bicomodule": obj(["dim", "lambda", "rho"], dim={"$ref": "#/$defs/dim"}, rho=M,
                          base={"$ref": "#/$defs/coalgebra"}, **{"lambda": M}),
        "h_comodule": obj(["dim", "lambda", "rho", "delta"], dim={"$ref": "#/$defs/dim"}, rho=M, delta=M,
                          **{"lambda": M}),
        "yd_module": obj(["space", "lambda", "rho", "action_total", "delta"], space={"$ref": "#/$defs/dim"},
                         rho=M, action_total=M, delta=M, **{"lambda": M}),
        "bicoalgebroid": obj(["base", "total", "alpha", "beta", "mu_total", "eta"],
                             base={"$ref": "#/$defs/coalgebra"}, total={"$ref": "#/$defs/coalgebra"},
                             alpha=M, beta=M, mu_total=M, eta=M),
        "bcc": obj(["coalgebra", "augmentation", "yd"], coalgebra={"$ref": "#/$defs/coalgebra"},
                   augmentation=M, yd={"$ref": "#/$defs/yd_module"}),
    }
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["field"],
        "additionalProperties": False,
        "anyOf": [{"required": [k]} for k in
                  ("coalgebra", "bicomodule", "bicoalgebroid", "bcc", "yd_module", "objects", "h_comodules")],
        "properties": {
            "format": {"const": FORMAT_TAG},
            "field": FIELD_SCHEMA,
            "coalgebra": {"$ref": "#/$defs/coalgebra"},
            "bicomodule": {"$ref": "#/$defs/bicomodule"},
            "bicoalgebroid": {"$ref": "#/$defs/bicoalgebroid"},
            "bcc": {"$ref": "#/$defs/bcc"},
            "yd_module": {"$ref": "#/$defs/yd_module"},
            "objects": {"type": "array", "items": {"$ref": "#/$defs/bicomodule"}},
            "h_comodules": {"type": "array", "items": {"$ref": "#/$defs/h_comodule"}},
        },
        "$defs": defs,
    }


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _validate(doc, schema) -> None:
    # report the deepest violation: it names the offending field most precisely
    errors = list(Draft202012Validator(schema).iter_errors(doc))
    if errors:
        e = max(errors, key=lambda e: len(e.absolute_path))
        raise DocumentError(e.message, _pointer(e.absolute_path))


# -- parsing ---------------------------------------------------------------------

def _scalar(s, F: Field, ptr: str):
    if F.p is not None:
        m = _MOD.match(s)
        if m:
            if int(m.group(2)) != F.p:
                raise DocumentError(f"scalar is tagged mod {m.group(2)} in an F_{F.p} document", ptr)
            s = m.group(1)
        if int(s) >= F.p:
            raise DocumentError(f"residue {s} is not in [0, {F.p})", ptr)
    return F.parse(s)


def parse_matrix(grid, rows: int, cols: int, F: Field, ptr: str) -> LinMap:
    if len(grid) != rows:
        raise DocumentError(f"expected {rows} rows, got {len(grid)}", ptr)
    columns = [dict() for _ in range(cols)]
    for i, row in enumerate(grid):
        if len(row) != cols:
            raise DocumentError(f"expected {cols} columns, got {len(row)}", f"{ptr}/{i}")
        for j, s in enumerate(row):
            x = _scalar(s, F, f"{ptr}/{i}/{j}")
            if x:
                columns[j][i] = x
    return LinMap(rows, cols, tuple(columns), F)


def parse_coalgebra(d: dict, F: Field, ptr: str) -> Coalgebra:
    n = d["dim"]
    return Coalgebra(n, parse_matrix(d["delta"], n * n, n, F, ptr + "/delta"),
                     parse_matrix(d["counit"], 1, n, F, ptr + "/counit"), d.get("label", "C"))


def parse_bicomodule(d: dict, C: Coalgebra, F: Field, ptr: str) -> Bicomodule:
    m, c = d["dim"], C.dim
    return Bicomodule(m, C, parse_matrix(d["lambda"], c * m, m, F, ptr + "/lambda"),
                      parse_matrix(d["rho"], m * c, m, F, ptr + "/rho"), d.get("label", "M"))


def parse_bicoalgebroid(d: dict, F: Field, ptr: str) -> Bicoalgebroid:
    C = parse_coalgebra(d["base"], F, ptr + "/base")
    H = parse_coalgebra(d["total"], F, ptr + "/total")
    n, c = H.dim, C.dim
    return Bicoalgebroid(
        C, H,
        parse_matrix(d["alpha"], c, n, F, ptr + "/alpha"),
        parse_matrix(d["beta"], c, n, F, ptr + "/beta"),
        parse_matrix(d["mu_total"], n, n * n, F, ptr + "/mu_total"),
        parse_matrix(d["eta"], n, c, F, ptr + "/eta"),
        d.get("label", "H"))


def parse_h_comodule(d: dict, B: Bicoalgebroid, ptr: str) -> HComodule:
    space = parse_bicomodule(d, B.base, B.field, ptr)
    delta = parse_matrix(d["delta"], B.n * space.dim, space.dim, B.field, ptr + "/delta")
    return HComodule(space, delta, space.label)


def parse_yd_module(d: dict, B: Bicoalgebroid, ptr: str) -> YDModule:
    F, m, c, n = B.field, d["space"], B.c, B.n
    space = Bicomodule(m, B.base, parse_matrix(d["lambda"], c * m, m, F, ptr + "/lambda"),
                       parse_matrix(d["rho"], m * c, m, F, ptr + "/rho"), d.get("label", "Z"))
    return YDModule(space, parse_matrix(d["action_total"], m, m * n, F, ptr + "/action_total"),
                    parse_matrix(d["delta"], n * m, m, F, ptr + "/delta"), space.label)


def parse_bcc(d: dict, B: Bicoalgebroid, ptr: str) -> BCCData:
    F = B.field
    D = parse_coalgebra(d["coalgebra"], F, ptr + "/coalgebra")
    if d["yd"]["space"] != D.dim:
        raise DocumentError(f"yd space has dimension {d['yd']['space']}, coalgebra has {D.dim}", ptr + "/yd/space")
    aug = parse_matrix(d["augmentation"], B.c, D.dim, F, ptr + "/augmentation")
    return BCCData(D, aug, parse_yd_module(d["yd"], B, ptr + "/yd"), d.get("label", D.label))


@dataclass
class Document:
    """A validated document.  Parts that live over a bicoalgebroid are bound on request."""

    field: Field
    raw: dict
    source: str = "<document>"
    _cache: dict = field(default_factory=dict, repr=False)

    def has(self, key: str) -> bool:
        return key in self.raw

    def _need(self, key: str):
        if key not in self.raw:
            raise DocumentError(f"{self.source} has no {key!r} entry", "")
        return self.raw[key]

    def coalgebra(self) -> Coalgebra:
        return parse_coalgebra(self._need("coalgebra"), self.field, "/coalgebra")

    def bicomodule(self, C: Coalgebra | None = None) -> Bicomodule:
        d = self._need("bicomodule")
        if C is None:
            if "base" not in d:
                raise DocumentError("a standalone bicomodule needs its base coalgebra", "/bicomodule")
            C = parse_coalgebra(d["base"], self.field, "/bicomodule/base")
        return parse_bicomodule(d, C, self.field, "/bicomodule")

    def bicoalgebroid(self) -> Bicoalgebroid:
        if "bico" not in self._cache:
            self._cache["bico"] = parse_bicoalgebroid(self._need("bicoalgebroid"), self.field, "/bicoalgebroid")
        return self._cache["bico"]

    def bcc(self, B: Bicoalgebroid) -> BCCData:
        return parse_bcc(self._need("bcc"), B, "/bcc")

    def yd_module(self, B: Bicoalgebroid) -> YDModule:
        return parse_yd_module(self._need("yd_module"), B, "/yd_module")

    def objects(self, C: Coalgebra) -> list:
        return [parse_bicomodule(d, C, self.field, f"/objects/{i}") for i, d in enumerate(self._need("objects"))]

    def h_comodules(self, B: Bicoalgebroid) -> list:
        return [parse_h_comodule(d, B, f"/h_comodules/{i}") for i, d in enumerate(self._need("h_comodules"))]


def parse_document(src) -> Document:
    """Parse a path, a JSON string, or an already-loaded dict."""
    source = "<document>"
    if isinstance(src, dict):
        doc = src
    else:
        text = src
        if isinstance(src, Path) or (isinstance(src, str) and not src.lstrip().startswith("{")):
            source = str(src)
            try:
                text = Path(src).read_text()
            except OSError as e:
                raise DocumentError(f"cannot read {src}: {e.strerror}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if "field" not in doc:
        raise DocumentError("'field' is a required property")
    errors = list(Draft202012Validator(FIELD_SCHEMA).iter_errors(doc["field"]))
    if errors:
        raise DocumentError("field must be \"Q\" or {\"Fp\": p}", "/field")
    if doc["field"] == "Q":
        F = Q
    else:
        try:
            F = Fp(doc["field"]["Fp"])
        except ValueError as e:
            raise DocumentError(str(e), "/field/Fp") from None
    _validate(doc, document_schema(F))
    return Document(F, doc, source)


# -- output ----------------------------------------------------------------------

def matrix_to_json(f: LinMap) -> list:
    F = f.field
    grid = [["0"] * f.cols for _ in range(f.rows)]
    for j, col in enumerate(f.columns):
        for i, x in col.items():
            grid[i][j] = F.format(x)
    return grid


def coalgebra_to_json(C: Coalgebra) -> dict:
    return {"dim": C.dim, "delta": matrix_to_json(C.delta), "counit": matrix_to_json(C.counit), "label": C.label}


def bicomodule_to_json(M: Bicomodule, with_base: bool = False) -> dict:
    out = {"dim": M.dim, "lambda": matrix_to_json(M.lam), "rho": matrix_to_json(M.rho), "label": M.label}
    if with_base:
        out["base"] = coalgebra_to_json(M.base)
    return out


def h_comodule_to_json(M: HComodule) -> dict:
    return {**bicomodule_to_json(M.space), "delta": matrix_to_json(M.delta), "label": M.label}


def bicoalgebroid_to_json(B: Bicoalgebroid) -> dict:
    return {"base": coalgebra_to_json(B.base), "total": coalgebra_to_json(B.total),
            "alpha": matrix_to_json(B.alpha), "beta": matrix_to_json(B.beta),
            "mu_total": matrix_to_json(B.mu_total), "eta": matrix_to_json(B.eta), "label": B.label}


def yd_module_to_json(Z: YDModule) -> dict:
    return {"space": Z.dim, "lambda": matrix_to_json(Z.space.lam), "rho": matrix_to_json(Z.space.rho),
            "action_total": matrix_to_json(Z.action_total), "delta": matrix_to_json(Z.delta), "label": Z.label}


def bcc_to_json(Dd: BCCData) -> dict:
    return {"coalgebra": coalgebra_to_json(Dd.coalgebra), "augmentation": matrix_to_json(Dd.augmentation),
            "yd": yd_module_to_json(Dd.yd), "label": Dd.label}


def to_document(F: Field, *, coalgebra=None, bicomodule=None, bicoalgebroid=None, bcc=None, yd_module=None,
                objects=None, h_comodules=None) -> dict:
    doc: dict = {"format": FORMAT_TAG, "field": F.to_json()}
    if coalgebra is not None:
        doc["coalgebra"] = coalgebra_to_json(coalgebra)
    if bicomodule is not None:
        doc["bicomodule"] = bicomodule_to_json(bicomodule, with_base=True)
    if bicoalgebroid is not None:
        doc["bicoalgebroid"] = bicoalgebroid_to_json(bicoalgebroid)
    if bcc is not None:
        doc["bcc"] = bcc_to_json(bcc)
    if yd_module is not None:
        doc["yd_module"] = yd_module_to_json(yd_module)
    if objects is not None:
        doc["objects"] = [bicomodule_to_json(M) for M in objects]
    if h_comodules is not None:
        doc["h_comodules"] = [h_comodule_to_json(M) for M in h_comodules]
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False)


__all__ = [
    "DocumentError", "Document", "FIELD_SCHEMA", "FORMAT_TAG", "bcc_to_json", "bicoalgebroid_to_json",
    "bicomodule_to_json", "coalgebra_to_json", "document_schema", "dumps", "h_comodule_to_json", "matrix_to_json",
    "parse_document", "parse_matrix", "to_document", "yd_module_to_json",
]
