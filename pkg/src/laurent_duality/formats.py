"""Reading and writing module (.mod) and algebra (.alg) files.

Both are JSON documents checked against the schemas in ``schemas/``.  Scalars
are strings such as ``"-3/2"`` or ``"z^2 + 1"`` (z a primitive root of unity);
center elements are polynomials in the declared center variable names.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import List, Optional, Union

import jsonschema

from .crossed import CharacterGroup, Cocycle, CrossedAlgebra, CrossedError, CrossedModule, build_crossed, check_module, induced_module
from .finmod import FinLengthModule, ModuleError
from .laurent import Lattice
from .scalars import Field, FieldMismatchError, ParseError
from .zalg import AlgebraError, CenterRing, FinDimModule, ZFiniteAlgebra, build_algebra


class InputError(ValueError):
    """An input file is malformed or describes an inconsistent object."""


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files(__package__).joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def digest(path: Union[str, Path]) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _read(path: Union[str, Path]) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc.msg}, line {exc.lineno})") from exc


def _check(doc: dict, kind: str, path) -> None:
    try:
        jsonschema.validate(doc, schema(kind))
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "top level"
        raise InputError(f"{path}: {exc.message} (at {where})") from exc


def _field(doc: dict, override: Optional[Field]) -> Field:
    if override is not None:
        return override
    try:
        return Field.from_string(doc["field"])
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def _matrix(f: Field, rows):
    return [[f.parse(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# modules


def module_from_doc(doc: dict, field: Optional[Field] = None) -> FinLengthModule:
    f = _field(doc, field)
    try:
        return FinLengthModule(f, int(doc["rank"]), [_matrix(f, t) for t in doc["operators"]], dim=int(doc["dim"]))
    except (ParseError, FieldMismatchError, ModuleError) as exc:
        raise InputError(str(exc)) from exc


def load_module(path, field: Optional[Field] = None) -> FinLengthModule:
    doc = _read(path)
    _check(doc, "module", path)
    return module_from_doc(doc, field)


def module_to_doc(m: FinLengthModule, name: str = "module") -> dict:
    return {"kind": "module", "name": name, **m.to_dict()}


def write_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# algebras


@dataclass
class LoadedZalg:
    algebra: ZFiniteAlgebra
    modules: List[FinDimModule] = dc_field(default_factory=list)


@dataclass
class LoadedCrossed:
    algebra: CrossedAlgebra
    modules: List[CrossedModule] = dc_field(default_factory=list)
    name: str = "crossed"


def algebra_from_doc(doc: dict, field: Optional[Field] = None) -> Union[LoadedZalg, LoadedCrossed]:
    f = _field(doc, field)
    try:
        if doc["kind"] == "crossed":
            return _crossed_from_doc(doc, f)
        return _zalg_from_doc(doc, f)
    except (ParseError, FieldMismatchError, AlgebraError, CrossedError, ModuleError, IndexError) as exc:
        raise InputError(str(exc)) from exc


def load_algebra(path, field: Optional[Field] = None) -> Union[LoadedZalg, LoadedCrossed]:
    doc = _read(path)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind not in ("zalg", "crossed"):
        raise InputError(f"{path}: 'kind' must be 'zalg' or 'crossed'")
    _check(doc, kind, path)
    return algebra_from_doc(doc, field)


def _zalg_from_doc(doc: dict, f: Field) -> LoadedZalg:
    c = doc["center"]
    kind = c["type"]
    rank = 0 if kind == "field" else int(c.get("rank", len(c.get("names", [])) or 1))
    C = CenterRing(f, kind, rank, c.get("names"))
    r = len(doc["basis"])
    triples = []
    for i, j, m, coeff in doc["products"]:
        if max(i, j, m) >= r:
            raise InputError(f"structure constant index out of range: {[i, j, m]}")
        triples.append((i, j, m, C.parse(str(coeff))))
    meta = dict(doc.get("parameters", {}))
    a = build_algebra(C, doc["basis"], triples, int(doc["unit"]), doc.get("idempotents") and
                      [[f.parse(x) for x in e] for e in doc["idempotents"]], doc.get("name", "algebra"), meta)
    mods = []
    for md in doc.get("modules", []):
        mod = FinDimModule(a, [_matrix(f, t) for t in md["action"]], md["name"])
        errs = mod.validate()
        if errs:
            raise InputError(f"module {md['name']}: " + "; ".join(errs))
        mods.append(mod)
    return LoadedZalg(a, mods)


def _crossed_from_doc(doc: dict, f: Field) -> LoadedCrossed:
    d = int(doc["rank"])
    if "elements" in doc:
        G = CharacterGroup(f, d, _matrix(f, doc["elements"]))
    else:
        G = CharacterGroup.generate(f, d, _matrix(f, doc["generators"]))
    if "cocycle" in doc and "elements" not in doc:
        raise InputError("a cocycle table needs the group listed under 'elements'")
    cocycle = Cocycle(G, _matrix(f, doc["cocycle"]) if "cocycle" in doc else None)
    r = build_crossed(Lattice(d), G, cocycle)
    mods = []
    for md in doc.get("modules", []):
        if "induced_at" in md:
            v = induced_module(r, [f.parse(x) for x in md["induced_at"]], md["name"])
        else:
            ops = [_matrix(f, t) for t in md["operators"]]
            base = FinLengthModule(f, d, ops, dim=len(ops[0]) if ops else 0)
            v = CrossedModule(base, [_matrix(f, b) for b in md["b"]], md["name"])
        errs = check_module(r, v)
        if errs:
            raise InputError(f"module {md['name']}: " + "; ".join(errs))
        mods.append(v)
    return LoadedCrossed(r, mods, doc.get("name", "crossed"))


def algebra_to_doc(a: ZFiniteAlgebra, modules: Optional[List[FinDimModule]] = None) -> dict:
    C = a.center
    doc = {
        "kind": "zalg",
        "name": a.name,
        "field": str(a.field),
        "center": C.describe(),
        "basis": list(a.labels),
        "unit": a.unit,
        "products": [[i, j, m, C.format(c)] for i in range(a.rank) for j in range(a.rank)
                     for m, c in sorted(a.products[i][j].items())],
    }
    if a.meta:
        doc["parameters"] = dict(a.meta)
    if a.idempotents:
        doc["idempotents"] = [[a.field.format(x) for x in e] for e in a.idempotents]
    if modules:
        doc["modules"] = [{"name": m.name, "action": [[[a.field.format(x) for x in row] for row in t] for t in m.mats]}
                          for m in modules]
    return doc


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package, e.g. ``bundled("ut2.alg")``."""
    return Path(str(resources.files(__package__).joinpath("data", name)))
