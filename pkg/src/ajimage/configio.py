"""JSON surface-configuration documents.

Schema, version 1::

    {
      "schema_version": 1,
      "surface": {
        "chi": <int>,
        "fibers": [{"id": <str>, "kind": <str, e.g. "I0*" or "I2">}, ...],
        "mw_free_rank": <int>,
        "sections": [
          {"name": <str>, "s_dot_O": <int>, "components": {<fiber id>: <int>}},
          ...
        ],
        "torsion_group": [<invariant factors, ints > 1>],          # optional
        "torsion_table": [                                          # optional
          {"name": <str>, "components": {...}, "coords": [<int>, ...]},
          ...
        ]
      },
      "divisors": [
        {
          "name": <str>, "d": <int>, "D_dot_O": <int>,
          "c": {<fiber id>: [<ints, one per non-identity component>]},
          "D_squared": <int>,                                       # optional
          "D_dot_section": {<section name>: <int>},                 # optional
          "D_dot_divisor": {<divisor name>: <int>}                  # optional
        },
        ...
      ]
    }

Numbers are JSON integers or exact strings "p/q"; floats are rejected
outright so no value ever passes through binary floating point.  Unknown
keys are rejected at every level: a typo fails loudly instead of being
ignored.  Two documents ship with the package (data/fourlines_type1.json
and data/fourlines_type2.json), carrying the bundled four-line surface
with the collinear resp. non-collinear splitting-curve profiles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .errors import SchemaError
from .kodaira import AbelianGroup, FiberKind
from .nslattice import DivisorProfile, SectionProfile, SurfaceConfig, TorsionSectionSpec

SCHEMA_VERSION = 1

BUNDLED = ("fourlines_type1", "fourlines_type2")


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: {value!r} is not an exact rational 'p/q'") from None
    if isinstance(value, float):
        raise SchemaError(
            f"{where}: floats are not accepted; write the exact rational as a string 'p/q'"
        )
    raise SchemaError(f"{where}: expected integer or 'p/q' string, got {type(value).__name__}")


def parse_int(value, where: str) -> int:
    q = parse_rational(value, where)
    if q.denominator != 1:
        raise SchemaError(f"{where}: expected an integer, got {q}")
    return int(q)


def render_number(value) -> "int | str":
    q = Fraction(value)
    return int(q) if q.denominator == 1 else str(q)


def _check_keys(doc: Mapping, where: str, required: tuple[str, ...], optional: tuple[str, ...] = ()):
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{where}: expected an object")
    unknown = sorted(set(doc) - set(required) - set(optional))
    if unknown:
        raise SchemaError(f"{where}: unknown keys {unknown}")
    missing = sorted(set(required) - set(doc))
    if missing:
        raise SchemaError(f"{where}: missing required keys {missing}")


def _int_map(doc, where: str) -> dict[str, int]:
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{where}: expected an object of integers")
    return {str(k): parse_int(v, f"{where}[{k!r}]") for k, v in doc.items()}


def _str_field(doc, key, where) -> str:
    val = doc[key]
    if not isinstance(val, str) or not val:
        raise SchemaError(f"{where}: {key!r} must be a nonempty string")
    return val


def surface_from_dict(doc: Mapping) -> SurfaceConfig:
    _check_keys(doc, "surface", ("chi", "fibers", "mw_free_rank", "sections"),
                ("torsion_group", "torsion_table"))
    fibers = []
    if not isinstance(doc["fibers"], list):
        raise SchemaError("surface.fibers: expected a list")
    for i, f in enumerate(doc["fibers"]):
        where = f"surface.fibers[{i}]"
        _check_keys(f, where, ("id", "kind"))
        try:
            kind = FiberKind.parse(_str_field(f, "kind", where))
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
        fibers.append((_str_field(f, "id", where), kind))
    sections = []
    for i, s in enumerate(doc["sections"]):
        where = f"surface.sections[{i}]"
        _check_keys(s, where, ("name", "s_dot_O", "components"))
        sections.append(
            SectionProfile(
                _str_field(s, "name", where),
                parse_int(s["s_dot_O"], f"{where}.s_dot_O"),
                _int_map(s["components"], f"{where}.components"),
            )
        )
    factors = tuple(
        parse_int(v, f"surface.torsion_group[{i}]")
        for i, v in enumerate(doc.get("torsion_group", []))
    )
    try:
        group = AbelianGroup(factors)
    except ValueError as exc:
        raise SchemaError(f"surface.torsion_group: {exc}") from None
    torsion = []
    for i, t in enumerate(doc.get("torsion_table", [])):
        where = f"surface.torsion_table[{i}]"
        _check_keys(t, where, ("name", "components", "coords"))
        torsion.append(
            TorsionSectionSpec(
                _str_field(t, "name", where),
                _int_map(t["components"], f"{where}.components"),
                tuple(parse_int(v, f"{where}.coords[{j}]") for j, v in enumerate(t["coords"])),
            )
        )
    return SurfaceConfig(
        chi=parse_int(doc["chi"], "surface.chi"),
        fibers=tuple(fibers),
        sections=tuple(sections),
        mw_free_rank=parse_int(doc["mw_free_rank"], "surface.mw_free_rank"),
        torsion_group=group,
        torsion_table=tuple(torsion),
    )


def surface_to_dict(cfg: SurfaceConfig) -> dict:
    doc = {
        "chi": cfg.chi,
        "fibers": [{"id": fid, "kind": str(kind)} for fid, kind in cfg.fibers],
        "mw_free_rank": cfg.mw_free_rank,
        "sections": [
            {"name": s.name, "s_dot_O": s.s_dot_o, "components": dict(s.components)}
            for s in cfg.sections
        ],
    }
    if cfg.torsion_group.invariant_factors:
        doc["torsion_group"] = list(cfg.torsion_group.invariant_factors)
    if cfg.torsion_table:
        doc["torsion_table"] = [
            {"name": t.name, "components": dict(t.components), "coords": list(t.coords)}
            for t in cfg.torsion_table
        ]
    return doc


def divisor_from_dict(doc: Mapping) -> DivisorProfile:
    name = _str_field(doc, "name", "divisor") if isinstance(doc, Mapping) and "name" in doc else "?"
    where = f"divisor {name!r}"
    _check_keys(doc, where, ("name", "d", "D_dot_O", "c"),
                ("D_squared", "D_dot_section", "D_dot_divisor"))
    if not isinstance(doc["c"], Mapping):
        raise SchemaError(f"{where}.c: expected an object of integer lists")
    c = {}
    for fid, vec in doc["c"].items():
        if not isinstance(vec, list):
            raise SchemaError(f"{where}.c[{fid!r}]: expected a list of integers")
        c[str(fid)] = tuple(parse_int(v, f"{where}.c[{fid!r}][{j}]") for j, v in enumerate(vec))
    d_squared = doc.get("D_squared")
    return DivisorProfile(
        name=name,
        d=parse_int(doc["d"], f"{where}.d"),
        d_dot_o=parse_int(doc["D_dot_O"], f"{where}.D_dot_O"),
        c=c,
        d_squared=None if d_squared is None else parse_int(d_squared, f"{where}.D_squared"),
        d_dot_section=_int_map(doc.get("D_dot_section", {}), f"{where}.D_dot_section"),
        d_dot_divisor=_int_map(doc.get("D_dot_divisor", {}), f"{where}.D_dot_divisor"),
    )


def divisor_to_dict(d: DivisorProfile) -> dict:
    doc = {
        "name": d.name,
        "d": d.d,
        "D_dot_O": d.d_dot_o,
        "c": {fid: list(vec) for fid, vec in d.c.items() if vec is not None},
    }
    if d.d_squared is not None:
        doc["D_squared"] = render_number(d.d_squared)
    if d.d_dot_section:
        doc["D_dot_section"] = {k: render_number(v) for k, v in d.d_dot_section.items()}
    if d.d_dot_divisor:
        doc["D_dot_divisor"] = {k: render_number(v) for k, v in d.d_dot_divisor.items()}
    return doc


@dataclass(frozen=True)
class ConfigDocument:
    surface: SurfaceConfig
    divisors: tuple[DivisorProfile, ...]


def parse_config(doc: Mapping) -> ConfigDocument:
    _check_keys(doc, "config", ("schema_version", "surface"), ("divisors",))
    version = parse_int(doc["schema_version"], "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version}; this build reads {SCHEMA_VERSION}")
    divisors = doc.get("divisors", [])
    if not isinstance(divisors, list):
        raise SchemaError("divisors: expected a list")
    return ConfigDocument(
        surface=surface_from_dict(doc["surface"]),
        divisors=tuple(divisor_from_dict(d) for d in divisors),
    )


def config_to_dict(config: ConfigDocument) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "surface": surface_to_dict(config.surface),
        "divisors": [divisor_to_dict(d) for d in config.divisors],
    }


def loads_config(text: str) -> ConfigDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return parse_config(doc)


def dumps_config(config: ConfigDocument) -> str:
    return json.dumps(config_to_dict(config), indent=2, sort_keys=True) + "\n"


def load_config(path) -> ConfigDocument:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_config(text)


def bundled_config(name: str) -> ConfigDocument:
    """One of the shipped documents, by stem name (see BUNDLED)."""
    if name not in BUNDLED:
        raise SchemaError(f"no bundled config {name!r}; available: {', '.join(BUNDLED)}")
    text = (resources.files(__package__) / "data" / f"{name}.json").read_text("utf-8")
    return loads_config(text)
