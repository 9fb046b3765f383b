import json
import random

import pytest

from ajimage.configio import (
    BUNDLED,
    ConfigDocument,
    bundled_config,
    config_to_dict,
    divisor_from_dict,
    dumps_config,
    load_config,
    loads_config,
    parse_config,
    parse_rational,
)
from ajimage.errors import SchemaError
from ajimage.fourlines import eminus_profile, eplus_profile, four_line_surface
from ajimage.kodaira import AbelianGroup, FiberKind
from ajimage.mwgroup import MWPoint, abel_jacobi_image
from ajimage.nslattice import DivisorProfile, SectionProfile, SurfaceConfig, build_table


def test_bundled_match_constructors():
    for name, variant in (("fourlines_type1", "collinear"), ("fourlines_type2", "noncollinear")):
        doc = bundled_config(name)
        assert doc.surface == four_line_surface()
        assert doc.divisors == (eplus_profile(variant), eminus_profile(variant))


def test_bundled_round_trip():
    for name in BUNDLED:
        doc = bundled_config(name)
        assert loads_config(dumps_config(doc)) == doc


def test_bundled_pipeline_goldens():
    t2 = bundled_config("fourlines_type2")
    table = build_table(t2.surface, t2.divisors)
    assert abel_jacobi_image(table, "E+", "s_o") == MWPoint(2, (0, 0), None)
    t1 = bundled_config("fourlines_type1")
    table1 = build_table(t1.surface, t1.divisors)
    assert abel_jacobi_image(table1, "E+", "s_o") == MWPoint(0, (0, 0), None)


def test_randomized_round_trip():
    rng = random.Random(77)
    kinds = ["I2", "I5", "I0*", "I3*", "III", "IV", "IV*", "III*", "II*"]
    for _ in range(25):
        fibers = tuple(
            (f"f{i}", FiberKind.parse(rng.choice(kinds))) for i in range(rng.randint(1, 4))
        )
        sections = tuple(
            SectionProfile(f"s{i}", rng.randint(0, 3), {fibers[0][0]: 0})
            for i in range(rng.randint(0, 2))
        )
        cfg = SurfaceConfig(rng.randint(1, 3), fibers, sections, rng.randint(0, 2))
        divisors = tuple(
            DivisorProfile(
                f"D{i}",
                rng.randint(1, 4),
                rng.randint(-2, 5),
                {fibers[0][0]: (0,)},
                d_squared=rng.choice([None, rng.randint(-6, 6)]),
                d_dot_section={s.name: rng.randint(0, 2) for s in sections},
            )
            for i in range(rng.randint(0, 3))
        )
        doc = ConfigDocument(cfg, divisors)
        assert loads_config(dumps_config(doc)) == doc


def base_doc():
    return json.loads(dumps_config(bundled_config("fourlines_type1")))


def test_unknown_keys_rejected():
    doc = base_doc()
    doc["extra"] = 1
    with pytest.raises(SchemaError, match="unknown keys.*extra"):
        parse_config(doc)
    doc = base_doc()
    doc["surface"]["colour"] = "blue"
    with pytest.raises(SchemaError, match="surface: unknown keys"):
        parse_config(doc)
    doc = base_doc()
    doc["surface"]["fibers"][0]["euler"] = 6
    with pytest.raises(SchemaError, match=r"fibers\[0\]: unknown keys"):
        parse_config(doc)
    doc = base_doc()
    doc["surface"]["sections"][0]["height"] = "1/2"
    with pytest.raises(SchemaError, match=r"sections\[0\]: unknown keys"):
        parse_config(doc)
    doc = base_doc()
    doc["divisors"][0]["genus"] = 1
    with pytest.raises(SchemaError, match="divisor 'E\\+': unknown keys"):
        parse_config(doc)
    doc = base_doc()
    doc["surface"]["torsion_table"][0]["order"] = 2
    with pytest.raises(SchemaError, match=r"torsion_table\[0\]: unknown keys"):
        parse_config(doc)


def test_missing_keys_rejected():
    doc = base_doc()
    del doc["surface"]["chi"]
    with pytest.raises(SchemaError, match="missing required keys.*chi"):
        parse_config(doc)
    doc = base_doc()
    del doc["divisors"][0]["c"]
    with pytest.raises(SchemaError, match="missing required keys"):
        parse_config(doc)


def test_schema_version_checked():
    doc = base_doc()
    doc["schema_version"] = 2
    with pytest.raises(SchemaError, match="schema_version 2"):
        parse_config(doc)
    del doc["schema_version"]
    with pytest.raises(SchemaError, match="missing required keys"):
        parse_config(doc)


def test_rational_parsing():
    assert parse_rational(3, "x") == 3
    assert parse_rational("7/2", "x") == 3.5
    assert parse_rational("-4", "x") == -4
    with pytest.raises(SchemaError, match="float"):
        parse_rational(1.5, "x")
    with pytest.raises(SchemaError, match="boolean"):
        parse_rational(True, "x")
    with pytest.raises(SchemaError, match="not an exact rational"):
        parse_rational("3.14.15", "x")
    doc = base_doc()
    doc["divisors"][0]["D_squared"] = "6/2"  # exact strings are fine when integral
    assert parse_config(doc).divisors[0].d_squared == 3
    doc["divisors"][0]["D_squared"] = "1/2"
    with pytest.raises(SchemaError, match="expected an integer"):
        parse_config(doc)


def test_bad_fiber_kind_rejected():
    doc = base_doc()
    doc["surface"]["fibers"][0]["kind"] = "I1"
    with pytest.raises(SchemaError, match="irreducible"):
        parse_config(doc)
    doc["surface"]["fibers"][0]["kind"] = "V2"
    with pytest.raises(SchemaError):
        parse_config(doc)


def test_bad_torsion_group_rejected():
    doc = base_doc()
    doc["surface"]["torsion_group"] = [3, 2]
    with pytest.raises(SchemaError, match="divisibility chain"):
        parse_config(doc)


def test_divisor_requires_name_and_shape():
    with pytest.raises(SchemaError):
        divisor_from_dict({"name": "D", "d": 1, "D_dot_O": 0, "c": "nope"})
    with pytest.raises(SchemaError):
        divisor_from_dict({"name": "D", "d": 1, "D_dot_O": 0, "c": {"inf": 3}})


def test_invalid_json_text():
    with pytest.raises(SchemaError, match="invalid JSON"):
        loads_config("{not json")


def test_unknown_bundle_name():
    with pytest.raises(SchemaError, match="no bundled config"):
        bundled_config("fourlines_type9")


def test_load_config_from_file(tmp_path):
    path = tmp_path / "cfg.json"
    doc = bundled_config("fourlines_type2")
    path.write_text(dumps_config(doc), encoding="utf-8")
    assert load_config(path) == doc


def test_config_to_dict_is_json_ready():
    doc = bundled_config("fourlines_type1")
    rendered = config_to_dict(doc)
    assert json.dumps(rendered, sort_keys=True)
    assert rendered["schema_version"] == 1
    assert rendered["surface"]["torsion_group"] == [2, 2]
