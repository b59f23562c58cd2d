import json
import math
import os
import pathlib

import jsonschema
import pytest

import modelset

ROOT = pathlib.Path(os.environ.get("MODELSET_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
FIB = {"fixture": "fibonacci"}
TAU = (1 + math.sqrt(5)) / 2


def test_version_and_operations():
    assert modelset.version() == "0.1.0"
    assert "model_density" in modelset.operations()
    assert modelset.needs_seed("diffraction_table")
    assert not modelset.needs_seed("diffraction_table", {"controls": 0})


def test_density_matches_formula():
    assert modelset.density(FIB, FIB) == pytest.approx(TAU / math.sqrt(5))


def test_cut_agrees_with_brute_force():
    got = modelset.cut(FIB, FIB, {"lo": 0, "hi": 200})
    xs = []
    for pt in got["points"]:
        x = pt["x"]
        xs.append(x[0] if isinstance(x, list) else x)
    ref = []
    for n1 in range(-200, 201):
        for n0 in range(int(-n1 * TAU) - 1, int(200 - n1 * TAU) + 2):
            x = n0 + n1 * TAU
            s = n0 + n1 * (1 - TAU)
            if 0 <= x <= 200 and -1 < s <= TAU - 1:
                ref.append(x)
    assert got["count"] == len(ref)
    assert sorted(xs) == pytest.approx(sorted(ref))


def test_run_model_density():
    rep = modelset.run({"operation": "model_density", "scheme": FIB, "window": FIB})
    assert rep["pass"]
    assert rep["result"]["value"]["density"] == pytest.approx(TAU / math.sqrt(5))


def test_errors_carry_the_code():
    with pytest.raises(modelset.ModelsetError, match="ConfigError"):
        modelset.run({"operation": "no_such_op"})
    with pytest.raises(modelset.ModelsetError, match="ConfigError"):
        modelset.run("{not json")
    with pytest.raises(ValueError):
        modelset.cut({"fixture": "penrose"}, FIB, {"lo": 0, "hi": 1})


@pytest.mark.parametrize("path", sorted((ROOT / "configs").glob("*.json")), ids=lambda p: p.name)
def test_shipped_configs_match_the_schema(path):
    schema = json.loads((ROOT / "docs" / "config.schema.json").read_text())
    jsonschema.validate(json.loads(path.read_text()), schema)
