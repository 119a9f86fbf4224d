import json
from pathlib import Path

import pytest

from gravicat.errors import ManifestIOError, ManifestValidationError, RankLimitExceeded, SchemaError
from gravicat.lattice import diagonal, e8
from gravicat.manifest import check_rank, load_manifest, max_rank, parse_manifest

MANIFEST = Path(__file__).resolve().parent.parent / "manifests" / "example.json"

OBJECTS = [{"label": "P", "kind": "homology_sphere"}]
S4 = {"name": "S4", "dim": 4, "chi": 2, "sigma": 0, "b1": 0}
E8PLUMB = {"name": "E8plumb", "dim": 4, "out": ["P"], "chi": 9, "sigma": 8,
           "lattice": "builtin:E8", "spin": True, "b1": 0}


def write(tmp_path, data):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data))
    return path


def test_example_manifest_loads():
    man = load_manifest(MANIFEST)
    assert {"S4", "E8plumb", "K3", "Sigma12out"} <= set(man.cobordisms)
    assert man.cobordisms["E8plumbQ"].outgoing[0].label == "Q"
    assert man.lattices["one"].gram == ((1,),)


def test_two_records(tmp_path):
    man = load_manifest(write(tmp_path, {"objects": OBJECTS, "cobordisms": [S4, E8PLUMB]}))
    assert list(man.cobordisms) == ["S4", "E8plumb"]
    assert man.cobordisms["E8plumb"].lattice.gram == e8().gram


def test_spin_over_odd_form(tmp_path):
    bad = dict(E8PLUMB, lattice={"gram": [[1]]}, sigma=1, chi=2)
    with pytest.raises(ManifestValidationError) as info:
        load_manifest(write(tmp_path, {"objects": OBJECTS, "cobordisms": [bad]}))
    violations = info.value.details["violations"]
    assert any(v.startswith("SpinParityViolation") for v in violations["E8plumb"])
    assert info.value.to_json()["error"] == "ValidationError"


def test_undeclared_boundary(tmp_path):
    rec = dict(E8PLUMB, out=["Q"])
    with pytest.raises(SchemaError) as info:
        load_manifest(write(tmp_path, {"objects": OBJECTS, "cobordisms": [rec]}))
    assert info.value.details["path"] == "cobordisms[0].out[0]"


@pytest.mark.parametrize(
    "data,path",
    [
        ({"cobordisms": [{"name": "x", "dim": 3, "chi": 0}]}, "cobordisms[0].dim"),
        ({"cobordisms": [{"dim": 4, "chi": 0}]}, "cobordisms[0]"),
        ({"lattices": [{"name": "L"}]}, "lattices[0]"),
        ({"cobordisms": [dict(S4, lattice="missing")]}, "cobordisms[0].lattice"),
        ({"cobordisms": [S4, S4]}, "cobordisms[1].name"),
        ({"extra": 1}, "<root>"),
        ({"lattices": [{"name": "L", "gram": [[1, 2], [3, 4]]}]}, "lattices[0]"),
    ],
)
def test_schema_paths(tmp_path, data, path):
    with pytest.raises(SchemaError) as info:
        load_manifest(write(tmp_path, data))
    assert info.value.details["path"] == path


def test_kind_must_match_declaration(tmp_path):
    rec = dict(E8PLUMB, out=[{"label": "P", "kind": "standard_sphere"}])
    with pytest.raises(SchemaError):
        load_manifest(write(tmp_path, {"objects": OBJECTS, "cobordisms": [rec]}))


def test_missing_file(tmp_path):
    with pytest.raises(ManifestIOError) as info:
        load_manifest(tmp_path / "nope.json")
    assert info.value.to_json()["error"] == "IoError"


def test_invalid_json(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{")
    with pytest.raises(SchemaError):
        load_manifest(path)


def test_rank_limit(monkeypatch):
    monkeypatch.setenv("GRAVICAT_MAX_RANK", "4")
    assert max_rank() == 4
    with pytest.raises(RankLimitExceeded):
        check_rank(e8())
    assert check_rank(diagonal([1, 1])).rank == 2
    with pytest.raises(RankLimitExceeded):
        parse_manifest({"cobordisms": [dict(S4, lattice="builtin:E8", sigma=8, chi=10)]})
