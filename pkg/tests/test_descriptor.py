import glob
import json

import pytest

from pbrauer.classify import classify
from pbrauer.descriptor import descriptor_to_json, load_descriptor, load_json, parse_descriptor
from pbrauer.errors import InvalidArgument

SHIPPED = sorted(glob.glob("descriptors/*.json"))


@pytest.mark.parametrize("path", SHIPPED)
def test_shipped_descriptors_round_trip(path):
    desc = load_descriptor(path)
    again = parse_descriptor(json.loads(json.dumps(descriptor_to_json(desc))))
    assert again == desc
    assert classify(again)[0] == classify(desc)[0]


@pytest.mark.parametrize("data", [
    {"kind": "k3", "height": 3, "rho": 2, "hieght": 4},
    {"kind": "abelian", "g": 1, "h1_slopes": [[0, 1, 1], [1, 1, 1]]},
    {"kind": "enriques", "p": 2, "subtype": "classical", "flags": {}},
    {"kind": "surface", "b2": 1, "rho": 0, "h01": 0, "h02": 0, "np_h2": [[1, 1, 1]], "flags": {"ordnary": True}},
    {"kind": "surface", "b2": 1, "rho": 0, "h01": 0, "h02": 0, "np_h2": [[1, 1, 1]], "flags": {"ordinary": 1}},
    {"kind": "generic", "dim": 2, "profiles": {"two": [[1, 1, 1]]}, "hodge": {}, "rho": 0},
    {"kind": "superspecial", "g": "2", "p": 3},
    {"kind": "k3", "height": True, "rho": 1},
    {"kind": "moduli"},
    [1, 2, 3],
])
def test_strict_schema(data):
    with pytest.raises(InvalidArgument):
        parse_descriptor(data)


def test_optional_common_keys():
    desc = parse_descriptor({"kind": "enriques", "p": 3, "subtype": "classical", "name": "X", "comment": "odd p"})
    assert desc.p == 3


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidArgument):
        load_json(bad)
    with pytest.raises(OSError):
        load_json(tmp_path / "missing.json")
