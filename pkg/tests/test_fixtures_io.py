import json

import pytest

from ftft import fixtures, io
from ftft.errors import PreconditionError, StructuralError, UnsupportedInput


@pytest.mark.parametrize("name", list(fixtures.CATALOG))
def test_catalog_validates_and_round_trips(name):
    obj = fixtures.build(name)
    assert fixtures.validate(obj).ok
    text = io.dumps(obj)
    kind, back = io.loads(text)
    assert json.loads(text)["kind"] == kind
    assert fixtures.validate(back).ok
    assert io.dumps(back) == text


def test_parameters_and_unknowns():
    assert fixtures.build("clifford", p=0, q=2).dim == 4
    assert fixtures.build("group", name="d8").name
    with pytest.raises(UnsupportedInput):
        fixtures.build("no-such")
    with pytest.raises(UnsupportedInput):
        fixtures.build("group", name="nope")
    with pytest.raises(PreconditionError):
        fixtures.build("rep-1d", group="pin1-", even=0, odd=1)


def test_error_locations():
    d = io.to_dict(fixtures.trivial_theory("pin1+"))
    d["components"]["T"][0] = [1, 2]
    with pytest.raises(StructuralError, match=r"\$\.components\.T\[0\]"):
        io.from_dict(d)
    with pytest.raises(StructuralError, match="line 1 column"):
        io.loads('{"kind": ')
    with pytest.raises(StructuralError, match="unknown kind"):
        io.from_dict({"kind": "banana"})


def test_save_load(tmp_path):
    p = io.save(fixtures.build("star-clifford", sign=-1), tmp_path / "s.json")
    kind, S = io.load(p)
    assert kind == "star_algebra" and fixtures.validate(S).ok
    with pytest.raises(StructuralError):
        io.load(tmp_path / "missing.json")


def test_tft2d_without_pairings_rebuilds_them():
    T = fixtures.clifford_theory(1)
    d = io.to_dict(T)
    del d["pairings"]
    _, back = io.from_dict(d)
    assert back.pairings == T.pairings
