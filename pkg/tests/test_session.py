import json

import pytest

from gtransformal.errors import SessionError
from gtransformal.session import INDEX, Session


def filled(path):
    s = Session(path)
    s.put("field", "field", {"p": 2, "k": 2})
    s.put("tower", "tower", {"base": {"$ref": "field"}, "levels": [1, 5]})
    s.save()
    return s


def test_round_trip(tmp_path):
    s = filled(tmp_path / "s")
    t = Session.open(tmp_path / "s")
    assert t.names() == ["field", "tower"]
    assert t.get("tower", "tower") == s.get("tower")
    assert t.names("field") == ["field"]


def test_open_missing_directory_is_empty(tmp_path):
    assert Session.open(tmp_path / "nothing").names() == []


def test_wrong_kind_and_missing_name(tmp_path):
    s = filled(tmp_path / "s")
    with pytest.raises(SessionError):
        s.get("field", "tower")
    with pytest.raises(SessionError):
        s.get("nope")
    with pytest.raises(SessionError):
        s.put("a/b", "x", {})


def test_corruption_detected(tmp_path):
    filled(tmp_path / "s")
    f = tmp_path / "s" / "field.json"
    f.write_text(f.read_text().replace("2", "3"))
    with pytest.raises(SessionError, match="checksum"):
        Session.open(tmp_path / "s")


def test_missing_reference_on_save(tmp_path):
    s = Session(tmp_path / "s")
    s.put("tower", "tower", {"base": {"$ref": "ghost"}})
    with pytest.raises(SessionError, match="ghost"):
        s.save()
    assert not (tmp_path / "s" / INDEX).exists()


def test_missing_reference_on_load(tmp_path):
    filled(tmp_path / "s")
    idx_path = tmp_path / "s" / INDEX
    idx = json.loads(idx_path.read_text())
    del idx["objects"]["field"]
    idx_path.write_text(json.dumps(idx))
    with pytest.raises(SessionError, match="missing object"):
        Session.open(tmp_path / "s")


def test_failed_load_leaves_state_alone(tmp_path):
    s = filled(tmp_path / "s")
    before = dict(s.objects)
    (tmp_path / "s" / "tower.json").write_text("{}")
    with pytest.raises(SessionError):
        s.load()
    assert s.objects == before


def test_save_leaves_no_temp_files(tmp_path):
    filled(tmp_path / "s")
    assert not list((tmp_path / "s").glob("*.tmp"))


def test_bad_version(tmp_path):
    filled(tmp_path / "s")
    idx_path = tmp_path / "s" / INDEX
    idx = json.loads(idx_path.read_text())
    idx["version"] = 99
    idx_path.write_text(json.dumps(idx))
    with pytest.raises(SessionError, match="version"):
        Session.open(tmp_path / "s")
