"""A session is a directory holding one JSON file per named object plus an
index with sha256 checksums. Loading verifies every checksum and every
reference before returning anything.
"""

import hashlib
import json
import os
from pathlib import Path

from .errors import SessionError

SESSION_VERSION = 1
INDEX = "index.json"
ENV_VAR = "GTRANSFORMAL_SESSION"


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2).encode()


def _digest(data):
    return hashlib.sha256(data).hexdigest()


def _refs(obj):
    if isinstance(obj, dict):
        if set(obj) == {"$ref"}:
            yield obj["$ref"]
            return
        for v in obj.values():
            yield from _refs(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _refs(v)


class Session:
    def __init__(self, path):
        self.path = Path(path)
        self.objects = {}   # name -> {"kind": str, "data": obj}
        self.meta = {"created_by": "gtransformal"}

    @classmethod
    def open(cls, path):
        """Load an existing session or start an empty one."""
        s = cls(path)
        if (s.path / INDEX).exists():
            s.load()
        return s

    def put(self, name, kind, data):
        if "/" in name or name in ("", INDEX):
            raise SessionError(f"bad object name {name!r}")
        self.objects[name] = {"kind": kind, "data": data}

    def get(self, name, kind=None):
        try:
            obj = self.objects[name]
        except KeyError:
            raise SessionError(f"no object named {name!r}") from None
        if kind is not None and obj["kind"] != kind:
            raise SessionError(f"{name!r} is a {obj['kind']}, not a {kind}")
        return obj["data"]

    def names(self, kind=None):
        return sorted(n for n, o in self.objects.items() if kind is None or o["kind"] == kind)

    def save(self):
        for name, obj in self.objects.items():
            for ref in _refs(obj["data"]):
                if ref not in self.objects:
                    raise SessionError(f"{name!r} refers to missing object {ref!r}")
        self.path.mkdir(parents=True, exist_ok=True)
        index = {"version": SESSION_VERSION, "meta": self.meta, "objects": {}}
        for name in sorted(self.objects):
            obj = self.objects[name]
            data = _dump(obj["data"])
            fname = f"{name}.json"
            tmp = self.path / (fname + ".tmp")
            tmp.write_bytes(data)
            os.replace(tmp, self.path / fname)
            index["objects"][name] = {"kind": obj["kind"], "file": fname, "sha256": _digest(data)}
        tmp = self.path / (INDEX + ".tmp")
        tmp.write_bytes(_dump(index))
        os.replace(tmp, self.path / INDEX)

    def load(self):
        """Replace the in-memory contents with the directory's, or raise and change nothing."""
        try:
            index = json.loads((self.path / INDEX).read_bytes())
        except (OSError, ValueError) as ex:
            raise SessionError(f"cannot read session index: {ex}") from None
        if index.get("version") != SESSION_VERSION:
            raise SessionError(f"unsupported session version {index.get('version')}")
        loaded = {}
        for name, entry in index.get("objects", {}).items():
            try:
                data = (self.path / entry["file"]).read_bytes()
            except OSError as ex:
                raise SessionError(f"missing file for {name!r}: {ex}") from None
            if _digest(data) != entry["sha256"]:
                raise SessionError(f"checksum mismatch for {name!r}")
            loaded[name] = {"kind": entry["kind"], "data": json.loads(data)}
        for name, obj in loaded.items():
            for ref in _refs(obj["data"]):
                if ref not in loaded:
                    raise SessionError(f"{name!r} refers to missing object {ref!r}")
        self.objects = loaded
        self.meta = index.get("meta", {})
        return self


def default_session_path():
    return os.environ.get(ENV_VAR)
