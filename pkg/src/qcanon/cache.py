"""On-disk result cache with atomic writes and version-keyed entries.

Payloads are JSON values stored one file per key under a cache directory.
The key embeds a hash of the package sources, so any change to the engine
(including convention switches) silently invalidates every old entry
rather than ever serving stale data.  Writes go through a temporary file
and an atomic rename, which makes concurrent use of one cache directory
safe.
"""

import hashlib
import json
import os
import tempfile

_ENGINE_VERSION = None


def canonical_json(obj):
    """Deterministic JSON text for hashing and byte-stable output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def engine_version():
    """Hash of the package's source files (cached per process)."""
    global _ENGINE_VERSION
    if _ENGINE_VERSION is None:
        root = os.path.dirname(os.path.abspath(__file__))
        h = hashlib.sha256()
        for name in sorted(os.listdir(root)):
            if not name.endswith(".py"):
                continue
            h.update(name.encode())
            with open(os.path.join(root, name), "rb") as fh:
                h.update(fh.read())
        _ENGINE_VERSION = h.hexdigest()[:16]
    return _ENGINE_VERSION


class ResultCache:
    """Maps JSON key objects to JSON payloads under one directory.

    A None root disables the cache (get always misses, put is a no-op),
    so callers need no branching.
    """

    def __init__(self, root):
        self.root = root

    def _path(self, key):
        digest = hashlib.sha256(canonical_json(key).encode()).hexdigest()
        return os.path.join(self.root, digest[:32] + ".json")

    @staticmethod
    def _full_key(key):
        full = dict(key)
        full["engine"] = engine_version()
        return full

    def get(self, key):
        """The stored payload, or None on miss/corruption/version change."""
        if self.root is None:
            return None
        full = self._full_key(key)
        path = self._path(full)
        try:
            with open(path, "r") as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if entry.get("key") != full:
            return None
        payload = entry.get("payload")
        digest = hashlib.sha256(
            canonical_json(payload).encode()).hexdigest()
        if entry.get("checksum") != digest:
            return None
        return payload

    def put(self, key, payload):
        if self.root is None:
            return
        full = self._full_key(key)
        entry = {
            "key": full,
            "checksum": hashlib.sha256(
                canonical_json(payload).encode()).hexdigest(),
            "payload": payload,
        }
        os.makedirs(self.root, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(entry))
            os.replace(tmp, self._path(full))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
