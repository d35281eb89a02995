"""Access to the bundled fixture datasets.

The fixture files live in the repository's fixtures/ directory (frozen
bytes, checksummed in manifest.json); scripts/generate_fixtures.py is the
only thing that may rewrite them.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import UnknownFixture
from .query import Query, parse_query
from .schema import Schema, load_builtin_schema
from .turtle import Document, parse_turtle

FIXTURES_ENV = "GEOFAULT_FIXTURES_DIR"


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    path: str
    kind: str  # schema | instances | query | mutation
    description: str
    sha256: str
    expected: str | None = None
    dataset: str | None = None


@dataclass(frozen=True)
class FixtureManifest:
    root: Path
    entries: tuple[FixtureEntry, ...]

    def entry(self, name: str) -> FixtureEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise UnknownFixture(f"no fixture named {name!r}")


@dataclass(frozen=True)
class QueryFixture:
    name: str
    query: Query
    text: str
    dataset: str
    expected_bindings: list[dict[str, str]]


def fixtures_root() -> Path:
    env = os.environ.get(FIXTURES_ENV)
    if env:
        return Path(env)
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "fixtures"
        if (candidate / "manifest.json").exists():
            return candidate
    raise UnknownFixture("cannot locate the fixtures directory; set " + FIXTURES_ENV)


def load_manifest(root: Path | None = None) -> FixtureManifest:
    root = Path(root) if root else fixtures_root()
    raw = json.loads((root / "manifest.json").read_text(encoding="utf-8"))
    entries = []
    for e in raw["entries"]:
        entry = FixtureEntry(
            name=e["name"], path=e["path"], kind=e["kind"],
            description=e.get("description", ""), sha256=e["sha256"],
            expected=e.get("expected"), dataset=e.get("dataset"),
        )
        if not (root / entry.path).exists():
            raise UnknownFixture(f"manifest path missing: {entry.path}")
        if entry.kind == "query" and not entry.expected:
            raise UnknownFixture(f"query fixture {entry.name} lacks an expected file")
        entries.append(entry)
    return FixtureManifest(root, tuple(entries))


def load_fixture(name: str, root: Path | None = None,
                 schema: Schema | None = None) -> Document | QueryFixture:
    manifest = load_manifest(root)
    entry = manifest.entry(name)
    text = (manifest.root / entry.path).read_text(encoding="utf-8")
    if entry.kind == "query":
        schema = schema or load_builtin_schema()
        expected = json.loads(
            (manifest.root / entry.expected).read_text(encoding="utf-8")
        )
        return QueryFixture(
            name=entry.name,
            query=parse_query(text, schema),
            text=text,
            dataset=entry.dataset or "",
            expected_bindings=expected["bindings"],
        )
    return parse_turtle(text, source_name=entry.path)


def verify_frozen(root: Path | None = None) -> list[str]:
    """Paths whose bytes drifted from the manifest checksums."""
    manifest = load_manifest(root)
    drifted = []
    for entry in manifest.entries:
        digest = hashlib.sha256((manifest.root / entry.path).read_bytes()).hexdigest()
        if digest != entry.sha256:
            drifted.append(entry.path)
    return drifted
