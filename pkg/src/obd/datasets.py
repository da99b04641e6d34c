"""Bundled datasets and their locations.

Files live in the package's ``data`` directory unless ``OBD_DATA_DIR``
points elsewhere.  Each entry names its kind and whether it is usable; the
transcription slots stay marked ``requires transcription`` until someone fills them.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

PLACEHOLDER = "requires transcription"


@dataclass(frozen=True)
class Dataset:
    name: str
    kind: str
    path: str
    provenance: str
    status: str = "ok"

    @property
    def available(self) -> bool:
        return self.status == "ok"


def data_dir() -> Path:
    env = os.environ.get("OBD_DATA_DIR")
    return Path(env) if env else Path(__file__).with_name("data")


def load(name: str) -> dict:
    """Read a bundled JSON file by relative path (``table1.json``, ``openbooks/t3_sum.json``)."""
    p = data_dir() / name
    if not p.suffix:
        p = p.with_suffix(".json")
    with open(p) as fh:
        return json.load(fh)


def bundled_datasets() -> list[Dataset]:
    root = data_dir()
    out = []
    for p in sorted(root.rglob("*.json")):
        with open(p) as fh:
            head = json.load(fh)
        rel = str(p.relative_to(root))
        kind = head.get("kind", "unknown")
        status = head.get("status", "ok")
        out.append(Dataset(rel[:-5], kind, rel, head.get("provenance", ""), status))
    return out
