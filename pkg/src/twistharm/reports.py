"""Run manifests and machine-readable report output (JSON / CSV).

Every report embeds its manifest; for a fixed manifest (including the
injected timestamp) the symbolic suites are bit-reproducible, so report
bytes are too: JSON is written with sorted keys and fixed separators.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from . import __version__


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_path: Optional[str]
    overrides: Dict[str, Any]
    seed: int
    version: str
    timestamp: str
    outdir: str

    @staticmethod
    def create(command: str, config_path: Optional[str], overrides: Dict[str, Any],
               seed: int, outdir: str, timestamp: Optional[str] = None) -> "RunManifest":
        ts = timestamp or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return RunManifest(command=command, config_path=config_path,
                           overrides=dict(sorted(overrides.items())), seed=seed,
                           version=__version__, timestamp=ts, outdir=outdir)


def report_json_bytes(manifest: RunManifest, payload: Dict[str, Any]) -> bytes:
    doc = {"manifest": asdict(manifest), "payload": payload}
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"),
                       allow_nan=True) + "\n").encode()


def write_report(path: str, manifest: RunManifest, payload: Dict[str, Any]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(report_json_bytes(manifest, payload))


def write_csv(path: str, rows: List[Dict[str, Any]], manifest: RunManifest) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# command={manifest.command} seed={manifest.seed} "
                 f"version={manifest.version} timestamp={manifest.timestamp}\n")
        if not rows:
            return
        keys = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(fh, fieldnames=keys)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
