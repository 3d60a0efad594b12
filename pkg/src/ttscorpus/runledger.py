"""Run ledger: digest-gated stage resumption for the CLI pipeline.

Each completed stage records the digest of its inputs, the digest of its
outputs, the tool version and the wall time. A stage is skipped on rerun
exactly when its input digest is unchanged and its recorded outputs are
still intact; any input change forces a rerun.

The ledger file itself carries wall times and therefore varies between
runs; it is the one output excluded from byte-identity comparisons.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def digest_inputs(paths: list[Path], params: dict) -> str:
    """Combined digest of input file contents plus the stage parameters.

    File order does not matter; parameter maps are serialized with sorted
    keys so equal configurations digest equally.
    """
    h = hashlib.sha256()
    for path in sorted(Path(p) for p in paths):
        h.update(path.name.encode("utf-8"))
        h.update(b"\x00")
        h.update(file_digest(path).encode("ascii"))
        h.update(b"\x00")
    h.update(json.dumps(params, sort_keys=True, ensure_ascii=False).encode("utf-8"))
    return h.hexdigest()


def digest_outputs(paths: list[Path]) -> str:
    h = hashlib.sha256()
    for path in sorted(Path(p) for p in paths):
        h.update(path.name.encode("utf-8"))
        h.update(b"\x00")
        h.update(file_digest(path).encode("ascii"))
        h.update(b"\x00")
    return h.hexdigest()


@dataclass(frozen=True)
class StageRecord:
    input_digest: str
    output_digest: str
    tool_version: str
    wall_time_s: float


class RunLedger:
    """Per-stage completion records keyed by stage name."""

    def __init__(self, entries: dict[str, StageRecord] | None = None):
        self.entries: dict[str, StageRecord] = dict(entries or {})

    @classmethod
    def load(cls, path: str | Path) -> "RunLedger":
        path = Path(path)
        if not path.is_file():
            return cls()
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            entries = {name: StageRecord(**rec) for name, rec in raw.items()}
        except (json.JSONDecodeError, TypeError, KeyError):
            # A corrupt ledger must never block the pipeline; rerun everything.
            return cls()
        return cls(entries)

    def save(self, path: str | Path) -> None:
        payload = {name: asdict(rec) for name, rec in sorted(self.entries.items())}
        Path(path).write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )

    def should_run(
        self, stage: str, input_digest: str, outputs: list[Path] | None = None
    ) -> bool:
        """True when the stage must execute.

        Never skips on a changed input digest. Skipping additionally
        requires every recorded output to exist unmodified.
        """
        rec = self.entries.get(stage)
        if rec is None or rec.input_digest != input_digest:
            return True
        if outputs is not None:
            if not all(Path(p).is_file() for p in outputs):
                return True
            if digest_outputs(outputs) != rec.output_digest:
                return True
        return False

    def record(
        self,
        stage: str,
        input_digest: str,
        output_digest: str,
        tool_version: str,
        wall_time_s: float,
    ) -> None:
        self.entries[stage] = StageRecord(
            input_digest, output_digest, tool_version, wall_time_s
        )
