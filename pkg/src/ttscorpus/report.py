"""Deterministic writers for the delimited and JSON outputs of the CLI.

Every writer here pins the details that would otherwise vary between
platforms or runs: UTF-8, "\n" line endings, sorted JSON keys, no
timestamps. Byte-identical reruns are a contract, not an accident.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .metrics import MetricReport


def format_mean_std(mean: float, std: float, n: int | None = None) -> str:
    """Render a summary the way listening-test tables print it: 4.30±0.64 (5)."""
    base = f"{mean:.2f}±{std:.2f}"
    return base if n is None else f"{base} ({n})"


def render_metric_reports(reports: Iterable[MetricReport]) -> str:
    """Plain-text table of metric summaries, one report per line."""
    lines = []
    for rep in reports:
        label = f"{rep.metric} {rep.system}".strip()
        lines.append(f"{label}: {format_mean_std(rep.mean, rep.std, rep.n_evaluators)}")
    return "\n".join(lines)


def write_json(path: str | Path, obj) -> Path:
    path = Path(path)
    text = json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False))
            fh.write("\n")
    return path


def read_jsonl(path: str | Path) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def write_csv(path: str | Path, header: list[str], rows: Iterable[Iterable]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_tsv(path: str | Path, rows: Iterable[Iterable[str]]) -> Path:
    """Tab-delimited file without quoting; fields must be tab-free."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            cells = [str(c) for c in row]
            for cell in cells:
                if "\t" in cell or "\n" in cell:
                    raise ValueError(f"TSV cell contains a delimiter: {cell!r}")
            fh.write("\t".join(cells))
            fh.write("\n")
    return path


def read_tsv(path: str | Path, n_cols: int) -> list[list[str]]:
    """Read a TSV written by write_tsv, enforcing the column count."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) != n_cols:
                raise ValueError(
                    f"{path}:{lineno}: expected {n_cols} tab-separated columns, got {len(cells)}"
                )
            rows.append(cells)
    return rows
