"""
Author: noiselab contributors
Date: 2026-09-28 15:06:31
LastEditTime: 2026-10-15 18:20:44
LastEditors: noiselab contributors
Description: Result files of an experiment run: results.json, csv tables, svg figures
    and the checksummed manifest
FilePath: /noiselab/noiselab/runner/report.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""

import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from loguru import logger  # noqa: E402

from noiselab import __version__  # noqa: E402
from noiselab.configs.data_consts import RESULT_SCHEMA_VERSION  # noqa: E402
from noiselab.utils.utils import canonical_json, sha256_file  # noqa: E402

plt.rcParams["svg.hashsalt"] = "noiselab"
plt.rcParams["svg.fonttype"] = "none"


@dataclass
class FigureSpec:
    """A bar or line chart of one table column against another."""

    name: str
    table: str
    x: str
    y: str
    kind: str = "bar"
    title: str = None


@dataclass
class RunManifest:
    config: dict
    version: str = __version__
    schema: int = RESULT_SCHEMA_VERSION
    started: str = None
    finished: str = None
    exit_code: int = 0
    error: str = None
    files: dict = field(default_factory=dict)

    def to_dict(self):
        return dict(self.__dict__)

    def write(self, out_dir):
        path = os.path.join(out_dir, "manifest.json")
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(canonical_json(self.to_dict()))
        return path


def write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(canonical_json(payload))
    return path


def _write_figure(spec, frame, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if spec.kind == "bar":
        ax.bar(frame[spec.x], frame[spec.y], color="tab:blue")
    else:
        ax.plot(frame[spec.x], frame[spec.y], marker="o", color="tab:blue")
    ax.set_xlabel(spec.x)
    ax.set_ylabel(spec.y)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_report(record, out_dir, tables=None, figures=None, formats=("json", "csv", "svg")):
    """Write the result files of one run and return {relative path: sha256}.

    ``record`` is the JSON payload (wrapped with the schema version),
    ``tables`` maps a name to a pandas DataFrame, ``figures`` is a list of
    FigureSpec drawn from those tables.
    """
    tables = tables or {}
    figures = figures or []
    written = []
    os.makedirs(out_dir, exist_ok=True)
    if "json" in formats:
        payload = {"schema": RESULT_SCHEMA_VERSION, "results": record}
        written.append(write_json(os.path.join(out_dir, "results.json"), payload))
    if "csv" in formats and tables:
        table_dir = os.path.join(out_dir, "tables")
        os.makedirs(table_dir, exist_ok=True)
        for name in sorted(tables):
            path = os.path.join(table_dir, f"{name}.csv")
            tables[name].to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
            written.append(path)
    if "svg" in formats and figures:
        figure_dir = os.path.join(out_dir, "figures")
        os.makedirs(figure_dir, exist_ok=True)
        for spec in figures:
            path = os.path.join(figure_dir, f"{spec.name}.svg")
            _write_figure(spec, tables[spec.table], path)
            written.append(path)
    logger.debug(f"wrote {len(written)} result files to {out_dir}")
    return {
        os.path.relpath(path, out_dir).replace(os.sep, "/"): sha256_file(path)
        for path in written
    }
