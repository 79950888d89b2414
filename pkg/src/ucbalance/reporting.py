"""Machine-readable run artifacts: CSV and JSON with a reproducibility header.

Every artifact carries the command name, tool version, seed, and the full
effective configuration, so a run can be reproduced from its output alone.
Numbers in CSV are printed with 17 significant digits (round-trip safe for
doubles) and files are written atomically (temp file + rename).  Nothing
time-dependent is ever written: identical configs give byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources
from pathlib import Path

import jsonschema

from ._version import __version__
from .errors import ValidationError


def format_float(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def build_meta(command: str, seed: int | None, config: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "config": config,
    }


def render_csv(meta: dict, header: list[str], rows: list[tuple]) -> str:
    lines = [
        f"# command: {meta['command']}",
        f"# version: {meta['version']}",
        f"# seed: {meta['seed']}",
        f"# config: {json.dumps(meta['config'], sort_keys=True)}",
        ",".join(header),
    ]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def render_json(meta: dict, data) -> str:
    return json.dumps({"meta": meta, "data": data}, indent=2, sort_keys=True) + "\n"


def atomic_write(path, text: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.chmod(tmp_name, 0o644)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def load_schema(name: str) -> dict:
    text = resources.files("ucbalance.schemas").joinpath(name).read_text()
    return json.loads(text)


def validate_run_output(obj: dict) -> None:
    """Validate a {"meta", "data"} artifact against the shipped schema."""
    try:
        jsonschema.validate(obj, load_schema("run_output.schema.json"))
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"run output failed schema validation: {exc.message}")


def validate_box_json(obj: dict) -> None:
    """Validate a box file against the shipped schema before deserializing."""
    try:
        jsonschema.validate(obj, load_schema("box.schema.json"))
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"box file failed schema validation: {exc.message}")


def write_artifact(path, meta: dict, fmt: str, header: list[str], rows: list[tuple], data) -> None:
    """Write rows as CSV or the JSON data payload, per ``fmt``."""
    if fmt == "csv":
        atomic_write(path, render_csv(meta, header, rows))
    elif fmt == "json":
        payload = {"meta": meta, "data": data}
        validate_run_output(payload)
        atomic_write(path, render_json(meta, data))
    else:
        raise ValidationError(f"unknown output format: {fmt}")
