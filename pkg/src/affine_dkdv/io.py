"""
Reading run configs and writing CSV / JSON outputs.

Numbers in JSON may be ints, floats or strings like "3/4"; exact runs keep
strings for every Fraction so files round-trip losslessly.
"""

from __future__ import annotations

import csv
import json
import platform
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .affine import AffineWord, Glide
from .errors import ConfigError


def encode_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def encode(obj):
    """Recursively make Fractions and tuples JSON friendly."""
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def read_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return data


def write_json(path: str | Path, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(encode(data), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(x) for x in row])
    return path


def _cell(x):
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def parse_word(n: int, value) -> AffineWord:
    if isinstance(value, str):
        return AffineWord.parse(n, value)
    if isinstance(value, list):
        return AffineWord(n, tuple(int(x) for x in value))
    raise ConfigError(f"cannot read a word from {value!r}")


def parse_glide(n: int, value) -> Glide:
    return Glide.from_word(parse_word(n, value))


def parse_number(x, mode: str):
    try:
        q = Fraction(x) if not isinstance(x, float) else x
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"not a number: {x!r}") from exc
    if mode == "float":
        return float(q)
    return Fraction(q)


def manifest(command: str, config: dict, mode: str, seed, outputs: Sequence[str], extra: dict | None = None) -> dict:
    out = {
        "command": command,
        "config": config,
        "mode": mode,
        "seed": seed,
        "rng": "numpy.random.default_rng (PCG64)",
        "package_version": __version__,
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "outputs": list(outputs),
    }
    if extra:
        out.update(extra)
    return out
