"""I/O helper functions"""

import csv
import json
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TextIO

from ..core.errors import InputError

FLOAT_FORMAT = ".17g"

Target = str | Path | TextIO


@contextmanager
def _opened(target: Target, mode: str = "w") -> Iterator[TextIO]:
    """Open a path, or pass an already open stream through untouched"""
    if hasattr(target, "write"):
        yield target  # type: ignore[misc]
        return
    with open(target, mode, encoding="utf-8", newline="") as f:  # type: ignore[arg-type]
        yield f


def format_value(value: Any) -> str:
    """CSV cell text; floats keep 17 significant digits"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, FLOAT_FORMAT)
    return str(value)


def write_csv(
    rows: Iterable[Mapping[str, Any]], file_path: Target, fieldnames: Sequence[str]
) -> int:
    """Write rows as CSV with a header line

    Returns:
        Number of data rows written
    """
    count = 0
    with _opened(file_path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([format_value(row[name]) for name in fieldnames])
            count += 1
    return count


def read_csv(file_path: str | Path) -> list[dict[str, str]]:
    """Read a CSV file with a header line

    Raises:
        InputError: If the file is missing
    """
    try:
        with open(file_path, encoding="utf-8", newline="") as f:
            return list(csv.DictReader(f))
    except FileNotFoundError as e:
        raise InputError(f"File not found: {file_path}") from e


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist") and callable(value.tolist):
        return _jsonable(value.tolist())
    return value


def load_json_file(file_path: str | Path) -> dict[str, Any]:
    """Load JSON from file

    Raises:
        InputError: If the file is missing or not valid JSON
    """
    try:
        with open(file_path, encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"File not found: {file_path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON in {file_path}: {e.msg}") from e
    if not isinstance(data, dict):
        raise InputError(f"Expected a JSON object in {file_path}")
    return data


def save_json_file(data: dict[str, Any], file_path: Target, indent: int = 2) -> None:
    """Save data as JSON to file

    Non-finite floats are written as strings so the output stays valid JSON.
    """
    with _opened(file_path) as f:
        json.dump(_jsonable(data), f, indent=indent, ensure_ascii=False)
        f.write("\n")


def append_jsonl(data: dict[str, Any], file_path: str | Path) -> None:
    """Append data as JSON line to file"""
    with open(file_path, "a", encoding="utf-8") as f:
        f.write(json.dumps(_jsonable(data), ensure_ascii=False) + "\n")
