"""Deterministic JSON and CSV output for verification records."""
from __future__ import annotations

import csv
import io
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from flint import fmpq, fmpz

REPORT_DIR_ENV = "HOPF_REPORT_DIR"


def _plain(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (Fraction, fmpq)):
        f = Fraction(int(obj.numerator), int(obj.denominator)) if isinstance(obj, Fraction) else \
            Fraction(int(obj.p), int(obj.q))
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(obj, fmpz):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(records: Iterable[Any]) -> str:
    return json.dumps(_plain(list(records)), sort_keys=True, indent=2) + "\n"


def approx(value: str) -> float:
    """Float display of a "p/q" string."""
    return float(Fraction(value))


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def to_csv(records: Iterable[Any]) -> str:
    rows = [_flatten(r) for r in _plain(list(records))]
    fields = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def report_dir() -> Path:
    return Path(os.environ.get(REPORT_DIR_ENV, "."))


def emit_report(records: Iterable[Any], name: str, fmt: str = "json", directory: Path | None = None) -> Path:
    records = list(records)
    path = (directory or report_dir()) / f"{name}.{fmt}"
    path.parent.mkdir(parents=True, exist_ok=True)
    text = to_json(records) if fmt == "json" else to_csv(records)
    path.write_text(text)
    return path
